#include "commands.hpp"

int main(int argc, char** argv)
{
    return lmpred::cli::run(argc, argv);
}
