#include "lmpred/series_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lmpred/error.hpp"

namespace lmpred
{
namespace
{
std::vector<std::string> split(std::string const& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        while (!item.empty() && (item.back() == '\r' || item.back() == ' '))
            item.pop_back();
        out.push_back(item);
    }
    return out;
}
}  // namespace

void write_series_csv(std::ostream& os, DailySeries const& s)
{
    os << "day,lambda_tilde,count,return,log_price\n";
    char buf[160];
    for (std::size_t k = 0; k < s.returns.size(); ++k)
    {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%lld,%.17g,%.17g\n", k + 1,
                      s.lambda_tilde[k], static_cast<long long>(s.counts[k]),
                      s.returns[k], s.log_price[k]);
        os << buf;
    }
}

SeriesData read_series_csv(std::istream& is)
{
    std::string line;
    std::vector<std::string> header;
    int lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        header = split(line);
        break;
    }
    if (header.empty())
        throw DataFormatError("no header line");
    int ret_col = -1, count_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i)
    {
        if (header[i] == "return")
            ret_col = static_cast<int>(i);
        else if (header[i] == "count")
            count_col = static_cast<int>(i);
    }
    if (ret_col < 0)
        throw DataFormatError("no 'return' column");

    SeriesData out;
    out.has_counts = count_col >= 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        auto f = split(line);
        auto where = "line " + std::to_string(lineno);
        if (static_cast<int>(f.size()) <= std::max(ret_col, count_col))
            throw DataFormatError(where + ": too few columns");
        double r;
        auto const& rs = f[ret_col];
        auto [p, ec] = std::from_chars(rs.data(), rs.data() + rs.size(), r);
        if (ec != std::errc() || p != rs.data() + rs.size())
            throw DataFormatError(where + ": bad return value");
        out.returns.push_back(r);
        if (out.has_counts)
        {
            long long n;
            auto const& cs = f[count_col];
            auto [q, ec2] = std::from_chars(cs.data(), cs.data() + cs.size(), n);
            if (ec2 != std::errc() || q != cs.data() + cs.size() || n < 0)
                throw DataFormatError(where + ": bad count value");
            out.counts.push_back(n);
        }
    }
    return out;
}

SeriesData read_series_csv(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw DataFormatError("cannot open " + path);
    return read_series_csv(in);
}

}  // namespace lmpred
