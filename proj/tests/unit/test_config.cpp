#include <doctest.h>

#include <sstream>
#include <string>

#include "lmpred/config.hpp"
#include "lmpred/error.hpp"
#include "lmpred/series_io.hpp"
#include "lmpred/simulate.hpp"

using namespace lmpred;

TEST_SUITE("config")
{
TEST_CASE("parse key = value text")
{
    RunConfig cfg;
    apply_config_text(cfg, "# comment\n"
                           "d = 0.25   # trailing\n"
                           "\n"
                           "  seed=42\n"
                           "months = 131, 262\n"
                           "horizon_rounding = floor\n"
                           "test = bootstrap\n");
    CHECK(cfg.params.d == 0.25);
    CHECK(cfg.seed == 42);
    CHECK(cfg.months == std::vector<long>{131, 262});
    CHECK(cfg.horizon_rounding == "floor");
    CHECK(cfg.test == "bootstrap");
    CHECK(cfg.params.c == 1.0);
}

TEST_CASE("config errors name the line")
{
    RunConfig cfg;
    try
    {
        apply_config_text(cfg, "d = 0.1\nbogus = 3\n", "run.cfg");
        FAIL("expected ConfigError");
    }
    catch (ConfigError const& e)
    {
        std::string msg = e.what();
        CHECK(msg.find("run.cfg:2") != std::string::npos);
        CHECK(msg.find("bogus") != std::string::npos);
    }
    CHECK_THROWS_AS(apply_config_text(cfg, "d 0.1\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(cfg, "d = abc\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(cfg, "reps = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(cfg, "statistic = rho\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_file(cfg, "/nonexistent/run.cfg"), ConfigError);
    CHECK(ConfigError("x").kind() == ErrorKind::config);
}

TEST_CASE("config entries round trip")
{
    RunConfig a;
    apply_config_text(a, "mu = 1e-6\nlambda = 128.2085\nsigma_e = 0.0001\n"
                         "c = 0.3\nd = 0.3545\nkappas = 0.1, 0.7\n"
                         "thetas = 0.05\ninput = data.csv\n");
    std::string text;
    for (auto const& [k, v] : config_entries(a))
        text += k + " = " + v + "\n";
    RunConfig b;
    apply_config_text(b, text);
    CHECK(config_entries(a) == config_entries(b));
    CHECK(b.params.mu == a.params.mu);
    CHECK(b.params.d == a.params.d);
    CHECK(b.kappas == a.kappas);
    CHECK(b.input == "data.csv");
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("series CSV round trip is bit exact")
{
    ModelParams p;
    p.d = 0.2;
    PathConfig cfg;
    cfg.days = 300;
    cfg.seed = 17;
    auto s = simulate_path(p, cfg);
    std::stringstream ss;
    write_series_csv(ss, s);
    auto r = read_series_csv(ss);
    CHECK(r.has_counts);
    CHECK(r.counts == s.counts);
    CHECK(r.returns == s.returns);
}

TEST_CASE("series CSV without counts")
{
    std::istringstream in("# returns only\nreturn\n0.5\n-0.25\n1e-3\n");
    auto r = read_series_csv(in);
    CHECK_FALSE(r.has_counts);
    CHECK(r.counts.empty());
    CHECK(r.returns == std::vector<double>{0.5, -0.25, 1e-3});

    std::istringstream bad("count\n1\n");
    CHECK_THROWS_AS(read_series_csv(bad), DataFormatError);
    std::istringstream garbage("return,count\nx,1\n");
    CHECK_THROWS_AS(read_series_csv(garbage), DataFormatError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_series_csv(empty), DataFormatError);
}
}
