#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lmpred/simulate.hpp"

namespace lmpred
{
struct SeriesData
{
    std::vector<std::int64_t> counts;  // empty when the file has none
    std::vector<double> returns;
    bool has_counts = false;
};

// Columns: day,lambda_tilde,count,return,log_price
void write_series_csv(std::ostream& os, DailySeries const& s);

// Reads any CSV with a 'return' column and an optional 'count' column;
// lines starting with '#' are skipped.
SeriesData read_series_csv(std::istream& is);
SeriesData read_series_csv(std::string const& path);

}  // namespace lmpred
