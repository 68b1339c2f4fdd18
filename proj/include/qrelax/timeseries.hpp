#pragma once
#include <string>
#include <utility>
#include <vector>

namespace qrelax {

// Monotone time grid with named real-valued channels. All channels share
// the grid length.
struct TimeSeries {
    std::vector<double> grid;
    std::string grid_name = "tau";
    std::vector<std::pair<std::string, std::vector<double>>> channels;
    std::vector<std::pair<std::string, std::string>> metadata;  // emitted as comments

    void add_channel(std::string name, std::vector<double> values);
    const std::vector<double>* channel(const std::string& name) const;
};

// CSV: UTF-8, comma separated, LF line endings, one header row, 17
// significant digits (round-trip exact for doubles). Metadata rows are
// leading "# key=value" comments. Written atomically (temp file + rename).
void write_csv(const TimeSeries& ts, const std::string& path);

// Same content as a JSON document (metadata object + channel arrays).
void write_json(const TimeSeries& ts, const std::string& path);

// Formats one double with 17 significant digits.
std::string format_double(double v);

} // namespace qrelax
