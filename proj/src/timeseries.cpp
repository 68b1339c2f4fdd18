#include "qrelax/timeseries.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qrelax {

void TimeSeries::add_channel(std::string name, std::vector<double> values) {
    if (values.size() != grid.size())
        throw std::invalid_argument("TimeSeries: channel '" + name + "' length mismatch");
    channels.emplace_back(std::move(name), std::move(values));
}

const std::vector<double>* TimeSeries::channel(const std::string& name) const {
    for (const auto& [n, v] : channels)
        if (n == name) return &v;
    return nullptr;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

void write_csv(const TimeSeries& ts, const std::string& path) {
    std::string out;
    out.reserve(ts.grid.size() * (ts.channels.size() + 1) * 26);
    for (const auto& [k, v] : ts.metadata) out += "# " + k + "=" + v + "\n";
    out += ts.grid_name;
    for (const auto& [name, vals] : ts.channels) {
        (void)vals;
        out += "," + name;
    }
    out += "\n";
    for (std::size_t j = 0; j < ts.grid.size(); ++j) {
        out += format_double(ts.grid[j]);
        for (const auto& [name, vals] : ts.channels) {
            (void)name;
            out += ",";
            out += format_double(vals[j]);
        }
        out += "\n";
    }
    atomic_write(path, out);
}

void write_json(const TimeSeries& ts, const std::string& path) {
    nlohmann::json j;
    for (const auto& [k, v] : ts.metadata) j["metadata"][k] = v;
    j[ts.grid_name] = ts.grid;
    for (const auto& [name, vals] : ts.channels) j["channels"][name] = vals;
    atomic_write(path, j.dump(2) + "\n");
}

} // namespace qrelax
