#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cli/internal.hpp"
#include "ctrw/cli.hpp"
#include "ctrw/errors.hpp"

namespace ctrw::cli {

namespace {

std::string cell(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_cell(const std::string& s) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParameterError("malformed CSV number '" + s + "'");
    return v;
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (n < 2) return {lo};
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return g;
}

void write_csv(std::ostream& os, const PriceCurve& c) {
    for (const auto& col : c.columns)
        if (col.size() != c.abscissa.size()) throw ParameterError("curve columns differ in length");
    os << "# " << c.meta.dump() << "\n";
    os << c.abscissa_name;
    for (const auto& n : c.names) os << "," << n;
    os << "\n";
    for (std::size_t i = 0; i < c.abscissa.size(); ++i) {
        os << cell(c.abscissa[i]);
        for (const auto& col : c.columns) os << "," << cell(col[i]);
        os << "\n";
    }
}

PriceCurve read_csv(std::istream& is) {
    PriceCurve c;
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw ParameterError("CSV lacks a '# {meta}' first line");
    c.meta = nlohmann::json::parse(line.substr(2));
    if (!std::getline(is, line)) throw ParameterError("CSV lacks a header row");
    auto header = split(line);
    if (header.empty()) throw ParameterError("empty CSV header");
    c.abscissa_name = header[0];
    c.names.assign(header.begin() + 1, header.end());
    c.columns.resize(c.names.size());
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto f = split(line);
        if (f.size() != header.size()) throw ParameterError("CSV row has " + std::to_string(f.size()) + " fields");
        c.abscissa.push_back(parse_cell(f[0]));
        for (std::size_t j = 1; j < f.size(); ++j) c.columns[j - 1].push_back(parse_cell(f[j]));
    }
    return c;
}

}  // namespace ctrw::cli
