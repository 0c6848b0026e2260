#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctrw/european_de.hpp"
#include "ctrw/riskneutral.hpp"

namespace ctrw::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitAccuracy = 3;

struct Options {
    std::string density = "exp";
    std::optional<double> a, b;
    std::optional<double> rho, gamma, sigma;
    std::optional<double> mu1, mu2;
    std::optional<double> lambda_override;
    double rate = 0.04;
    double T = 0.25;
    double spot = 1.0;
    double strike = 1.0;
    double L = 0.0;
    std::string contract = "vanilla-call";
    std::string style = "european";
    std::string method;  // empty: closed for exp, fourier otherwise
    double tol = 1e-10;  // absolute
    double rel_tol = 1e-9;
    long paths = 1'000'000;
    std::uint64_t seed = 20240601;
    bool antithetic = false;
    bool martingale = false;
    std::string out;
    std::string config;
    // Moneyness grid of the iv command.
    double from = 0.8;
    double to = 1.2;
    int points = 41;
};

// Market and, for the exponential family, the exact-pricing view of it.
struct Model {
    MarketParams market;
    std::optional<DEModel> de;
};

Model build_model(const Options& o);
Contract build_contract(const Options& o);
QuadSpec quad_spec(double rel_tol, double abs_tol);

// A figure or grid: one abscissa column and any number of ordinate columns.
// NaN ordinates are written as empty cells.
struct PriceCurve {
    std::string abscissa_name;
    std::vector<double> abscissa;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    nlohmann::json meta;
};

void write_csv(std::ostream& os, const PriceCurve& c);
PriceCurve read_csv(std::istream& is);

const std::vector<std::string>& figure_ids();
// Default run parameters of a figure, as stored in its CSV meta line.
nlohmann::json figure_defaults(const std::string& id);
// Evaluates the figure described by `meta` (which must name it under "figure").
PriceCurve make_figure(const nlohmann::json& meta);

// Runs the tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ctrw::cli
