#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ctrw/cli.hpp"

namespace ctrw::cli {

JumpDensity build_density(const Options& o);
Payoff parse_payoff(const std::string& name);
Style parse_style(const std::string& name);
// "--flag value" tokens equivalent to a JSON config object.
std::vector<std::string> config_tokens(const nlohmann::json& cfg);
nlohmann::json density_json(const JumpDensity& d);

// n evenly spaced points from lo to hi inclusive, each computed from its index.
std::vector<double> linear_grid(double lo, double hi, int n);

}  // namespace ctrw::cli
