#pragma once

#include <string>
#include <vector>

#include "ctrw/densities.hpp"

namespace ctrw {

struct MarketParams {
    double r = 0.0;
    JumpDensity density;
    double lambda = 0.0;
    // False when lambda was overridden by the caller instead of derived from (r, density).
    bool risk_neutral = true;
};

// E[e^{jump}] = h~(-i). Throws DivergentMomentError when the integral diverges.
double exp_moment(const JumpDensity& d);

// lambda = r / (h~(-i) - 1).
double risk_neutral_intensity(double r, const JumpDensity& d);

// Risk-neutral market for (r, d). Rejects r = 0 with h~(-i) = 1 (ArbitrarySojournError).
MarketParams make_market(double r, const JumpDensity& d);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Diagnostics {
    std::vector<Check> checks;
    bool ok() const;
    // First failing check's name and detail, empty when everything passes.
    std::string first_failure() const;
};

Diagnostics validate(const MarketParams& params);

}  // namespace ctrw
