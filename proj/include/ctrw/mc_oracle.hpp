#pragma once

#include <cstdint>
#include <functional>

#include "ctrw/european_de.hpp"
#include "ctrw/random.hpp"
#include "ctrw/riskneutral.hpp"

namespace ctrw {

struct MCConfig {
    long paths = 1'000'000;
    std::uint64_t seed = 20240601;
    // Pair each path with its jump-reflected twin; symmetric densities only.
    bool antithetic = false;
    // 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
    unsigned threads = 0;
};

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long paths = 0;
    std::uint64_t seed = 0;
};

// X(T) = x0 + sum of N(T) jumps, N(T) ~ Poisson(lambda T).
double simulate_terminal(const MarketParams& mp, double x0, double T, RandomStream& rng);

// E[e^{-rT} payoff(X_T)] for an arbitrary log-price payoff.
MCEstimate price_european_mc(const MarketParams& mp, const std::function<double(double)>& payoff, double x0,
                             double T, const MCConfig& cfg);
MCEstimate price_european_mc(const MarketParams& mp, const Contract& c, double x0, const MCConfig& cfg);

// Pays 1 at the first jump landing at or below k, if that happens by T.
MCEstimate price_american_binary_put_mc(const MarketParams& mp, double k, double x0, double T, const MCConfig& cfg);

// Estimates E[e^{-rT} e^{X_T}] - e^{x0}.
MCEstimate martingale_check(const MarketParams& mp, double x0, double T, const MCConfig& cfg);

// Payoff of a European contract as a function of log-price at expiry.
std::function<double(double)> contract_payoff(const Contract& c);

}  // namespace ctrw
