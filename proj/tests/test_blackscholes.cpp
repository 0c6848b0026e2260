#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ctrw/blackscholes.hpp"
#include "ctrw/errors.hpp"
#include "ctrw/european_de.hpp"
#include "oracles.hpp"

using namespace ctrw;

namespace {

double oracle_call(double S, double K, double r, double sigma, double T) {
    const double d1 = (std::log(S / K) + (r + sigma * sigma / 2) * T) / (sigma * std::sqrt(T));
    return S * oracle::normal_cdf(d1) - K * std::exp(-r * T) * oracle::normal_cdf(d1 - sigma * std::sqrt(T));
}

}  // namespace

TEST(BlackScholes, BinaryCallExamples) {
    EXPECT_NEAR(bs_binary_call({1, 1, 0.04, 0.1, 0.25}), std::exp(-0.01) * oracle::normal_cdf(0.175), 1e-15);
    EXPECT_NEAR(bs_binary_call({1, 1, 0.04, 0.1, 0.25}), 0.5638, 1e-4);
    EXPECT_NEAR(bs_binary_call({1e6, 1, 0.04, 0.1, 0.25}), std::exp(-0.01), 1e-15);
    EXPECT_NEAR(bs_binary_call({1.1, 1, 0.04, 0.1, 1e-10}), 1.0, 1e-11);
    for (double S = 0.7; S < 1.4; S += 0.05) {
        const BSParams p{S, 1, 0.04, 0.1, 0.25};
        EXPECT_NEAR(bs_binary_call(p) + bs_binary_put(p), std::exp(-0.01), 1e-15);
        EXPECT_GT(bs_binary_call(p), 0.0);
    }
}

TEST(BlackScholes, VanillaExamples) {
    EXPECT_NEAR(bs_vanilla_call({100, 100, 0.0, 0.2, 1.0}), 100 * (oracle::normal_cdf(0.1) - oracle::normal_cdf(-0.1)),
                1e-12);
    EXPECT_NEAR(bs_vanilla_call({100, 100, 0.0, 0.2, 1.0}), 7.9656, 1e-4);
    EXPECT_EQ(bs_vanilla_call({120, 100, 0.04, 0.2, 0.0}), 20.0);
    EXPECT_EQ(bs_vanilla_call({80, 100, 0.04, 0.2, 0.0}), 0.0);
    EXPECT_NEAR(bs_vanilla_call({1e4, 100, 0.04, 0.2, 1.0}), 1e4 - 100 * std::exp(-0.04), 1e-9);
    for (double S : {70.0, 95.0, 100.0, 110.0, 150.0})
        for (double T : {0.01, 0.25, 3.0})
            EXPECT_NEAR(bs_vanilla_call({S, 100, 0.04, 0.25, T}), oracle_call(S, 100, 0.04, 0.25, T), 1e-11);
}

TEST(BlackScholes, PutCallParity) {
    for (double S : {50.0, 90.0, 100.0, 130.0})
        for (double T : {0.1, 1.0, 10.0})
            for (double sigma : {0.05, 0.3, 1.0}) {
                const BSParams p{S, 100, 0.04, sigma, T};
                EXPECT_NEAR(bs_vanilla_put(p) + S, bs_vanilla_call(p) + 100 * std::exp(-0.04 * T), 1e-12 * 100);
            }
}

TEST(ImpliedVol, RoundTrip) {
    for (double sigma : {0.05, 0.1, 0.2, 0.5, 1.0})
        for (double S : {0.9, 1.0, 1.1}) {
            const BSParams p{S, 1.0, 0.04, sigma, 0.25};
            EXPECT_NEAR(implied_vol(bs_vanilla_call(p), p), sigma, 1e-9) << "sigma=" << sigma << " S=" << S;
        }
    const BSParams p{100, 100, 0.04, 0.2, 0.25};
    EXPECT_NEAR(implied_vol(bs_vanilla_call(p), p), 0.2, 1e-10);
}

TEST(ImpliedVol, LowerBandEdge) {
    const BSParams p{1.0, 1.0, 0.04, 0.0, 0.25};
    const double floor = 1 - std::exp(-0.01);
    double prev = INFINITY;
    for (double eps : {1e-3, 1e-5, 1e-7}) {
        const double s = implied_vol(floor + eps, p);
        EXPECT_LT(s, prev);
        prev = s;
    }
    EXPECT_LT(prev, 1e-2);
    // At the forward the floor is 0 and the price is linear in sigma: C ~ S sigma sqrt(T / 2 pi).
    const double S = std::exp(-0.01);
    const double s = implied_vol(1e-9, {S, 1.0, 0.04, 0.0, 0.25});
    EXPECT_NEAR(s, 1e-9 / (S * std::sqrt(0.25 / (2 * std::numbers::pi))), 1e-14);
}

TEST(ImpliedVol, OutOfBand) {
    const BSParams p{1.0, 1.0, 0.04, 0.0, 0.25};
    EXPECT_THROW(implied_vol(1 - std::exp(-0.01), p), OutOfBandError);
    EXPECT_THROW(implied_vol(0.001, p), OutOfBandError);
    EXPECT_THROW(implied_vol(1.0, p), OutOfBandError);
    EXPECT_THROW(implied_vol(-0.1, {0.5, 1.0, 0.04, 0.0, 0.25}), OutOfBandError);
}

TEST(ImpliedVol, SmileCollapse) {
    // Each CTRW implied-vol curve crosses the diffusive level sigma = 10% just below the money.
    for (double rho : {2.0, 5.0, 20.0}) {
        const DEModel m = DEModel::from_sigma(rho, 0.1, 0.04);
        const Contract c{Style::European, Payoff::VanillaCall, 1.0, 0.0, 0.25};
        auto iv = [&](double sk) {
            return implied_vol(vanilla_call_price(m, c, std::log(sk), Method::ClosedForm), {sk, 1.0, 0.04, 0.0, 0.25});
        };
        const double lo = iv(0.93) - 0.1, hi = iv(0.99) - 0.1;
        EXPECT_LT(lo * hi, 0.0) << "rho=" << rho << " iv(0.93)=" << lo + 0.1 << " iv(0.99)=" << hi + 0.1;
        double prev = iv(1.0);
        for (double sk = 1.02; sk <= 1.2; sk += 0.02) {
            const double v = iv(sk);
            EXPECT_GT(v, prev) << "rho=" << rho << " S/K=" << sk;
            prev = v;
        }
    }
}

TEST(WienerPerpetualPut, Examples) {
    const auto w = wiener_perpetual_put(1.0, 0.04, 0.1, 0.0);
    EXPECT_NEAR(w.Z_star, 0.888889, 1e-6);
    const auto at = wiener_perpetual_put(1.0, 0.04, 0.1, std::log(w.Z_star));
    EXPECT_NEAR(at.price, 1 - w.Z_star, 1e-15);
    EXPECT_NEAR(at.price, 0.01 / 0.09, 1e-15);
    const auto big = wiener_perpetual_put(1.0, 1e4, 0.1, 0.01);
    EXPECT_NEAR(big.Z_star, 1.0, 1e-6);
    EXPECT_NEAR(big.price, 0.0, 1e-12);
    EXPECT_NEAR(wiener_perpetual_put(1.0, 0.04, 0.1, -1.0).price, 1 - std::exp(-1.0), 1e-15);
    EXPECT_THROW(wiener_perpetual_put(1.0, 0.0, 0.1, 0.0), ParameterError);
}
