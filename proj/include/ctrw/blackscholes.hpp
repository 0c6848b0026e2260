#pragma once

namespace ctrw {

struct BSParams {
    double S = 1.0;
    double K = 1.0;
    double r = 0.0;
    double sigma = 0.2;
    double T = 0.0;
};

double bs_binary_call(const BSParams& p);
double bs_binary_put(const BSParams& p);
double bs_vanilla_call(const BSParams& p);
double bs_vanilla_put(const BSParams& p);

// Volatility reproducing a vanilla call price; p.sigma is ignored.
// Throws OutOfBandError outside (max(S - K e^{-rT}, 0), S).
double implied_vol(double price, const BSParams& p);

struct WienerPerpetualPut {
    double price = 0.0;
    double Z_star = 0.0;  // currency
};

WienerPerpetualPut wiener_perpetual_put(double K, double r, double sigma, double x);

}  // namespace ctrw
