#include "ctrw/blackscholes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ctrw/errors.hpp"
#include "ctrw/numerics.hpp"

namespace ctrw {

namespace {

void check(const BSParams& p) {
    if (!(p.S > 0) || !(p.K > 0)) throw ParameterError("Black-Scholes needs S > 0 and K > 0");
    if (!(p.T >= 0) || !(p.sigma >= 0)) throw ParameterError("Black-Scholes needs T >= 0 and sigma >= 0");
}

// d2 = (ln(S/K) + (r - sigma^2/2) T) / (sigma sqrt T); d1 = d2 + sigma sqrt T.
std::pair<double, double> d12(const BSParams& p) {
    const double v = p.sigma * std::sqrt(p.T);
    const double d2 = (std::log(p.S / p.K) + (p.r - p.sigma * p.sigma / 2) * p.T) / v;
    return {d2 + v, d2};
}

bool degenerate(const BSParams& p) { return p.T == 0 || p.sigma == 0; }

}  // namespace

double bs_binary_call(const BSParams& p) {
    check(p);
    const double disc = std::exp(-p.r * p.T);
    if (degenerate(p)) return p.S * std::exp(p.r * p.T) >= p.K ? disc : 0.0;
    return disc * normal_cdf(d12(p).second);
}

double bs_binary_put(const BSParams& p) {
    check(p);
    const double disc = std::exp(-p.r * p.T);
    if (degenerate(p)) return p.S * std::exp(p.r * p.T) >= p.K ? 0.0 : disc;
    return disc * normal_cdf(-d12(p).second);
}

double bs_vanilla_call(const BSParams& p) {
    check(p);
    const double disc = std::exp(-p.r * p.T);
    if (degenerate(p)) return std::max(p.S - p.K * disc, 0.0);
    const auto [d1, d2] = d12(p);
    return p.S * normal_cdf(d1) - p.K * disc * normal_cdf(d2);
}

double bs_vanilla_put(const BSParams& p) {
    check(p);
    const double disc = std::exp(-p.r * p.T);
    if (degenerate(p)) return std::max(p.K * disc - p.S, 0.0);
    const auto [d1, d2] = d12(p);
    return p.K * disc * normal_cdf(-d2) - p.S * normal_cdf(-d1);
}

double implied_vol(double price, const BSParams& p) {
    BSParams q = p;
    q.sigma = 0;
    check(q);
    if (!(q.T > 0)) throw ParameterError("implied vol needs T > 0");
    const double floor = std::max(q.S - q.K * std::exp(-q.r * q.T), 0.0);
    if (!(price > floor && price < q.S)) {
        std::ostringstream os;
        os.precision(17);
        os << "implied_vol: price " << price << " outside the no-arbitrage band (" << floor << ", " << q.S << ")";
        throw OutOfBandError(os.str());
    }
    auto f = [&](double s) {
        q.sigma = s;
        return bs_vanilla_call(q) - price;
    };
    // The price is increasing in sigma and equals the band floor at sigma = 0.
    double hi = 5.0;
    if (f(hi) < 0) throw NoConvergenceError("implied_vol: price above the sigma = 5 value", hi, f(hi));
    const double s = find_root(f, 0.0, hi, 1e-15);
    const double resid = std::abs(f(s));
    if (resid > 1e-10 * q.K) throw NoConvergenceError("implied_vol: residual above 1e-10 K", s, resid);
    return s;
}

WienerPerpetualPut wiener_perpetual_put(double K, double r, double sigma, double x) {
    if (!(K > 0) || !(r > 0) || !(sigma > 0)) throw ParameterError("perpetual put needs K, r, sigma > 0");
    const double s2 = sigma * sigma;
    const double Z = 2 * r * K / (2 * r + s2);
    const double z = std::log(Z);
    if (x <= z) return {K - std::exp(x), Z};
    return {s2 * K / (2 * r + s2) * std::exp(2 * r * (z - x) / s2), Z};
}

}  // namespace ctrw
