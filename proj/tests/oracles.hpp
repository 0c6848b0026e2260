#pragma once

// Reference values computed independently of the library, mostly through Boost.Math.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "ctrw/densities.hpp"

namespace oracle {

inline double gk(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-13);
}

// Integral over [a, inf).
inline double half_line(const std::function<double(double)>& f, double a = 0.0) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([&](double u) { return f(a + u); }, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
}

inline double normal_cdf(double z) { return 0.5 * boost::math::erfc(-z / std::numbers::sqrt2); }

inline double bessel_i1(double u) { return boost::math::cyl_bessel_i(1, u); }

// Pieces of the support of each integrable density, for quadrature oracles.
inline std::vector<std::pair<double, double>> support(const ctrw::JumpDensity& d) {
    using ctrw::Family;
    switch (d.family) {
        case Family::Exponential: return {{-60 * d.b, 0.0}, {0.0, 60 * d.a}};
        case Family::Constant: return {{d.a, d.b}};
        case Family::Gaussian: return {{d.a - 40 * d.b, d.a}, {d.a, d.a + 40 * d.b}};
        case Family::Logistic: return {{d.a - 80 * d.b, d.a}, {d.a, d.a + 80 * d.b}};
        case Family::Gumbel: return {{d.a - 6 * d.b, d.a}, {d.a, d.a + 80 * d.b}};
        default: return {};
    }
}

// E[g(J)] by quadrature of the library's pdf (or the two-point sum for Discrete).
inline double expect(const ctrw::JumpDensity& d, const std::function<double(double)>& g) {
    if (d.family == ctrw::Family::Discrete) return d.a * g(d.b) + (1 - d.a) * g(-d.b);
    double s = 0;
    for (auto [lo, hi] : support(d)) s += gk([&](double x) { return g(x) * ctrw::pdf(d, x); }, lo, hi);
    return s;
}

inline std::complex<double> char_fn(const ctrw::JumpDensity& d, double w) {
    return {expect(d, [w](double x) { return std::cos(w * x); }), expect(d, [w](double x) { return std::sin(w * x); })};
}

// Two-sided exponential model priced by conditioning on the jump count n and
// the number j of up-jumps: the log-return is Gamma(j, 1/rho) - Gamma(n-j, 1/gamma).
struct DESeries {
    double rho, gamma, r, lambda;

    // E[e^{theta S} 1{S >= y}] for S = G1 - G2, theta in {0, 1}.
    double tail(int j, int m, double y, int theta) const {
        const double a = 1 / rho, b = 1 / gamma;
        // Up part: E[e^{theta G1} 1{G1 >= c}].
        auto up = [&](double c) {
            const double scale = theta ? std::pow(1 - a, -j) : 1.0;
            if (j == 0) return c <= 0 ? 1.0 : 0.0;
            if (c <= 0) return scale;
            return scale * boost::math::gamma_q(j, c * (1 - theta * a) / a);
        };
        if (m == 0) return up(y);
        const double mgf_down = theta ? std::pow(1 + b, -m) : 1.0;
        // G2 density with e^{-theta u} folded in: Gamma(m, b / (1 + theta b)).
        const double bb = b / (1 + theta * b);
        auto f = [&](double u) {
            return std::exp((m - 1) * std::log(u) - u / bb - std::lgamma(m) - m * std::log(bb)) * up(y + u);
        };
        const double kink = std::max(0.0, -y);
        double s = 0;
        if (kink > 0) s += gk(f, 0.0, kink);
        s += half_line(f, kink);
        return mgf_down * s;
    }

    // E[e^{theta S_N} 1{S_N >= y}] over N ~ Poisson(lambda t).
    double expect(double y, double t, int theta) const {
        const double lt = lambda * t, p = gamma / (gamma + rho);  // P(up) = a / (a + b)
        double total = 0;
        const int nmax = static_cast<int>(lt + 12 * std::sqrt(lt) + 30);
        for (int n = 0; n <= nmax; ++n) {
            const double pn = std::exp(-lt + n * std::log(lt) - std::lgamma(n + 1.0));
            if (n > 0 && pn < 1e-18) continue;
            double sn = 0;
            for (int j = 0; j <= n; ++j) {
                const double pj = std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) +
                                           j * std::log(p) + (n - j) * std::log1p(-p));
                if (pj < 1e-18) continue;
                sn += pj * tail(j, n - j, y, theta);
            }
            total += pn * sn;
        }
        return total;
    }

    double binary_call(double x, double k, double t) const { return std::exp(-r * t) * expect(k - x, t, 0); }
    double vanilla_call(double x, double K, double t) const {
        const double y = std::log(K) - x;
        return std::exp(-r * t) * (std::exp(x) * expect(y, t, 1) - K * expect(y, t, 0));
    }
};

}  // namespace oracle
