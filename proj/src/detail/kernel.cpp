#include "detail/kernel.hpp"

#include <cmath>
#include <limits>

namespace ctrw::detail {

BesselKernel::BesselKernel(const DEModel& m, double t_bar)
    : m_(m), t_(t_bar), c_(m.lambda * t_bar), kappa_(std::sqrt(2.0 / (m.gamma * m.rho * m.lambda * t_bar))) {}

double BesselKernel::log_integrand(double a, double b, double d, double log_coef, double u) const {
    if (!(u > 0)) return -std::numeric_limits<double>::infinity();
    const double i1 = bessel_i1_scaled(2 * u);
    return std::log(2 * i1) + 2 * u - c_ - m_.r * t_ + log_coef + log_m_kernel(a, b, d, kappa_ * u);
}

double BesselKernel::integral(double a, double b, double d, double log_coef, const QuadSpec& spec) const {
    const double ninf = -std::numeric_limits<double>::infinity();
    auto phi = [&](double u) { return log_integrand(a, b, d, log_coef, u); };

    // Gaussian-in-u decay rate of the integrand sets the first guess of the peak.
    const double gr = m_.gamma * m_.rho;
    const double excess = std::max(0.0, b - a);
    const double Q = a * b + excess * excess / 4;
    const double guess = Q > 0 ? gr * c_ / Q : c_ + 1.0;

    // Coarse log-spaced scan over eight decades, then golden-section refinement.
    constexpr int n = 201;
    double best = ninf, best_u = guess;
    int best_j = -1;
    for (int j = 0; j < n; ++j) {
        const double u = guess * std::pow(10.0, (j - 100) / 25.0);
        const double v = phi(u);
        if (v > best) {
            best = v;
            best_u = u;
            best_j = j;
        }
    }
    if (best_j < 0 || best == ninf) return 0.0;
    double lo = guess * std::pow(10.0, (best_j - 101) / 25.0);
    double hi = guess * std::pow(10.0, (best_j - 99) / 25.0);
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = phi(x1), f2 = phi(x2);
    for (int it = 0; it < 80 && (hi - lo) > 1e-12 * hi; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = phi(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = phi(x1);
        }
    }
    if (std::max(f1, f2) > best) {
        best = std::max(f1, f2);
        best_u = f1 > f2 ? x1 : x2;
    }
    // Integrals below ~1e-300 are zero for every purpose here.
    if (best < -690) return 0.0;

    // Half-width where the log integrand has dropped by 2 (about two standard deviations).
    auto reach = [&](double dir) {
        double step = std::max(best_u * 1e-6, 1e-300);
        double inside = 0;
        for (int it = 0; it < 200; ++it) {
            const double u = best_u + dir * step;
            if (u <= 0) return best_u;
            if (phi(u) < best - 2) break;
            inside = step;
            step *= 2;
        }
        double outside = step;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (inside + outside);
            if (phi(best_u + dir * mid) < best - 2) outside = mid;
            else inside = mid;
        }
        return outside;
    };
    const double w = 0.5 * std::max(reach(1.0), reach(-1.0));

    auto f = [&](double u) { return std::exp(phi(u)); };
    return integrate_semi_infinite(f, spec, {best_u, w});
}

}  // namespace ctrw::detail
