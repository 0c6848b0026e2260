#include "ctrw/american_de.hpp"

#include <cmath>

#include "ctrw/errors.hpp"
#include "detail/kernel.hpp"

namespace ctrw {

cplx binary_put_laplace(const DEModel& m, double k, double x, cplx s) {
    if (x <= k) return 1.0 / s;
    const auto [bp, bm] = beta_pm(m, s);
    (void)bp;
    return (m.gamma + bm) / m.gamma * std::exp(bm * (x - k)) / s;
}

LaplaceFn binary_put_transform(const DEModel& m, double k, double x) {
    return {[m, k, x](cplx s) { return binary_put_laplace(m, k, x, s); }, 0.0};
}

double binary_put_price(const DEModel& m, double k, double x, double t_bar, Method method, const QuadSpec& spec) {
    m.validate();
    if (!std::isfinite(x) || !std::isfinite(k)) throw ParameterError("binary put needs finite x and k");
    if (!(t_bar >= 0) || !std::isfinite(t_bar)) throw ParameterError("t_bar must be finite and non-negative");
    if (x <= k) return 1.0;  // exercised immediately
    if (method == Method::LaplaceInversion) {
        if (!(t_bar > 0)) throw ParameterError("Laplace inversion needs t_bar > 0");
        return laplace_invert(binary_put_transform(m, k, x), t_bar, spec);
    }
    if (t_bar == 0) return 0.0;

    const double d = k - x;
    const double g = m.gamma, p = m.rho;
    const detail::BesselKernel kern(m, t_bar);
    QuadSpec sub = spec;
    sub.abs_tol = spec.abs_tol / 3;
    // L^a_b(d) = b e^{(a - rho) d} M^a_b(d; xi)
    auto L = [&](double a, double b) { return kern.integral(a, b, d, std::log(b) + (a - p) * d, sub); };
    return (L(g + 1, p - 1) + L(p - 1, g + 1) - L(0.0, g + p)) / g;
}

double perpetual_binary_put(const DEModel& m, double k, double x) {
    m.validate();
    if (x <= k) return 1.0;
    return (m.rho - 1) / m.gamma * std::exp(-m.epsilon() * (x - k));
}

double vanilla_Z0(const DEModel& m, double K) {
    m.validate();
    const double g = m.gamma, p = m.rho;
    return K * std::pow((g + p) * m.epsilon() / (g * (g + 1)), 1.0 / p);
}

double vanilla_Z0_numeric(const DEModel& m, double K) {
    m.validate();
    const double g = m.gamma, p = m.rho, k = std::log(K);
    const double ch = g * p / (g + p);
    const double w = m.lambda / (m.lambda + m.r);
    // Expected payoff after one jump from z, with the jump integral in closed form.
    auto expected = [&](double z) {
        const double dl = k - z, ez = std::exp(z);
        const double below = K / g - ez / (g + 1);
        const double above = K * (-std::expm1(-p * dl)) / p + ez * std::expm1((1 - p) * dl) / (p - 1);
        return ch * (below + above);
    };
    auto F = [&](double z) { return (K - std::exp(z)) - w * expected(z); };
    double lo = k - 1;
    while (F(lo) <= 0) {
        lo = k - 2 * (k - lo);
        if (k - lo > 1e4) throw NoConvergenceError("vanilla_Z0_numeric: no bracket", std::exp(lo), 0);
    }
    return std::exp(find_root(F, lo, k, 1e-15));
}

double perpetual_vanilla_Z_star(const DEModel& m, double K) {
    m.validate();
    const double g = m.gamma, p = m.rho;
    return K * (g + 1) * m.epsilon() / (g * (g - p + 2));
}

double perpetual_vanilla_Z_star_numeric(const DEModel& m, double K) {
    m.validate();
    const double g = m.gamma, p = m.rho, k = std::log(K);
    // Cancelling the e^{-gamma (x - z)} mode of the renewal equation for x > z with
    // value matching P(z) = K - e^z leaves (rho - 1) Lz(z) = K - e^z, where
    // Lz(z) = int_0^inf e^{-gamma v} (K - e^{z - v}) dv.
    QuadSpec spec{1e-13, 1e-15, 2'000'000};
    auto F = [&](double z) {
        const double ez = std::exp(z);
        const double Lz = integrate_semi_infinite([&](double v) { return std::exp(-g * v) * (K - ez * std::exp(-v)); },
                                                  spec, {0.0, 1.0 / g});
        return (p - 1) * Lz - (K - ez);
    };
    double lo = k - 1;
    while (F(lo) >= 0) {
        lo = k - 2 * (k - lo);
        if (k - lo > 1e4) throw NoConvergenceError("perpetual_vanilla_Z_star_numeric: no bracket", std::exp(lo), 0);
    }
    return std::exp(find_root(F, lo, k, 1e-15));
}

PerpetualPut perpetual_vanilla_put(const DEModel& m, double K, double x) {
    const double Z = perpetual_vanilla_Z_star(m, K);
    const double z = std::log(Z);
    if (x <= z) return {K - std::exp(x), z};
    const double g = m.gamma;
    const double price = (m.rho - 1) / g * (K - g * Z / (g + 1)) * std::exp(m.epsilon() * (z - x));
    return {price, z};
}

ExerciseBoundary exercise_boundary(const DEModel& m, double K, Payoff kind) {
    const double k = std::log(K);
    switch (kind) {
        case Payoff::BinaryPut: return {kind, k, k};
        case Payoff::VanillaPut: return {kind, std::log(vanilla_Z0(m, K)), std::log(perpetual_vanilla_Z_star(m, K))};
        default: throw ParameterError("exercise boundaries exist for puts only");
    }
}

}  // namespace ctrw
