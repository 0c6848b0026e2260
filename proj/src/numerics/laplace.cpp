#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ctrw/errors.hpp"
#include "ctrw/numerics.hpp"

namespace ctrw {

namespace {

void check_time(double t) {
    if (!(t > 0) || !std::isfinite(t)) throw ParameterError("Laplace inversion needs a finite t > 0");
}

}  // namespace

double talbot(const LaplaceFn& f, double t, int M) {
    check_time(t);
    // Shift so the transform is analytic for Re(s) > 0: f(t) = e^{s0 t} g(t), g^(s) = f^(s + s0).
    const double s0 = f.abscissa;
    const double r = 2.0 * M / (5.0 * t);
    double sum = 0.5 * (f.handle(cplx(r + s0, 0.0)) * std::exp(r * t)).real();
    for (int k = 1; k < M; ++k) {
        const double th = k * std::numbers::pi / M;
        const double cot = std::cos(th) / std::sin(th);
        const cplx delta = r * th * cplx(cot, 1.0);
        const double sigma = th + (th * cot - 1.0) * cot;
        sum += (std::exp(t * delta) * f.handle(delta + s0) * cplx(1.0, sigma)).real();
    }
    return std::exp(s0 * t) * r / M * sum;
}

double euler_inversion(const LaplaceFn& f, double t, int M) {
    check_time(t);
    const double s0 = f.abscissa;
    const double A = M * std::log(10.0) / 3.0;
    // Binomial averaging weights of the last M terms.
    std::vector<double> eta(2 * M + 1, 1.0);
    eta[0] = 0.5;
    eta[2 * M] = std::ldexp(1.0, -M);
    double binom = 1.0;
    for (int k = 1; k < M; ++k) {
        binom = binom * (M - k + 1) / k;
        eta[2 * M - k] = eta[2 * M - k + 1] + std::ldexp(binom, -M);
    }
    double sum = 0.0;
    for (int k = 0; k <= 2 * M; ++k) {
        const cplx beta(A, std::numbers::pi * k);
        const double term = eta[k] * f.handle(beta / t + s0).real();
        sum += (k % 2 == 0) ? term : -term;
    }
    return std::exp(s0 * t) * std::pow(10.0, M / 3.0) / t * sum;
}

Estimate laplace_invert_estimate(const LaplaceFn& f, double t) {
    Estimate best{0.0, std::numeric_limits<double>::infinity(), 0};
    double prev = std::numeric_limits<double>::quiet_NaN();
    long evals = 0;
    for (int M : kTalbotLadder) {
        const double v = talbot(f, t, M);
        evals += M;
        const double move = std::abs(v - prev);
        if (std::isfinite(v) && move < best.error) best = {v, move, 0};
        prev = v;
    }
    if (!std::isfinite(best.error)) best = {prev, std::numeric_limits<double>::infinity(), 0};
    best.evals = evals;
    return best;
}

double laplace_invert(const LaplaceFn& f, double t, const QuadSpec& spec) {
    const Estimate e = laplace_invert_estimate(f, t);
    if (!std::isfinite(e.value)) throw NoConvergenceError("laplace_invert: non-finite result", e.value, e.error);
    if (e.error > std::max(spec.rel_tol * std::abs(e.value), spec.abs_tol))
        throw NoConvergenceError("laplace_invert: error estimate above tolerance", e.value, e.error);
    return e.value;
}

}  // namespace ctrw
