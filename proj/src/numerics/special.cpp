#include <cmath>
#include <numbers>

#include "ctrw/numerics.hpp"

namespace ctrw {

namespace {
constexpr double kPi = std::numbers::pi;
const double kLogSqrt2Pi = 0.5 * std::log(2 * std::numbers::pi);
}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2 * kPi); }

double log_normal_cdf(double z) {
    if (z > -10) return std::log(normal_cdf(z));
    // Mills-ratio asymptotic series: N(z) = phi(z)/|z| * sum (-1)^n (2n-1)!! / z^{2n}.
    const double z2 = z * z;
    double term = 1.0, sum = 1.0;
    for (int n = 1; n <= 20; ++n) {
        term *= -(2.0 * n - 1) / z2;
        sum += term;
    }
    return -0.5 * z2 - std::log(-z) - kLogSqrt2Pi + std::log(sum);
}

double bessel_i1_scaled(double u) {
    if (u <= 0) return 0.0;
    if (u <= 25) {
        // sum_k (u/2)^{2k+1} / (k! (k+1)!); all terms positive.
        const double h = u / 2, h2 = h * h;
        double term = h, sum = h;
        for (int k = 1; k < 200; ++k) {
            term *= h2 / (static_cast<double>(k) * (k + 1));
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return sum * std::exp(-u);
    }
    // Hankel expansion with mu = 4: 1 - 3/(8u) - 15/(2!(8u)^2) - ...
    const double mu = 4.0;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1;
        const double next = -term * (mu - odd * odd) / (k * 8.0 * u);
        if (std::abs(next) > std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2 * kPi * u);
}

cplx log_gamma(cplx z) {
    static constexpr double g = 7.0;
    static constexpr double p[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                   771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
        return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = p[0];
    for (int i = 1; i < 9; ++i) x += p[i] / (z + static_cast<double>(i));
    const cplx t = z + g + 0.5;
    return kLogSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace ctrw
