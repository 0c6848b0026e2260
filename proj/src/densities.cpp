#include "ctrw/densities.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ctrw/errors.hpp"
#include "ctrw/numerics.hpp"

namespace ctrw {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(std::numbers::pi);

// (e^z - 1)/z without cancellation near z = 0.
cplx expm1_over(cplx z) {
    if (std::abs(z) < 0.1) {
        cplx term = 1.0, sum = 1.0;
        for (int n = 2; n < 14; ++n) {
            term *= z / static_cast<double>(n);
            sum += term;
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

[[noreturn]] void bad(const JumpDensity& d, const std::string& why) {
    throw ParameterError(describe(d) + ": " + why);
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::Exponential: return "exp";
        case Family::Discrete: return "discrete";
        case Family::Constant: return "constant";
        case Family::Gaussian: return "gaussian";
        case Family::Logistic: return "logistic";
        case Family::Gumbel: return "gumbel";
        case Family::ParetoHalf: return "pareto";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    for (Family f : kAllFamilies)
        if (family_name(f) == name) return f;
    if (name == "exponential") return Family::Exponential;
    if (name == "uniform") return Family::Constant;
    throw ParameterError("unknown density family '" + std::string(name) + "'");
}

std::string describe(const JumpDensity& d) {
    std::ostringstream os;
    os.precision(17);
    os << family_name(d.family) << "(a=" << d.a << ", b=" << d.b << ")";
    return os.str();
}

JumpDensity JumpDensity::make(Family f, double a, double b) {
    JumpDensity d{f, a, b};
    d.validate();
    return d;
}

void JumpDensity::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b)) bad(*this, "parameters must be finite");
    switch (family) {
        case Family::Exponential:
            if (!(a > 0 && b > 0)) bad(*this, "exponential requires a > 0 and b > 0");
            break;
        case Family::Discrete:
            // a = 0 or 1 is the degenerate one-point law; still a valid density.
            if (!(a >= 0 && a <= 1 && b > 0)) bad(*this, "discrete requires 0 <= a <= 1 and b > 0");
            break;
        case Family::Constant:
            if (!(a < b)) bad(*this, "constant requires a < b");
            break;
        case Family::Gaussian:
        case Family::Logistic:
        case Family::Gumbel:
            if (!(b > 0)) bad(*this, "scale b must be positive");
            break;
        case Family::ParetoHalf:
            if (!(a > 0 && a < 1 && b > 0 && b < 1)) bad(*this, "pareto requires 0 < a < 1 and 0 < b < 1");
            break;
    }
}

JumpDensity JumpDensity::from_rates(double rho, double gamma) {
    if (!(rho > 0 && gamma > 0)) throw ParameterError("exponential rates must be positive");
    return make(Family::Exponential, 1.0 / rho, 1.0 / gamma);
}

double JumpDensity::rho() const {
    if (family != Family::Exponential) throw UnsupportedFamilyError("rho is defined for the exponential family only");
    return 1.0 / a;
}

double JumpDensity::gamma() const {
    if (family != Family::Exponential) throw UnsupportedFamilyError("gamma is defined for the exponential family only");
    return 1.0 / b;
}

std::complex<double> char_fn(const JumpDensity& d, std::complex<double> w) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw DomainError("char_fn: omega must be finite");
    const cplx I(0.0, 1.0);
    const double a = d.a, b = d.b;
    auto outside_strip = [&](double lo, double hi) {
        if (!(w.imag() > lo && w.imag() < hi)) {
            std::ostringstream os;
            os << "char_fn: " << describe(d) << " is not analytic at omega=" << w;
            throw DomainError(os.str());
        }
    };
    switch (d.family) {
        case Family::Exponential:
            outside_strip(-1.0 / a, 1.0 / b);
            return 1.0 / ((1.0 - I * w * a) * (1.0 + I * w * b));
        case Family::Discrete:
            return a * std::exp(I * b * w) + (1.0 - a) * std::exp(-I * b * w);
        case Family::Constant:
            return std::exp(I * a * w) * expm1_over(I * (b - a) * w);
        case Family::Gaussian:
            return std::exp(-b * b * w * w / 2.0 + I * a * w);
        case Family::Logistic:
            outside_strip(-1.0 / b, 1.0 / b);
            return std::exp(I * a * w + log_gamma(1.0 - I * b * w) + log_gamma(1.0 + I * b * w));
        case Family::Gumbel:
            outside_strip(-1.0 / b, std::numeric_limits<double>::infinity());
            return std::exp(I * a * w + log_gamma(1.0 - I * b * w));
        case Family::ParetoHalf:
            outside_strip(-1.0 / b, 1.0 / b);
            return 1.0 - 2.0 * kSqrtPi * (a * std::sqrt(1.0 - I * w * b) + (1.0 - a) * std::sqrt(1.0 + I * w * b) - 1.0);
    }
    throw UnsupportedFamilyError("char_fn: unknown family");
}

Moments mean_var(const JumpDensity& d) {
    d.validate();
    const double a = d.a, b = d.b;
    switch (d.family) {
        case Family::Exponential: return {a - b, a * a + b * b};
        case Family::Discrete: return {(2 * a - 1) * b, 4 * a * (1 - a) * b * b};
        case Family::Constant: return {(b + a) / 2, (b - a) * (b - a) / 12};
        case Family::Gaussian: return {a, b * b};
        case Family::Logistic: return {a, kPi * kPi * b * b / 3};
        case Family::Gumbel: return {a + kEulerGamma * b, kPi * kPi * b * b / 6};
        case Family::ParetoHalf: {
            const double m1 = kSqrtPi * (2 * a - 1) * b;
            return {m1, kSqrtPi / 2 * b * b - m1 * m1};
        }
    }
    throw UnsupportedFamilyError("mean_var: unknown family");
}

JumpDensity fit_from_moments(Family family, const Moments& m) {
    const double mu1 = m.mu1, mu2 = m.mu2;
    if (!std::isfinite(mu1) || !std::isfinite(mu2) || !(mu2 > 0))
        throw InfeasibleMomentsError("moment fit needs finite mu1 and mu2 > 0");
    switch (family) {
        case Family::Exponential: {
            if (!(2 * mu2 > mu1 * mu1)) throw InfeasibleMomentsError("exponential fit needs 2 mu2 > mu1^2");
            const double a = (mu1 + std::sqrt(2 * mu2 - mu1 * mu1)) / 2;
            return JumpDensity::make(family, a, a - mu1);
        }
        case Family::Discrete: {
            const double b = std::sqrt(mu2 + mu1 * mu1);
            return JumpDensity::make(family, (1 + mu1 / b) / 2, b);
        }
        case Family::Constant: {
            const double h = std::sqrt(3 * mu2);
            return JumpDensity::make(family, mu1 - h, mu1 + h);
        }
        case Family::Gaussian: return JumpDensity::make(family, mu1, std::sqrt(mu2));
        case Family::Logistic: return JumpDensity::make(family, mu1, std::sqrt(3 * mu2) / kPi);
        case Family::Gumbel: {
            const double b = std::sqrt(6 * mu2) / kPi;
            return JumpDensity::make(family, mu1 - b * kEulerGamma, b);
        }
        case Family::ParetoHalf: {
            const double b = std::sqrt(2 * (mu2 + mu1 * mu1) / kSqrtPi);
            return JumpDensity::make(family, (1 + mu1 / (kSqrtPi * b)) / 2, b);
        }
    }
    throw UnsupportedFamilyError("fit_from_moments: unknown family");
}

double pdf(const JumpDensity& d, double x) {
    const double a = d.a, b = d.b;
    switch (d.family) {
        case Family::Exponential:
            return (x >= 0 ? std::exp(-x / a) : std::exp(x / b)) / (a + b);
        case Family::Discrete:
            // Point masses have no density; report 0 off the atoms.
            return 0.0;
        case Family::Constant:
            return (x >= a && x <= b) ? 1.0 / (b - a) : 0.0;
        case Family::Gaussian: {
            const double z = (x - a) / b;
            return std::exp(-z * z / 2) / (b * std::sqrt(2 * kPi));
        }
        case Family::Logistic: {
            const double z = std::abs(x - a) / b;
            const double e = std::exp(-z);
            return e / (b * (1 + e) * (1 + e));
        }
        case Family::Gumbel: {
            const double z = (x - a) / b;
            return std::exp(-z - std::exp(-z)) / b;
        }
        case Family::ParetoHalf: {
            // Levy measure, not normalizable.
            if (x == 0) return std::numeric_limits<double>::infinity();
            const double ax = std::abs(x);
            return (x > 0 ? a : 1 - a) * std::sqrt(b) * std::pow(ax, -1.5) * std::exp(-ax / b);
        }
    }
    return 0.0;
}

double sample(const JumpDensity& d, RandomStream& rng) {
    const double a = d.a, b = d.b;
    switch (d.family) {
        case Family::Exponential: {
            const bool up = rng.uniform() < a / (a + b);
            const double e = -std::log(rng.uniform());
            return up ? a * e : -b * e;
        }
        case Family::Discrete: return rng.uniform() < a ? b : -b;
        case Family::Constant: return a + (b - a) * rng.uniform();
        case Family::Gaussian: {
            std::normal_distribution<double> n(a, b);
            return n(rng);
        }
        case Family::Logistic: {
            const double u = rng.uniform();
            return a + b * std::log(u / (1 - u));
        }
        case Family::Gumbel: return a - b * std::log(-std::log(rng.uniform()));
        case Family::ParetoHalf:
            throw UnsupportedFamilyError("pareto has infinite jump activity and cannot be sampled");
    }
    throw UnsupportedFamilyError("sample: unknown family");
}

double char_fn_envelope(const JumpDensity& d, double w) {
    w = std::abs(w);
    const double a = d.a, b = d.b;
    switch (d.family) {
        case Family::Exponential: return w == 0 ? 1.0 : std::min(1.0, 1.0 / (a * b * w * w));
        case Family::Constant: return w == 0 ? 1.0 : std::min(1.0, 2.0 / ((b - a) * w));
        case Family::Gaussian: return std::exp(-b * b * w * w / 2);
        case Family::Logistic: {
            const double z = kPi * b * w;
            if (z < 1e-8) return 1.0;
            return z > 700 ? 2 * z * std::exp(-z) : z / std::sinh(z);
        }
        case Family::Gumbel: {
            const double z = kPi * b * w;
            if (z < 1e-8) return 1.0;
            return z > 700 ? std::sqrt(2 * z) * std::exp(-z / 2) : std::sqrt(z / std::sinh(z));
        }
        case Family::Discrete: return 1.0;
        case Family::ParetoHalf:
            // |h~| grows like sqrt(|w|) here; only Re h~ <= 1 holds.
            throw UnsupportedFamilyError("char_fn_envelope: pareto has no bound on |h~|");
    }
    return 1.0;
}

}  // namespace ctrw
