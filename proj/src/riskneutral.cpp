#include "ctrw/riskneutral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ctrw/errors.hpp"

namespace ctrw {

namespace {

constexpr double kPi = std::numbers::pi;

// x - sin(x), accurate for small x.
double x_minus_sin(double x) {
    if (std::abs(x) > 0.5) return x - std::sin(x);
    double term = x * x * x / 6, sum = 0;
    for (int n = 1; n < 12; ++n) {
        sum += term;
        term *= -x * x / ((2 * n + 2) * (2 * n + 3));
    }
    return sum;
}

// (e^z - 1)/z - 1, accurate for small z.
double expm1_over_minus_one(double z) {
    if (std::abs(z) > 0.1) return std::expm1(z) / z - 1;
    double term = z / 2, sum = 0;
    for (int n = 2; n < 14; ++n) {
        sum += term;
        term *= z / (n + 1);
    }
    return sum;
}

void require_finite_exp_moment(const JumpDensity& d) {
    d.validate();
    switch (d.family) {
        case Family::Exponential:
            if (!(d.a < 1))
                throw DivergentMomentError(describe(d) + ": E[e^jump] diverges unless a < 1 (rho > 1)");
            break;
        case Family::Logistic:
        case Family::Gumbel:
        case Family::ParetoHalf:
            if (!(d.b < 1)) throw DivergentMomentError(describe(d) + ": E[e^jump] diverges unless b < 1");
            break;
        default: break;
    }
}

// h~(-i) - 1 evaluated without cancellation; lambda depends on it directly.
double exp_moment_excess(const JumpDensity& d) {
    require_finite_exp_moment(d);
    const double a = d.a, b = d.b;
    switch (d.family) {
        case Family::Exponential: return (a - b + a * b) / ((1 - a) * (1 + b));
        case Family::Discrete: return a * std::expm1(b) + (1 - a) * std::expm1(-b);
        case Family::Constant: {
            const double z = b - a;
            const double q = std::expm1(z) / z;
            return std::expm1(a) * q + expm1_over_minus_one(z);
        }
        case Family::Gaussian: return std::expm1(a + b * b / 2);
        case Family::Logistic: {
            const double x = kPi * b;
            // log(x / sin x) = log1p((x - sin x) / sin x)
            return std::expm1(a + std::log1p(x_minus_sin(x) / std::sin(x)));
        }
        case Family::Gumbel: return std::expm1(a + std::lgamma(1 - b));
        case Family::ParetoHalf: {
            const double up = -b / (std::sqrt(1 - b) + 1);  // sqrt(1-b) - 1
            const double dn = b / (std::sqrt(1 + b) + 1);   // sqrt(1+b) - 1
            return -2 * std::sqrt(kPi) * (a * up + (1 - a) * dn);
        }
    }
    throw UnsupportedFamilyError("exp_moment: unknown family");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

double exp_moment(const JumpDensity& d) { return 1.0 + exp_moment_excess(d); }

double risk_neutral_intensity(double r, const JumpDensity& d) {
    if (!std::isfinite(r) || r < 0) throw ParameterError("rate must be finite and non-negative");
    const double excess = exp_moment_excess(d);
    if (r == 0) {
        if (std::abs(excess) <= 4 * std::numeric_limits<double>::epsilon())
            throw ArbitrarySojournError("r = 0 with E[e^jump] = 1: any sojourn law is a martingale; not priced");
        throw InadmissibleDensityError("r = 0 forces lambda = 0 unless E[e^jump] = 1");
    }
    if (!(excess > 0))
        throw InadmissibleDensityError(describe(d) + ": h~(-i) = " + fmt(1 + excess) +
                                       " <= 1 gives a non-positive intensity");
    return r / excess;
}

MarketParams make_market(double r, const JumpDensity& d) {
    MarketParams mp;
    mp.r = r;
    mp.density = d;
    mp.lambda = risk_neutral_intensity(r, d);
    mp.risk_neutral = true;
    return mp;
}

bool Diagnostics::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string Diagnostics::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return c.name + " violated" + (c.detail.empty() ? "" : ": " + c.detail);
    return {};
}

Diagnostics validate(const MarketParams& p) {
    Diagnostics diag;
    auto add = [&](std::string name, bool pass, std::string detail = {}) {
        diag.checks.push_back({std::move(name), pass, std::move(detail)});
    };

    add("r>=0", std::isfinite(p.r) && p.r >= 0, "r=" + fmt(p.r));

    bool params_ok = true;
    try {
        p.density.validate();
    } catch (const Error& e) {
        params_ok = false;
        add("density parameters", false, e.what());
    }
    if (params_ok) add("density parameters", true, describe(p.density));

    if (params_ok && p.density.family == Family::Exponential) {
        const double rho = 1 / p.density.a, gamma = 1 / p.density.b;
        add("0<ρ−1<γ", rho - 1 > 0 && rho - 1 < gamma, "rho=" + fmt(rho) + ", gamma=" + fmt(gamma));
    }

    double excess = std::numeric_limits<double>::quiet_NaN();
    if (params_ok) {
        try {
            excess = exp_moment_excess(p.density);
            add("h~(-i)<inf", true, "h~(-i)=" + fmt(1 + excess));
        } catch (const Error& e) {
            add("h~(-i)<inf", false, e.what());
        }
    }

    if (std::isfinite(excess)) {
        if (p.r == 0 && std::abs(excess) <= 4 * std::numeric_limits<double>::epsilon())
            add("not arbitrary-sojourn", false, "r = 0 and h~(-i) = 1");
        else if (p.r > 0)
            add("1<h~(-i)", excess > 0, "h~(-i)=" + fmt(1 + excess));
    }

    add("λ>0", std::isfinite(p.lambda) && p.lambda > 0, "lambda=" + fmt(p.lambda));

    if (p.risk_neutral && std::isfinite(excess) && excess > 0 && p.r > 0) {
        const double want = p.r / excess;
        add("λ=r/(h~(-i)−1)", std::abs(p.lambda - want) <= 1e-12 * want,
            "lambda=" + fmt(p.lambda) + ", risk-neutral " + fmt(want));
    } else if (!p.risk_neutral) {
        add("λ=r/(h~(-i)−1)", true, "lambda overridden; prices are not risk-neutral");
    }
    return diag;
}

}  // namespace ctrw
