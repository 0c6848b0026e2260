#include "ctrw/european_de.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ctrw/errors.hpp"
#include "detail/kernel.hpp"

namespace ctrw {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_positive_time(double t, Method method) {
    if (method == Method::LaplaceInversion && !(t > 0))
        throw ParameterError("Laplace inversion needs t_bar > 0");
    if (!(t >= 0) || !std::isfinite(t)) throw ParameterError("t_bar must be finite and non-negative");
}

}  // namespace

void Contract::validate() const {
    if (!(K > 0) || !std::isfinite(K)) throw ParameterError("strike K must be positive");
    if (payoff == Payoff::Portfolio && !(L > 0)) throw ParameterError("butterfly width L must be positive");
    if (style != Style::Perpetual && (!(T_bar >= 0) || !std::isfinite(T_bar)))
        throw ParameterError("maturity t_bar must be finite and non-negative");
}

double Contract::log_strike() const { return std::log(K); }

DEModel DEModel::risk_neutral(double rho, double gamma, double r) {
    DEModel m{rho, gamma, r, 0.0};
    if (!(rho - 1 > 0 && rho - 1 < gamma))
        throw ParameterError("0<ρ−1<γ violated (rho=" + fmt(rho) + ", gamma=" + fmt(gamma) + ")");
    if (!(r > 0)) throw ParameterError("risk-neutral intensity needs r > 0");
    m.lambda = r * (rho - 1) * (gamma + 1) / (gamma - rho + 1);
    m.validate();
    return m;
}

DEModel DEModel::from_sigma(double rho, double sigma, double r) {
    if (!(sigma > 0)) throw ParameterError("sigma must be positive");
    return risk_neutral(rho, rho - 1 + 2 * r / (sigma * sigma), r);
}

DEModel DEModel::from_market(const MarketParams& mp) {
    if (mp.density.family != Family::Exponential)
        throw UnsupportedFamilyError("exact pricing needs the two-sided exponential density, got " +
                                     describe(mp.density));
    DEModel m{1 / mp.density.a, 1 / mp.density.b, mp.r, mp.lambda};
    m.validate();
    return m;
}

void DEModel::validate() const {
    if (!std::isfinite(rho) || !std::isfinite(gamma) || !(rho - 1 > 0 && rho - 1 < gamma))
        throw ParameterError("0<ρ−1<γ violated (rho=" + fmt(rho) + ", gamma=" + fmt(gamma) + ")");
    if (!(r >= 0) || !std::isfinite(r)) throw ParameterError("rate r must be finite and non-negative");
    if (!(lambda > 0) || !std::isfinite(lambda)) throw ParameterError("intensity lambda must be positive");
}

MarketParams DEModel::market() const {
    MarketParams mp;
    mp.r = r;
    mp.density = density();
    mp.lambda = lambda;
    mp.risk_neutral = r > 0 && std::abs(lambda - r * (rho - 1) * (gamma + 1) / (gamma - rho + 1)) <= 1e-12 * lambda;
    return mp;
}

std::pair<cplx, cplx> beta_pm(const DEModel& m, cplx s) {
    const double rho = m.rho, gamma = m.gamma;
    const cplx q = m.lambda + m.r + s;
    const cplx root = std::sqrt((gamma + rho) * (gamma + rho) - 4.0 * m.lambda * gamma * rho / q);
    const cplx bp = -(gamma - rho) / 2 + root / 2.0;
    const cplx bm = -(gamma - rho) / 2 - root / 2.0;

    const double scale = (gamma + rho) * (gamma + rho);
    const cplx sum_err = bp + bm + (gamma - rho);
    const cplx prod_err = bp * bm + gamma * rho * (m.r + s) / q;
    if (std::abs(sum_err) > 1e-12 * (gamma + rho) || std::abs(prod_err) > 1e-12 * scale * std::max(1.0, std::abs(s / q))) {
        std::ostringstream os;
        os << "beta_pm: Vieta identities fail at s=" << s;
        throw BranchError(os.str());
    }
    return {bp, bm};
}

cplx binary_call_laplace(const DEModel& m, double k, double x, cplx s) {
    const auto [bp, bm] = beta_pm(m, s);
    const cplx q = m.lambda + m.r + s;
    const cplx pref = m.lambda / (q * (m.r + s)) / (bp - bm);
    if (x < k) return -bm * pref * std::exp(bp * (x - k));
    return -bp * pref * std::exp(bm * (x - k)) + 1.0 / (m.r + s);
}

cplx vanilla_call_laplace(const DEModel& m, double K, double x, cplx s) {
    const double k = std::log(K);
    const auto [bp, bm] = beta_pm(m, s);
    const cplx q = m.lambda + m.r + s;
    const double lr = m.lambda + m.r;
    auto amp = [&](cplx b) { return (m.lambda * b / (m.r + s) + lr * (1.0 - b) / s) / q * K / (bp - bm); };
    if (x < k) return amp(bm) * std::exp(bp * (x - k));
    return amp(bp) * std::exp(bm * (x - k)) + std::exp(x) / s - K / (m.r + s);
}

LaplaceFn binary_call_transform(const DEModel& m, double k, double x) {
    // Rightmost singularity is the discount pole at s = -r.
    return {[m, k, x](cplx s) { return binary_call_laplace(m, k, x, s); }, -m.r};
}

LaplaceFn vanilla_call_transform(const DEModel& m, double K, double x) {
    return {[m, K, x](cplx s) { return vanilla_call_laplace(m, K, x, s); }, 0.0};
}

double binary_call_price(const DEModel& m, const Contract& c, double x, Method method, const QuadSpec& spec) {
    m.validate();
    c.validate();
    const double t = c.T_bar, k = c.log_strike();
    require_positive_time(t, method);
    if (method == Method::LaplaceInversion) return laplace_invert(binary_call_transform(m, k, x), t, spec);

    const double disc = std::exp(-(m.lambda + m.r) * t);
    const double step = x >= k ? disc : 0.0;
    if (t == 0) return x >= k ? 1.0 : 0.0;
    const detail::BesselKernel kern(m, t);
    return step + kern.integral(m.gamma, m.rho, x - k, 0.0, spec);
}

double vanilla_call_price(const DEModel& m, const Contract& c, double x, Method method, const QuadSpec& spec) {
    m.validate();
    c.validate();
    const double t = c.T_bar, K = c.K, k = c.log_strike();
    require_positive_time(t, method);
    if (method == Method::LaplaceInversion) return laplace_invert(vanilla_call_transform(m, K, x), t, spec);

    if (t == 0) return x >= k ? std::exp(x) - K : 0.0;
    const double disc = std::exp(-(m.lambda + m.r) * t);
    const double step = x >= k ? (std::exp(x) - K) * disc : 0.0;
    const detail::BesselKernel kern(m, t);
    // Each term gets its own absolute budget scaled to its prefactor.
    QuadSpec sub = spec;
    sub.abs_tol = spec.abs_tol / 4;
    const double up = kern.integral(m.gamma + 1, m.rho - 1, x - k, x, sub);
    const double down = kern.integral(m.gamma, m.rho, x - k, std::log(K), sub);
    return step + up - down;
}

double european_price(const DEModel& m, const Contract& c, double x, Method method, const QuadSpec& spec) {
    c.validate();
    if (c.style != Style::European) throw ParameterError("european_price handles European contracts only");
    const double t = c.T_bar;
    switch (c.payoff) {
        case Payoff::BinaryCall: return binary_call_price(m, c, x, method, spec);
        case Payoff::VanillaCall: return vanilla_call_price(m, c, x, method, spec);
        case Payoff::BinaryPut:
            return put_price_from_parity(binary_call_price(m, c, x, method, spec), ParityKind::Binary, x, c.K, m.r, t);
        case Payoff::VanillaPut:
            return put_price_from_parity(vanilla_call_price(m, c, x, method, spec), ParityKind::Vanilla, x, c.K, m.r,
                                         t);
        case Payoff::Portfolio: {
            Contract leg = c;
            leg.payoff = Payoff::VanillaCall;
            auto call = [&](double K) {
                leg.K = K;
                return vanilla_call_price(m, leg, x, method, spec);
            };
            // (e^x - K) on [K, K + L/2], (K + L - e^x) on [K + L/2, K + L], zero elsewhere.
            return call(c.K) - 2 * call(c.K + c.L / 2) + call(c.K + c.L);
        }
    }
    throw ParameterError("unknown payoff");
}

double put_price_from_parity(double call, ParityKind kind, double x, double K, double r, double t_bar) {
    const double disc = std::exp(-r * t_bar);
    if (kind == ParityKind::Binary) return disc - call;
    return call + K * disc - std::exp(x);
}

LogReturnMoments log_return_moments(const DEModel& m, double dt) {
    if (!(dt >= 0)) throw ParameterError("dt must be non-negative");
    const double g = m.gamma, p = m.rho;
    return {m.lambda * dt * (g - p) / (g * p), 2 * m.lambda * dt * (g * g - g * p + p * p) / (g * g * p * p)};
}

double no_trade_vanilla_call(double x, double K, double r, double t_bar) {
    const double disc = std::exp(-r * t_bar);
    return std::exp(x) * (1 - disc) + (x >= std::log(K) ? (std::exp(x) - K) * disc : 0.0);
}

double log_m_kernel(double a, double b, double d, double xi) {
    return -a * b * xi * xi / 2 + log_normal_cdf((a - b) * xi / 2 + d / xi);
}

}  // namespace ctrw
