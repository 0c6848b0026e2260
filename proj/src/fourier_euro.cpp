#include "ctrw/fourier_euro.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ctrw/errors.hpp"

namespace ctrw::fourier {

namespace {

constexpr double kPi = std::numbers::pi;

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

struct Strikes {
    double k1, k2, k3;
};

Strikes strikes(const Payoff& p) { return {std::log(p.K), std::log(p.K + p.L / 2), std::log(p.K + p.L)}; }

// sup |Phi~(w)| w^2 for the butterfly.
double butterfly_tail_constant(const Payoff& p) { return 4 * (p.K + p.L / 2); }

// e^{-rt} sum_n Pois(n; lambda t) sum_u Binom(u; n, a) Phi(x + (2u - n) b), truncated
// once the remaining Poisson mass times sup Phi is below tolerance.
FourierResult discrete_lattice(const Payoff& p, const MarketParams& mp, double x, double t, const QuadSpec& spec) {
    const double a = mp.density.a, b = mp.density.b;
    const double mean = mp.lambda * t;
    double sup = 0;
    if (p.kind == PayoffKind::Butterfly) sup = p.L / 2;
    else throw UnsupportedFamilyError("the discrete density prices butterfly payoffs only");

    double total = 0, mass = 0;
    const double la = a > 0 ? std::log(a) : -INFINITY, lb = a < 1 ? std::log1p(-a) : -INFINITY;
    for (long n = 0;; ++n) {
        const double lp = -mean + (n > 0 ? n * std::log(mean) : 0.0) - std::lgamma(n + 1.0);
        const double pn = std::exp(lp);
        mass += pn;
        double inner = 0;
        for (long u = 0; u <= n; ++u) {
            double lw = std::lgamma(n + 1.0) - std::lgamma(u + 1.0) - std::lgamma(n - u + 1.0);
            lw += (u > 0 ? u * la : 0.0) + (n - u > 0 ? (n - u) * lb : 0.0);
            if (lw < -60) continue;
            inner += std::exp(lw) * payoff_value(p, x + (2.0 * u - n) * b);
        }
        total += pn * inner;
        const double remaining = std::max(0.0, 1.0 - mass);
        if (n > mean && remaining * sup <= spec.abs_tol / 2) {
            const double disc = std::exp(-mp.r * t);
            return {disc * total, disc * remaining * sup, 0.0, 0.0};
        }
        if (n > 1'000'000) throw NoConvergenceError("discrete lattice sum did not converge", total, remaining * sup);
    }
}

}  // namespace

Payoff Payoff::butterfly(double K, double L) {
    Payoff p;
    p.kind = PayoffKind::Butterfly;
    p.K = K;
    p.L = L;
    p.validate();
    return p;
}

void Payoff::validate() const {
    if (kind == PayoffKind::Butterfly) {
        if (!(K > 0) || !(L > 0) || !std::isfinite(K) || !std::isfinite(L))
            throw ParameterError("butterfly needs K > 0 and L > 0");
    } else {
        if (!transform) throw ParameterError("custom payoff needs a transform");
        if (!(tail_order > 1) || !(tail_constant > 0))
            throw ParameterError("custom payoff needs tail_order > 1 and tail_constant > 0");
    }
}

cplx payoff_transform(const Payoff& p, double w) {
    if (p.kind == PayoffKind::Custom) return p.transform(w);
    const auto [k1, k2, k3] = strikes(p);
    const double d1 = k1 - k2, d3 = k3 - k2;
    const double e1 = std::exp(d1), e3 = std::exp(d3);
    const cplx z(1.0, w);
    const cplx iw(0.0, w);
    // -e^{z k2} g(z) / (z (z - 1)) with g(z) = 2 - e^{z d1} - e^{z d3} and g(1) = 0.
    return std::exp(z * k2) * (e1 * d1 * expm1_over(iw * d1) + e3 * d3 * expm1_over(iw * d3)) / z;
}

double payoff_value(const Payoff& p, double x) {
    if (p.kind == PayoffKind::Custom) {
        if (!p.value) throw ParameterError("custom payoff has no value function");
        return p.value(x);
    }
    const auto [k1, k2, k3] = strikes(p);
    if (x >= k1 && x <= k2) return std::exp(x) - p.K;
    if (x > k2 && x <= k3) return p.K + p.L - std::exp(x);
    return 0.0;
}

FourierResult price_fourier_detail(const Payoff& p, const MarketParams& mp, double x, double t, const QuadSpec& spec) {
    p.validate();
    mp.density.validate();
    if (!(t >= 0) || !std::isfinite(t)) throw ParameterError("t_bar must be finite and non-negative");
    if (!(mp.lambda > 0) || !std::isfinite(mp.lambda)) throw InadmissibleDensityError("intensity must be positive");
    if (!std::isfinite(x)) throw ParameterError("log-price must be finite");

    if (t == 0 && (p.kind == PayoffKind::Butterfly || p.value)) return {payoff_value(p, x), 0.0, 0.0, 0.0};

    const JumpDensity& d = mp.density;
    if (d.family == Family::Discrete && p.kind == PayoffKind::Butterfly) return discrete_lattice(p, mp, x, t, spec);

    const double lt = mp.lambda * t;
    const double rt = mp.r * t;
    const bool butterfly = p.kind == PayoffKind::Butterfly;
    // For densities whose h~ decays, the jump-free part e^{-(r + lambda) t} Phi(x) is split off
    // so the remaining integrand inherits the decay of h~.
    const bool subtract = butterfly && d.family != Family::Discrete && d.family != Family::ParetoHalf;
    const double h_inf = std::exp(-rt - lt);

    auto g = [&](double w) -> cplx {
        const cplx H = std::exp(-rt - lt * (1.0 - char_fn(d, cplx(-w, 0.0))));
        const cplx phase = std::exp(cplx(0.0, -w * x));
        return payoff_transform(p, w) * phase * (subtract ? H - h_inf : H);
    };

    const double cphi = butterfly ? butterfly_tail_constant(p) : p.tail_constant;
    const double order = butterfly ? 2.0 : p.tail_order;
    TailMassBound tail;
    if (subtract) {
        tail = [&, cphi](double W) {
            const double D = char_fn_envelope(d, W);
            const double E = std::exp(-rt - lt) * lt * D * std::exp(lt * D);
            return 2 * cphi * E / W;
        };
    } else if (d.family == Family::ParetoHalf) {
        tail = [&, cphi, order](double W) {
            const double bw = d.b * W;
            const double R = std::sqrt((std::sqrt(1 + bw * bw) + 1) / 2);
            const double D = std::exp(-2 * std::sqrt(kPi) * lt * (R - 1));
            return 2 * cphi * std::exp(-rt) * D * std::pow(W, 1 - order) / (order - 1);
        };
    } else {
        tail = [&, cphi, order](double W) { return 2 * cphi * std::exp(-rt) * std::pow(W, 1 - order) / (order - 1); };
    }

    // Panels shorter than half the shortest oscillation period of the integrand.
    double spread;
    if (butterfly) {
        const auto [k1, k2, k3] = strikes(p);
        spread = std::max({std::abs(x - k1), std::abs(x - k2), std::abs(x - k3)});
    } else {
        spread = std::abs(x) + p.log_scale;
    }
    double drift = 0;
    try {
        const Moments m = mean_var(d);
        drift = lt * (std::abs(m.mu1) + 2 * std::sqrt(std::max(m.mu2, 0.0)));
    } catch (const Error&) {
        drift = lt;
    }
    RealLineOptions opts;
    opts.max_panel_width = kPi / std::max(spread + drift, 1e-3);

    QuadSpec raw = spec;
    raw.abs_tol = 2 * kPi * spec.abs_tol;
    const ComplexEstimate est = integrate_real_line(g, tail, raw, opts);

    FourierResult res;
    res.price = est.value.real() / (2 * kPi) + (subtract ? h_inf * payoff_value(p, x) : 0.0);
    res.error_bound = est.error / (2 * kPi);
    res.imag_residue = est.value.imag() / (2 * kPi);
    double W = 1.0;
    while (!(tail(W) <= raw.abs_tol / 2)) W *= 2;
    res.cutoff = W;
    if (std::abs(res.imag_residue) > 10 * spec.abs_tol)
        throw NoConvergenceError("price_fourier: imaginary residue above tolerance", res.price,
                                 std::abs(res.imag_residue));
    return res;
}

double price_fourier(const Payoff& p, const MarketParams& mp, double x, double t_bar, const QuadSpec& spec) {
    return price_fourier_detail(p, mp, x, t_bar, spec).price;
}

}  // namespace ctrw::fourier
