#pragma once

#include <complex>
#include <functional>

#include "ctrw/numerics.hpp"
#include "ctrw/riskneutral.hpp"

namespace ctrw::fourier {

enum class PayoffKind { Butterfly, Custom };

// Butterfly: pays e^x - K on [ln K, ln(K + L/2)] and K + L - e^x on
// [ln(K + L/2), ln(K + L)], i.e. calls at K and K + L long, two at K + L/2 short.
// Custom: caller supplies the transform and a power-law bound
// |transform(w)| <= tail_constant |w|^-tail_order.
struct Payoff {
    PayoffKind kind = PayoffKind::Butterfly;
    double K = 100.0;
    double L = 10.0;

    std::function<cplx(double)> transform;
    std::function<double(double)> value;  // optional, used at t_bar = 0
    double tail_order = 2.0;
    double tail_constant = 0.0;
    double log_scale = 1.0;  // spread of the payoff's features in log-price

    static Payoff butterfly(double K, double L);
    void validate() const;
};

// Phi~(w) = int e^{iwx} Phi(x) dx. The removable singularities at w = 0 and
// w = i of the butterfly's closed form are handled by series.
cplx payoff_transform(const Payoff& p, double omega);
// Payoff as a function of log-price.
double payoff_value(const Payoff& p, double x);

// C(x, t) = (1/2pi) int Phi~(w) exp(-(r + lambda (1 - h~(-w))) t - iwx) dw.
double price_fourier(const Payoff& p, const MarketParams& mp, double x, double t_bar, const QuadSpec& spec = {});

struct FourierResult {
    double price = 0.0;
    double error_bound = 0.0;
    double imag_residue = 0.0;
    double cutoff = 0.0;  // truncation frequency, 0 for the lattice route
};

FourierResult price_fourier_detail(const Payoff& p, const MarketParams& mp, double x, double t_bar,
                                   const QuadSpec& spec = {});

}  // namespace ctrw::fourier
