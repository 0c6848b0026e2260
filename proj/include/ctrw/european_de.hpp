#pragma once

#include <complex>
#include <utility>

#include "ctrw/numerics.hpp"
#include "ctrw/riskneutral.hpp"

namespace ctrw {

enum class Style { European, American, Perpetual };
enum class Payoff { BinaryCall, VanillaCall, BinaryPut, VanillaPut, Portfolio };

struct Contract {
    Style style = Style::European;
    Payoff payoff = Payoff::VanillaCall;
    double K = 1.0;
    double L = 0.0;      // butterfly width, Portfolio only
    double T_bar = 0.0;  // time to expiry in years

    void validate() const;
    double log_strike() const;
};

// Market with two-sided exponential jumps: right tail rate rho, left tail rate gamma.
struct DEModel {
    double rho = 2.0;
    double gamma = 9.0;
    double r = 0.04;
    double lambda = 0.05;

    // lambda fixed by the martingale condition; requires 0 < rho - 1 < gamma and r > 0.
    static DEModel risk_neutral(double rho, double gamma, double r);
    // gamma = rho - 1 + 2r/sigma^2, the parameterization whose diffusive limit has volatility sigma.
    static DEModel from_sigma(double rho, double sigma, double r);
    static DEModel from_market(const MarketParams& mp);

    void validate() const;
    double epsilon() const { return gamma - rho + 1.0; }
    JumpDensity density() const { return JumpDensity::from_rates(rho, gamma); }
    MarketParams market() const;
};

enum class Method { LaplaceInversion, ClosedForm };

// Roots of the characteristic quadratic of the Laplace-space equation.
// Throws BranchError if Vieta's sum/product identities fail.
std::pair<cplx, cplx> beta_pm(const DEModel& m, cplx s);

// Laplace transforms in t_bar of the European binary and vanilla call.
cplx binary_call_laplace(const DEModel& m, double k, double x, cplx s);
cplx vanilla_call_laplace(const DEModel& m, double K, double x, cplx s);

LaplaceFn binary_call_transform(const DEModel& m, double k, double x);
LaplaceFn vanilla_call_transform(const DEModel& m, double K, double x);

double binary_call_price(const DEModel& m, const Contract& c, double x, Method method, const QuadSpec& spec = {});
double vanilla_call_price(const DEModel& m, const Contract& c, double x, Method method, const QuadSpec& spec = {});

// European put, call or portfolio price under the exponential model.
double european_price(const DEModel& m, const Contract& c, double x, Method method, const QuadSpec& spec = {});

enum class ParityKind { Binary, Vanilla };

// Binary: P = e^{-r t} - C. Vanilla: P = C + K e^{-r t} - e^x.
double put_price_from_parity(double call, ParityKind kind, double x, double K, double r, double t_bar);

struct LogReturnMoments {
    double m1 = 0.0;
    double m2 = 0.0;
};

LogReturnMoments log_return_moments(const DEModel& m, double dt);

// Vanilla call as rho -> 1: e^x (1 - e^{-r t}) + (e^x - K) e^{-r t} 1{x >= k}.
double no_trade_vanilla_call(double x, double K, double r, double t_bar);

// M^a_b(d; xi) = exp(-a b xi^2 / 2) N((a - b) xi / 2 + d / xi), in log form.
double log_m_kernel(double a, double b, double d, double xi);

}  // namespace ctrw
