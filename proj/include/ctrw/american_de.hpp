#pragma once

#include "ctrw/european_de.hpp"

namespace ctrw {

// Early-exercise thresholds in currency units: Z = e^z.
struct ExerciseBoundary {
    Payoff kind = Payoff::VanillaPut;
    double z0 = 0.0;      // log boundary as t_bar -> 0
    double z_star = 0.0;  // log boundary of the perpetual option
};

// Laplace transform in t_bar of the American binary put (pays 1 once x <= k).
cplx binary_put_laplace(const DEModel& m, double k, double x, cplx s);
LaplaceFn binary_put_transform(const DEModel& m, double k, double x);

double binary_put_price(const DEModel& m, double k, double x, double t_bar, Method method, const QuadSpec& spec = {});

double perpetual_binary_put(const DEModel& m, double k, double x);

// Exercise threshold of the American vanilla put just before expiry.
double vanilla_Z0(const DEModel& m, double K);
// Same threshold from a bracketed root of its defining integral equation.
double vanilla_Z0_numeric(const DEModel& m, double K);

struct PerpetualPut {
    double price = 0.0;
    double z_star = 0.0;  // log-price exercise threshold
};

PerpetualPut perpetual_vanilla_put(const DEModel& m, double K, double x);
double perpetual_vanilla_Z_star(const DEModel& m, double K);
// Threshold from the smooth-pasting condition of the perpetual renewal
// equation, with the left-region integral done by quadrature.
double perpetual_vanilla_Z_star_numeric(const DEModel& m, double K);

ExerciseBoundary exercise_boundary(const DEModel& m, double K, Payoff kind);

}  // namespace ctrw
