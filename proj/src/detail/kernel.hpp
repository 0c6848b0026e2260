#pragma once

#include "ctrw/european_de.hpp"

namespace ctrw::detail {

// Time-domain building block of the exponential-model closed forms:
//   int_0^inf 2 I_1(2u) e^{-lambda t - r t} e^{log_coef} M^a_b(d; xi(u)) du,
// with xi(u) = u sqrt(2 / (gamma rho lambda t)).
class BesselKernel {
public:
    BesselKernel(const DEModel& m, double t_bar);

    double log_integrand(double a, double b, double d, double log_coef, double u) const;
    double integral(double a, double b, double d, double log_coef, const QuadSpec& spec) const;

private:
    DEModel m_;
    double t_;
    double c_;      // lambda t
    double kappa_;  // xi / u
};

}  // namespace ctrw::detail
