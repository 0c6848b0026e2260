#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>

#include "ctrw/random.hpp"

namespace ctrw {

enum class Family { Exponential, Discrete, Constant, Gaussian, Logistic, Gumbel, ParetoHalf };

inline constexpr std::array<Family, 7> kAllFamilies = {Family::Exponential, Family::Discrete, Family::Constant,
                                                       Family::Gaussian,    Family::Logistic, Family::Gumbel,
                                                       Family::ParetoHalf};

// CLI spelling: exp, discrete, constant, gaussian, logistic, gumbel, pareto.
std::string_view family_name(Family f);
Family parse_family(std::string_view name);

// Jump-size density h(x) of the log-price. (a, b) mean different things per family:
//   Exponential  h = e^{-x/a}/(a+b) for x>0, e^{x/b}/(a+b) for x<0
//   Discrete     mass a at +b, 1-a at -b
//   Constant     uniform on [a, b]
//   Gaussian     mean a, standard deviation b
//   Logistic     location a, scale b
//   Gumbel       location a, scale b (right-skewed, max-type)
//   ParetoHalf   tempered power law with index 1/2: weight a on the right, cutoff b
struct JumpDensity {
    Family family = Family::Gaussian;
    double a = 0.0;
    double b = 1.0;

    // Throws ParameterError if (a, b) violate the family's constraints.
    static JumpDensity make(Family f, double a, double b);
    void validate() const;

    // Two-sided exponential with right decay rate rho and left decay rate gamma.
    static JumpDensity from_rates(double rho, double gamma);
    double rho() const;    // 1/a, Exponential only
    double gamma() const;  // 1/b, Exponential only

    bool integrable() const { return family != Family::ParetoHalf; }
};

struct Moments {
    double mu1 = 0.0;
    double mu2 = 0.0;
};

// h~(w) = integral of e^{iwx} h(x) dx. Complex w is accepted where the closed
// form is analytic; a DomainError is thrown at or beyond a pole or branch point.
std::complex<double> char_fn(const JumpDensity& d, std::complex<double> omega);

Moments mean_var(const JumpDensity& d);

// The unique member of `family` with the given mean and variance.
JumpDensity fit_from_moments(Family family, const Moments& m);

double pdf(const JumpDensity& d, double x);

// One jump drawn from h. ParetoHalf has no sampler (UnsupportedFamilyError).
double sample(const JumpDensity& d, RandomStream& rng);

// Non-increasing bound D(w) >= |h~(v)| for all real |v| >= w >= 0; 1 for Discrete.
// ParetoHalf throws UnsupportedFamilyError: its regularized h~ is unbounded in modulus.
double char_fn_envelope(const JumpDensity& d, double omega);

std::string describe(const JumpDensity& d);

}  // namespace ctrw
