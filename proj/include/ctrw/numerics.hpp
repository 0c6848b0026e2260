#pragma once

#include <complex>
#include <functional>
#include <limits>

namespace ctrw {

using cplx = std::complex<double>;

struct QuadSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-10;
    long max_evals = 20'000'000;
};

// Laplace transform f^(s), analytic for Re(s) > abscissa.
struct LaplaceFn {
    std::function<cplx(cplx)> handle;
    double abscissa = 0.0;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
};

// ---------------------------------------------------------------------------
// Laplace inversion
// ---------------------------------------------------------------------------

// Fixed-Talbot inversion with `nodes` contour points. The transform is shifted
// by its abscissa so the rightmost singularity sits at the origin.
double talbot(const LaplaceFn& f, double t, int nodes);

// Euler-summed Bromwich inversion (Abate-Whitt), used as an independent check.
double euler_inversion(const LaplaceFn& f, double t, int order = 18);

// f(t) via fixed Talbot over the node ladder below. Truncation error falls and
// roundoff grows with the node count, so the ladder entry whose value moved
// least from its predecessor is returned, with that move as the error
// estimate. An AccuracyError is thrown when it exceeds max(rel_tol*|f|, abs_tol).
double laplace_invert(const LaplaceFn& f, double t, const QuadSpec& spec = {});
Estimate laplace_invert_estimate(const LaplaceFn& f, double t);

inline constexpr int kTalbotLadder[] = {16, 20, 24, 28, 32, 36};

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

double normal_cdf(double z);
double log_normal_cdf(double z);
double normal_pdf(double z);

/// exp(-u) * I_1(u) for u >= 0; finite for all u.
double bessel_i1_scaled(double u);

/// log Gamma(z) (Lanczos, g = 7), determined up to a multiple of 2 pi i.
cplx log_gamma(cplx z);

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;

// Global adaptive Gauss-Kronrod (7/15) on [a, b].
Estimate integrate(const RealFn& g, double a, double b, const QuadSpec& spec = {});

struct ComplexEstimate {
    cplx value{};
    double error = 0.0;
    long evals = 0;
};

ComplexEstimate integrate_complex(const ComplexFn& g, double a, double b, const QuadSpec& spec = {},
                                  double max_panel_width = std::numeric_limits<double>::infinity());

// Where the mass of a semi-infinite integrand lives. Integration starts on
// [center - width, center + width] and grows outward until panels stop
// contributing.
struct SemiInfiniteHint {
    double center = 0.0;
    double width = 1.0;
};

// Integral of g over (0, inf). g must decay at least like exp(-c u^2) past the
// hinted window.
double integrate_semi_infinite(const RealFn& g, const QuadSpec& spec = {}, SemiInfiniteHint hint = {});
Estimate integrate_semi_infinite_estimate(const RealFn& g, const QuadSpec& spec, SemiInfiniteHint hint);

// Bound on the tail mass  integral over |w| > W of |g(w)| dw, as a function of W.
using TailMassBound = std::function<double(double)>;

struct RealLineOptions {
    // Panels never exceed this width; set it below the oscillation period of g.
    double max_panel_width = std::numeric_limits<double>::infinity();
    // The integral is known to be real: throw if its imaginary part exceeds 10 abs_tol.
    bool expect_real = false;
};

// Integral of g over the whole real line. The truncation point W is the
// smallest power of two with tail(W) <= abs_tol/2; the interior is integrated
// adaptively to abs_tol/2.
ComplexEstimate integrate_real_line(const ComplexFn& g, const TailMassBound& tail, const QuadSpec& spec,
                                    const RealLineOptions& opts = {});

// Power-law form: |g(w)| <= C |w|^-order for large |w|. When constant <= 0 the
// constant is estimated from samples of |g| and a TailBoundViolation is thrown
// if the sampled decay is slower than `order`.
ComplexEstimate integrate_real_line(const ComplexFn& g, double tail_order, const QuadSpec& spec,
                                    double tail_constant = 0.0, const RealLineOptions& opts = {});

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

// Brent's method on a sign-changing bracket [lo, hi].
double find_root(const RealFn& f, double lo, double hi, double x_tol = 1e-14, int max_iter = 200);

}  // namespace ctrw
