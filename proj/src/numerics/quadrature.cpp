#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "ctrw/errors.hpp"
#include "ctrw/numerics.hpp"

namespace ctrw {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double magnitude(double v) { return std::abs(v); }
double magnitude(const cplx& v) { return std::abs(v); }
bool finite(double v) { return std::isfinite(v); }
bool finite(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

// One GK15 panel with the QUADPACK error heuristic.
template <class T, class F>
Segment<T> gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const T fc = f(c);
    T resk = fc * wgk[7];
    T resg = fc * wg[3];
    double resabs = magnitude(fc) * wgk[7];
    T fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        resk += (fv1[j] + fv2[j]) * wgk[j];
        resabs += (magnitude(fv1[j]) + magnitude(fv2[j])) * wgk[j];
        if (j % 2 == 1) resg += (fv1[j] + fv2[j]) * wg[j / 2];
    }
    const T mean = resk * 0.5;
    double resasc = magnitude(fc - mean) * wgk[7];
    for (int j = 0; j < 7; ++j) resasc += wgk[j] * (magnitude(fv1[j] - mean) + magnitude(fv2[j] - mean));
    const double ah = std::abs(h);
    double err = magnitude(resk - resg) * ah;
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0 && err != 0) err = resasc * std::min(1.0, std::pow(200 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50 * kEps)) err = std::max(50 * kEps * resabs, err);
    return {a, b, resk * h, err};
}

template <class T>
struct AdaptiveResult {
    T value{};
    double error = 0;
    long evals = 0;
};

// Global adaptive refinement over an initial partition given by `edges`.
template <class T, class F>
AdaptiveResult<T> adaptive(const F& f, const std::vector<double>& edges, const QuadSpec& spec, const char* who) {
    std::priority_queue<Segment<T>> heap;
    std::vector<Segment<T>> frozen;  // too narrow to split further
    T total{};
    double err = 0;
    long evals = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i + 1] > edges[i])) continue;
        auto s = gk15<T>(f, edges[i], edges[i + 1]);
        evals += 15;
        total += s.value;
        err += s.error;
        heap.push(s);
    }
    auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * magnitude(total)); };
    while (err > target() && !heap.empty()) {
        if (evals >= spec.max_evals) break;
        Segment<T> s = heap.top();
        heap.pop();
        const double mid = 0.5 * (s.a + s.b);
        if (!(mid > s.a && mid < s.b) || (s.b - s.a) < 1e3 * kEps * std::max(std::abs(s.a), std::abs(s.b))) {
            frozen.push_back(s);
            continue;
        }
        auto l = gk15<T>(f, s.a, mid);
        auto r = gk15<T>(f, mid, s.b);
        evals += 30;
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        heap.push(l);
        heap.push(r);
    }
    // Recompute sums to shed accumulated update roundoff.
    T sum{};
    double esum = 0;
    for (auto* v : {&frozen}) {
        for (const auto& s : *v) {
            sum += s.value;
            esum += s.error;
        }
    }
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    if (!finite(sum)) throw NoConvergenceError(std::string(who) + ": integrand produced a non-finite value",
                                               std::numeric_limits<double>::quiet_NaN(), esum);
    if (esum > std::max(spec.abs_tol, spec.rel_tol * magnitude(sum))) {
        throw NoConvergenceError(std::string(who) + ": tolerance not reached", magnitude(sum), esum);
    }
    return {sum, esum, evals};
}

// Split [a, b] into pieces no wider than max_width.
void append_uniform(std::vector<double>& edges, double a, double b, double max_width) {
    if (edges.empty()) edges.push_back(a);
    long n = 1;
    if (std::isfinite(max_width) && max_width > 0) n = std::max(1L, static_cast<long>(std::ceil((b - a) / max_width)));
    for (long i = 1; i <= n; ++i) edges.push_back(i == n ? b : a + (b - a) * static_cast<double>(i) / n);
}

}  // namespace

Estimate integrate(const RealFn& g, double a, double b, const QuadSpec& spec) {
    if (a == b) return {};
    const double sign = b > a ? 1.0 : -1.0;
    auto res = adaptive<double>(g, {std::min(a, b), std::max(a, b)}, spec, "integrate");
    return {sign * res.value, res.error, res.evals};
}

ComplexEstimate integrate_complex(const ComplexFn& g, double a, double b, const QuadSpec& spec,
                                  double max_panel_width) {
    if (a == b) return {};
    std::vector<double> edges;
    append_uniform(edges, std::min(a, b), std::max(a, b), max_panel_width);
    auto res = adaptive<cplx>(g, edges, spec, "integrate_complex");
    return {b > a ? res.value : -res.value, res.error, res.evals};
}

Estimate integrate_semi_infinite_estimate(const RealFn& g, const QuadSpec& spec, SemiInfiniteHint hint) {
    const double w = hint.width > 0 ? hint.width : 1.0;
    const double c = std::max(hint.center, 0.0);
    const double lo = std::max(0.0, c - w), hi = c + w;

    // Core window in a few pieces so a narrow peak is sampled.
    std::vector<double> edges;
    append_uniform(edges, lo, hi, (hi - lo) / 4);
    const double core = std::abs(adaptive<double>(g, edges, QuadSpec{1e-3, spec.abs_tol, spec.max_evals}, "semi_infinite core")
                                     .value);
    const double negligible = 1e-3 * std::max(spec.abs_tol, spec.rel_tol * core);

    // Walk outward panel by panel until two consecutive panels are negligible.
    std::vector<double> right{hi};
    {
        double step = w, x = hi;
        int quiet = 0;
        for (int n = 0; quiet < 2; ++n) {
            if (n > 4000) throw NoConvergenceError("integrate_semi_infinite: integrand does not decay", core, core);
            const double next = x + step;
            const auto s = gk15<double>(g, x, next);
            quiet = (std::abs(s.value) + s.error <= negligible) ? quiet + 1 : 0;
            right.push_back(next);
            x = next;
            if (n >= 8) step *= 2;
        }
    }
    std::vector<double> left{lo};
    {
        double step = w, x = lo;
        int quiet = 0;
        while (x > 0 && quiet < 2) {
            const double next = std::max(0.0, x - step);
            const auto s = gk15<double>(g, next, x);
            quiet = (std::abs(s.value) + s.error <= negligible) ? quiet + 1 : 0;
            left.push_back(next);
            x = next;
        }
    }
    std::vector<double> all(left.rbegin(), left.rend());
    all.pop_back();  // lo is repeated as edges' first point
    all.insert(all.end(), edges.begin(), edges.end());
    all.insert(all.end(), right.begin() + 1, right.end());
    auto res = adaptive<double>(g, all, spec, "integrate_semi_infinite");
    return {res.value, res.error, res.evals};
}

double integrate_semi_infinite(const RealFn& g, const QuadSpec& spec, SemiInfiniteHint hint) {
    return integrate_semi_infinite_estimate(g, spec, hint).value;
}

ComplexEstimate integrate_real_line(const ComplexFn& g, const TailMassBound& tail, const QuadSpec& spec,
                                    const RealLineOptions& opts) {
    double W = 1.0;
    while (!(tail(W) <= spec.abs_tol / 2)) {
        W *= 2;
        if (W > 0x1.0p60)
            throw TailBoundViolation("integrate_real_line: tail bound never drops below abs_tol/2",
                                     std::numeric_limits<double>::quiet_NaN(), tail(W));
    }
    const double tail_mass = tail(W);

    // Fold onto [0, W]; geometric panels capped at max_panel_width.
    std::vector<double> edges{0.0};
    double a = 0.0, b = std::min(1.0, W);
    while (true) {
        append_uniform(edges, a, b, opts.max_panel_width);
        if (b >= W) break;
        a = b;
        b = std::min(2 * b, W);
    }
    auto folded = [&](double w) { return g(w) + g(-w); };
    QuadSpec inner = spec;
    inner.abs_tol = spec.abs_tol / 2;
    auto res = adaptive<cplx>(folded, edges, inner, "integrate_real_line");
    if (opts.expect_real && std::abs(res.value.imag()) > 10 * spec.abs_tol)
        throw NoConvergenceError("integrate_real_line: imaginary residue above tolerance", res.value.real(),
                                 std::abs(res.value.imag()));
    return {res.value, res.error + tail_mass, res.evals};
}

ComplexEstimate integrate_real_line(const ComplexFn& g, double tail_order, const QuadSpec& spec, double tail_constant,
                                    const RealLineOptions& opts) {
    if (!(tail_order > 1)) throw ParameterError("integrate_real_line: tail_order must exceed 1");
    double C = tail_constant;
    // Sampled envelope |g(w)| |w|^p over octaves 2^4 .. 2^24; it must not keep growing.
    double sampled_max = 0, mid = 0, last = 0;
    for (int j = 4; j <= 24; ++j) {
        const double w = std::ldexp(1.0, j);
        const double m = std::max(std::abs(g(w)), std::abs(g(-w))) * std::pow(w, tail_order);
        sampled_max = std::max(sampled_max, m);
        if (j >= 8 && j <= 12) mid = std::max(mid, m);
        last = m;
    }
    if (last > 4 * mid && last > 0)
        throw TailBoundViolation("integrate_real_line: sampled decay is slower than the declared tail order",
                                 std::numeric_limits<double>::quiet_NaN(), last);
    if (C <= 0) C = 2 * sampled_max;
    else if (sampled_max > 1.01 * C)
        throw TailBoundViolation("integrate_real_line: |g| exceeds the declared tail constant",
                                 std::numeric_limits<double>::quiet_NaN(), sampled_max);
    const double p = tail_order;
    auto tail = [C, p](double W) { return 2 * C * std::pow(W, 1 - p) / (p - 1); };
    return integrate_real_line(g, tail, spec, opts);
}

double find_root(const RealFn& f, double lo, double hi, double x_tol, int max_iter) {
    double a = lo, b = hi, fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0)) throw DomainError("find_root: root not bracketed");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2 * kEps * std::abs(b) + 0.5 * x_tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2 * m * s;
                q = 1 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2 * m * q * (q - r) - (b - a) * (r - 1));
                q = (q - 1) * (r - 1) * (s - 1);
            }
            if (p > 0) q = -q;
            else p = -p;
            if (2 * p < std::min(3 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    throw NoConvergenceError("find_root: iteration limit", b, std::abs(c - b));
}

}  // namespace ctrw
