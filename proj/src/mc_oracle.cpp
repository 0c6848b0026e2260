#include "ctrw/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "ctrw/errors.hpp"

namespace ctrw {

namespace {

// Paths are accumulated in fixed blocks; blocks are merged in index order so
// the estimate is identical for any thread count.
constexpr long kBlock = 4096;

struct Moments2 {
    double n = 0, mean = 0, m2 = 0;

    void add(double v) {
        n += 1;
        const double d = v - mean;
        mean += d / n;
        m2 += d * (v - mean);
    }
    void merge(const Moments2& o) {
        if (o.n == 0) return;
        const double total = n + o.n;
        const double d = o.mean - mean;
        mean += d * o.n / total;
        m2 += o.m2 + d * d * n * o.n / total;
        n = total;
    }
};

void require_samplable(const MarketParams& mp) {
    mp.density.validate();
    if (!mp.density.integrable()) throw UnsupportedFamilyError("pareto has no sampler; use the Fourier pricer");
    if (!(mp.lambda >= 0) || !std::isfinite(mp.lambda)) throw ParameterError("intensity must be finite");
}

bool symmetric(const JumpDensity& d) {
    switch (d.family) {
        case Family::Gaussian:
        case Family::Logistic:
        case Family::Constant: return true;
        case Family::Discrete: return d.a == 0.5;
        case Family::Exponential: return d.a == d.b;
        default: return false;
    }
}

void check_config(const MCConfig& cfg, const MarketParams& mp) {
    if (cfg.paths <= 0) throw ParameterError("paths must be positive");
    if (cfg.antithetic) {
        if (!symmetric(mp.density))
            throw ParameterError("antithetic sampling needs a density symmetric about its mean");
        if (cfg.paths % 2) throw ParameterError("antithetic sampling needs an even path count");
    }
}

long poisson(double mean, RandomStream& rng) {
    if (mean <= 0) return 0;
    std::poisson_distribution<long> dist(mean);
    return dist(rng);
}

// X(T) - x0 for one path; `reflect` mirrors every jump about the density's mean.
template <class Visit>
void simulate_pair(const MarketParams& mp, double T, RandomStream& rng, bool with_twin, Visit visit) {
    const long n = poisson(mp.lambda * T, rng);
    double sum = 0, twin = 0;
    const double center = with_twin ? 2 * mean_var(mp.density).mu1 : 0.0;
    for (long i = 0; i < n; ++i) {
        const double j = sample(mp.density, rng);
        sum += j;
        twin += center - j;
    }
    visit(sum, twin);
}

// Runs `path(index, rng)` for every path (or pair) and returns merged statistics.
template <class PathFn>
MCEstimate run(const MCConfig& cfg, long units, PathFn path) {
    const long blocks = (units + kBlock - 1) / kBlock;
    std::vector<Moments2> acc(static_cast<std::size_t>(blocks));
    unsigned nt = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = static_cast<unsigned>(std::min<long>(nt, blocks));
    auto work = [&](unsigned tid) {
        for (long b = tid; b < blocks; b += nt) {
            Moments2 m;
            const long end = std::min(units, (b + 1) * kBlock);
            for (long i = b * kBlock; i < end; ++i) {
                RandomStream rng(cfg.seed, static_cast<std::uint64_t>(i));
                m.add(path(rng));
            }
            acc[static_cast<std::size_t>(b)] = m;
        }
    };
    if (nt <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    Moments2 total;
    for (const auto& m : acc) total.merge(m);
    MCEstimate e;
    e.mean = total.mean;
    e.std_error = total.n > 1 ? std::sqrt(total.m2 / (total.n - 1) / total.n) : 0.0;
    e.paths = cfg.paths;
    e.seed = cfg.seed;
    return e;
}

}  // namespace

double simulate_terminal(const MarketParams& mp, double x0, double T, RandomStream& rng) {
    require_samplable(mp);
    if (!(T >= 0)) throw ParameterError("horizon must be non-negative");
    double x = x0;
    simulate_pair(mp, T, rng, false, [&](double s, double) { x += s; });
    return x;
}

MCEstimate price_european_mc(const MarketParams& mp, const std::function<double(double)>& payoff, double x0, double T,
                             const MCConfig& cfg) {
    require_samplable(mp);
    check_config(cfg, mp);
    if (!(T >= 0)) throw ParameterError("horizon must be non-negative");
    const double disc = std::exp(-mp.r * T);
    if (cfg.antithetic) {
        return run(cfg, cfg.paths / 2, [&](RandomStream& rng) {
            double v = 0;
            simulate_pair(mp, T, rng, true,
                          [&](double s, double tw) { v = 0.5 * disc * (payoff(x0 + s) + payoff(x0 + tw)); });
            return v;
        });
    }
    return run(cfg, cfg.paths, [&](RandomStream& rng) {
        double v = 0;
        simulate_pair(mp, T, rng, false, [&](double s, double) { v = disc * payoff(x0 + s); });
        return v;
    });
}

std::function<double(double)> contract_payoff(const Contract& c) {
    c.validate();
    const double K = c.K, k = std::log(K), L = c.L;
    switch (c.payoff) {
        case Payoff::BinaryCall: return [k](double x) { return x >= k ? 1.0 : 0.0; };
        case Payoff::BinaryPut: return [k](double x) { return x < k ? 1.0 : 0.0; };
        case Payoff::VanillaCall: return [K](double x) { return std::max(std::exp(x) - K, 0.0); };
        case Payoff::VanillaPut: return [K](double x) { return std::max(K - std::exp(x), 0.0); };
        case Payoff::Portfolio:
            return [K, L](double x) {
                const double S = std::exp(x);
                return std::max(S - K, 0.0) - 2 * std::max(S - K - L / 2, 0.0) + std::max(S - K - L, 0.0);
            };
    }
    throw ParameterError("unknown payoff");
}

MCEstimate price_european_mc(const MarketParams& mp, const Contract& c, double x0, const MCConfig& cfg) {
    if (c.style != Style::European) throw ParameterError("Monte Carlo prices European contracts and binary puts only");
    return price_european_mc(mp, contract_payoff(c), x0, c.T_bar, cfg);
}

MCEstimate price_american_binary_put_mc(const MarketParams& mp, double k, double x0, double T, const MCConfig& cfg) {
    require_samplable(mp);
    check_config(cfg, mp);
    if (!(T >= 0)) throw ParameterError("horizon must be non-negative");
    if (x0 <= k) return {1.0, 0.0, cfg.paths, cfg.seed};
    if (cfg.antithetic) throw ParameterError("antithetic sampling is not offered for the American binary put");
    return run(cfg, cfg.paths, [&](RandomStream& rng) {
        double t = 0, x = x0;
        while (true) {
            t += -std::log(rng.uniform()) / mp.lambda;
            if (t > T) return 0.0;
            x += sample(mp.density, rng);
            if (x <= k) return std::exp(-mp.r * t);
        }
    });
}

MCEstimate martingale_check(const MarketParams& mp, double x0, double T, const MCConfig& cfg) {
    const double s0 = std::exp(x0);
    MCEstimate e = price_european_mc(mp, [](double x) { return std::exp(x); }, x0, T, cfg);
    e.mean -= s0;
    return e;
}

}  // namespace ctrw
