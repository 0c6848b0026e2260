#include <gtest/gtest.h>

#include <cmath>

#include "ctrw/blackscholes.hpp"
#include "ctrw/errors.hpp"
#include "ctrw/european_de.hpp"
#include "ctrw/mc_oracle.hpp"
#include "oracles.hpp"

using namespace ctrw;

namespace {

const DEModel kBase = DEModel::risk_neutral(2.0, 9.0, 0.04);

Contract call(Payoff p, double K, double T) { return {Style::European, p, K, 0.0, T}; }

oracle::DESeries series(const DEModel& m) { return {m.rho, m.gamma, m.r, m.lambda}; }

std::vector<double> moneyness_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 20; ++i) g.push_back(0.8 + 0.02 * i);
    return g;
}

}  // namespace

TEST(DEModel, RiskNeutralIntensity) {
    EXPECT_NEAR(kBase.lambda, 0.05, 1e-15);
    const DEModel s = DEModel::from_sigma(2.0, 0.1, 0.04);
    EXPECT_NEAR(s.gamma, 1.0 + 8.0, 1e-12);
    EXPECT_NEAR(s.lambda, 0.05, 1e-14);
    EXPECT_THROW(DEModel::risk_neutral(0.5, 9.0, 0.04), ValidationError);
    EXPECT_THROW(DEModel::risk_neutral(11.0, 9.0, 0.04), ValidationError);
    const DEModel back = DEModel::from_market(kBase.market());
    EXPECT_NEAR(back.rho, 2.0, 1e-14);
    EXPECT_NEAR(back.gamma, 9.0, 1e-13);
}

TEST(BetaPm, Identities) {
    const auto [bp, bm] = beta_pm(kBase, 0.0);
    EXPECT_NEAR((bp * bm).real(), -8.0, 1e-12);
    for (cplx s : {cplx(0.3, 0), cplx(1.0, 5.0), cplx(-0.02, -40.0), cplx(100.0, 1e3)}) {
        const auto [p, q] = beta_pm(kBase, s);
        EXPECT_LE(std::abs(p + q + (9.0 - 2.0)), 1e-12);
        const cplx prod = -9.0 * 2.0 * (0.04 + s) / (0.05 + 0.04 + s);
        EXPECT_LE(std::abs(p * q - prod), 1e-12 * std::max(1.0, std::abs(prod)));
    }
    const auto [p, q] = beta_pm(kBase, 1e12);
    EXPECT_NEAR(p.real(), 2.0, 1e-9);
    EXPECT_NEAR(q.real(), -9.0, 1e-9);
}

TEST(BinaryCallLaplace, Boundaries) {
    const double k = 0.0;
    for (double s : {0.1, 1.0, 10.0}) {
        EXPECT_NEAR(std::abs(binary_call_laplace(kBase, k, -40.0, s)), 0.0, 1e-15);
        EXPECT_NEAR(binary_call_laplace(kBase, k, 40.0, s).real(), 1.0 / (0.04 + s), 1e-12);
        const double below = binary_call_laplace(kBase, k, -1e-12, s).real();
        const double above = binary_call_laplace(kBase, k, 0.0, s).real();
        EXPECT_GT(above - below, 1e-3) << "s=" << s;  // the transform keeps the payoff's jump
        // Jump size read off the A+- coefficients.
        const auto [bp, bm] = beta_pm(kBase, s);
        const double pre = kBase.lambda / ((kBase.lambda + 0.04 + s) * (0.04 + s));
        const double Ap = (-bm / (bp - bm) * pre).real(), Am = (-bp / (bp - bm) * pre).real();
        EXPECT_NEAR(above - below, Am + 1 / (0.04 + s) - Ap, 1e-9);
    }
}

TEST(BinaryCall, MatchesPoissonSeries) {
    for (auto [rho, T] : {std::pair{2.0, 0.25}, {2.0, 5.0}, {5.0, 1.0}, {20.0, 0.25}}) {
        const DEModel m = DEModel::from_sigma(rho, 0.1, 0.04);
        for (double sk : {0.8, 0.95, 1.0, 1.05, 1.2}) {
            const double x = std::log(sk);
            const double want = series(m).binary_call(x, 0.0, T);
            const double closed = binary_call_price(m, call(Payoff::BinaryCall, 1.0, T), x, Method::ClosedForm);
            const double lap = binary_call_price(m, call(Payoff::BinaryCall, 1.0, T), x, Method::LaplaceInversion);
            EXPECT_NEAR(closed, want, 1e-9) << "rho=" << rho << " T=" << T << " S/K=" << sk;
            EXPECT_NEAR(lap, want, 1e-7) << "rho=" << rho << " T=" << T << " S/K=" << sk;
        }
    }
}

TEST(VanillaCall, MatchesPoissonSeries) {
    for (auto [rho, T] : {std::pair{2.0, 0.25}, {2.0, 5.0}, {5.0, 1.0}, {20.0, 0.25}}) {
        const DEModel m = DEModel::from_sigma(rho, 0.1, 0.04);
        for (double sk : {0.8, 0.95, 1.0, 1.05, 1.2}) {
            const double x = std::log(sk);
            const double want = series(m).vanilla_call(x, 1.0, T);
            const double closed = vanilla_call_price(m, call(Payoff::VanillaCall, 1.0, T), x, Method::ClosedForm);
            const double lap = vanilla_call_price(m, call(Payoff::VanillaCall, 1.0, T), x, Method::LaplaceInversion);
            EXPECT_NEAR(closed, want, 1e-9) << "rho=" << rho << " T=" << T << " S/K=" << sk;
            EXPECT_NEAR(lap, want, 1e-7) << "rho=" << rho << " T=" << T << " S/K=" << sk;
        }
    }
}

TEST(EuropeanDE, MethodsAgreeOnGrid) {
    for (double rho : {2.0, 5.0, 20.0}) {
        const DEModel m = DEModel::from_sigma(rho, 0.1, 0.04);
        for (double T : {0.05, 0.25, 1.0, 5.0, 20.0}) {
            for (double sk : moneyness_grid()) {
                const double x = std::log(sk);
                for (Payoff p : {Payoff::BinaryCall, Payoff::VanillaCall}) {
                    const Contract c = call(p, 1.0, T);
                    const double a = european_price(m, c, x, Method::ClosedForm);
                    const double b = european_price(m, c, x, Method::LaplaceInversion);
                    EXPECT_LE(std::abs(a - b), 1e-6) << "rho=" << rho << " T=" << T << " S/K=" << sk;
                }
            }
        }
    }
}

TEST(EuropeanDE, BoundsAndMonotonicity) {
    for (double rho : {2.0, 5.0, 20.0}) {
        const DEModel m = DEModel::from_sigma(rho, 0.1, 0.04);
        for (double T : {0.05, 1.0, 20.0}) {
            const double disc = std::exp(-0.04 * T);
            double prev_b = -1, prev_v = -1;
            for (double sk = 0.5; sk <= 2.0; sk += 0.01) {
                const double x = std::log(sk);
                const double b = binary_call_price(m, call(Payoff::BinaryCall, 1.0, T), x, Method::ClosedForm);
                const double v = vanilla_call_price(m, call(Payoff::VanillaCall, 1.0, T), x, Method::ClosedForm);
                EXPECT_GE(b, -1e-12);
                EXPECT_LE(b, disc + 1e-12);
                EXPECT_GE(v, std::max(sk - disc, 0.0) - 1e-10) << "rho=" << rho << " T=" << T << " S=" << sk;
                EXPECT_LE(v, sk + 1e-12);
                EXPECT_GE(b, prev_b - 1e-12);
                EXPECT_GE(v, prev_v - 1e-12);
                prev_b = b;
                prev_v = v;
            }
        }
    }
}

TEST(EuropeanDE, ExpiryAndFarBoundaries) {
    const Contract b0 = call(Payoff::BinaryCall, 1.0, 0.0), v0 = call(Payoff::VanillaCall, 1.0, 0.0);
    EXPECT_EQ(binary_call_price(kBase, b0, 0.0, Method::ClosedForm), 1.0);  // right-continuous at k
    EXPECT_EQ(binary_call_price(kBase, b0, -1e-9, Method::ClosedForm), 0.0);
    EXPECT_NEAR(vanilla_call_price(kBase, v0, std::log(1.3), Method::ClosedForm), 0.3, 1e-15);
    EXPECT_EQ(vanilla_call_price(kBase, v0, std::log(0.7), Method::ClosedForm), 0.0);
    EXPECT_NEAR(binary_call_price(kBase, call(Payoff::BinaryCall, 1.0, 1e-6), 0.1, Method::ClosedForm), 1.0, 1e-6);
    EXPECT_NEAR(binary_call_price(kBase, call(Payoff::BinaryCall, 1.0, 1e-6), 0.1, Method::LaplaceInversion), 1.0, 1e-6);

    for (double T : {0.25, 5.0}) {
        const double disc = std::exp(-0.04 * T);
        EXPECT_NEAR(binary_call_price(kBase, call(Payoff::BinaryCall, 1.0, T), 30.0, Method::ClosedForm), disc, 1e-10);
        EXPECT_NEAR(binary_call_price(kBase, call(Payoff::BinaryCall, 1.0, T), 30.0, Method::LaplaceInversion), disc,
                    1e-8);
        EXPECT_NEAR(binary_call_price(kBase, call(Payoff::BinaryCall, 1.0, T), -30.0, Method::ClosedForm), 0.0, 1e-10);
        const double x = 8.0;
        const double v = vanilla_call_price(kBase, call(Payoff::VanillaCall, 1.0, T), x, Method::ClosedForm);
        EXPECT_NEAR(v / (std::exp(x) - disc), 1.0, 1e-8);
    }
}

TEST(EuropeanDE, WienerLimit) {
    const DEModel m = DEModel::from_sigma(2000.0, 0.1, 0.04);
    EXPECT_NEAR(m.gamma, 2007.0, 1e-9);
    const double b = binary_call_price(m, call(Payoff::BinaryCall, 1.0, 0.25), 0.0, Method::ClosedForm);
    EXPECT_NEAR(b, 0.5638, 1e-4);
    EXPECT_NEAR(b, bs_binary_call({1.0, 1.0, 0.04, 0.1, 0.25}), 1e-3);
}

TEST(EuropeanDE, ConvergesToBlackScholes) {
    for (Payoff p : {Payoff::BinaryCall, Payoff::VanillaCall}) {
        double prev = INFINITY;
        for (double rho : {20.0, 200.0, 2000.0}) {
            const DEModel m = DEModel::from_sigma(rho, 0.1, 0.04);
            double sup = 0;
            for (double sk = 0.9; sk <= 1.1 + 1e-12; sk += 0.005) {
                const BSParams bp{sk, 1.0, 0.04, 0.1, 0.25};
                const double bs = p == Payoff::BinaryCall ? bs_binary_call(bp) : bs_vanilla_call(bp);
                sup = std::max(sup, std::abs(european_price(m, call(p, 1.0, 0.25), std::log(sk), Method::ClosedForm) - bs));
            }
            EXPECT_LT(sup, prev) << "rho=" << rho;
            prev = sup;
        }
    }
}

TEST(EuropeanDE, NoTradeLimit) {
    const DEModel m = DEModel::risk_neutral(1 + 1e-6, 9.0, 0.04);
    for (double T : {0.25, 1.0}) {
        for (double sk : {0.9, 1.0, 1.1}) {
            const double x = std::log(sk);
            const double want = no_trade_vanilla_call(x, 1.0, 0.04, T);
            const double got = vanilla_call_price(m, call(Payoff::VanillaCall, 1.0, T), x, Method::ClosedForm);
            EXPECT_NEAR(got, want, 1e-6) << "T=" << T << " S/K=" << sk;
            EXPECT_NEAR(want, sk * (1 - std::exp(-0.04 * T)) + (sk >= 1 ? (sk - 1) * std::exp(-0.04 * T) : 0.0), 1e-15);
        }
    }
}

TEST(EuropeanDE, BetweenNoTradeAndBlackScholes) {
    // Holds up to slightly in the money; deeper in, see the next test.
    for (double rho : {2.0, 5.0, 20.0}) {
        const DEModel m = DEModel::from_sigma(rho, 0.1, 0.04);
        for (double sk : moneyness_grid()) {
            if (sk > 1.041) break;
            const double x = std::log(sk);
            const double v = vanilla_call_price(m, call(Payoff::VanillaCall, 1.0, 0.25), x, Method::ClosedForm);
            const double nt = no_trade_vanilla_call(x, 1.0, 0.04, 0.25);
            const double bs = bs_vanilla_call({sk, 1.0, 0.04, 0.1, 0.25});
            EXPECT_GE(v, std::min(nt, bs) - 1e-12) << "rho=" << rho << " S/K=" << sk;
            EXPECT_LE(v, std::max(nt, bs) + 1e-12) << "rho=" << rho << " S/K=" << sk;
        }
    }
}

TEST(EuropeanDE, AboveBlackScholesDeepInTheMoney) {
    // Out of the money and deep in the money the jump model is dearer than BS, at the money cheaper.
    const DEModel m = DEModel::from_sigma(5.0, 0.1, 0.04);
    auto diff = [&](double sk) {
        const double x = std::log(sk);
        return series(m).vanilla_call(x, 1.0, 0.25) - bs_vanilla_call({sk, 1.0, 0.04, 0.1, 0.25});
    };
    EXPECT_GT(diff(0.85), 0.0);
    EXPECT_LT(diff(1.0), 0.0);
    EXPECT_GT(diff(1.2), 1e-4);
    EXPECT_NEAR(vanilla_call_price(m, call(Payoff::VanillaCall, 1.0, 0.25), std::log(1.2), Method::ClosedForm),
                series(m).vanilla_call(std::log(1.2), 1.0, 0.25), 1e-9);
}

TEST(EuropeanDE, PutCallParity) {
    const double T = 0.25, disc = std::exp(-0.04 * T);
    EXPECT_EQ(put_price_from_parity(disc, ParityKind::Binary, 0.0, 1.0, 0.04, T), 0.0);
    EXPECT_NEAR(put_price_from_parity(0.1, ParityKind::Vanilla, std::log(disc), 1.0, 0.04, T), 0.1, 1e-15);
    for (double sk : {0.9, 1.0, 1.1}) {
        const double x = std::log(sk);
        const double c = european_price(kBase, call(Payoff::VanillaCall, 1.0, T), x, Method::ClosedForm);
        const double p = european_price(kBase, call(Payoff::VanillaPut, 1.0, T), x, Method::ClosedForm);
        EXPECT_NEAR(p - c, disc - sk, 1e-14);
        const double cb = european_price(kBase, call(Payoff::BinaryCall, 1.0, T), x, Method::ClosedForm);
        const double pb = european_price(kBase, call(Payoff::BinaryPut, 1.0, T), x, Method::ClosedForm);
        EXPECT_NEAR(pb + cb, disc, 1e-15);
        EXPECT_GE(pb, 0.0);
    }
    const double c = vanilla_call_price(kBase, call(Payoff::VanillaCall, 1.0, T), 0.0, Method::ClosedForm);
    EXPECT_NEAR(put_price_from_parity(c, ParityKind::Vanilla, 0.0, 1.0, 0.04, T) - c, -0.00995, 1e-5);
}

TEST(EuropeanDE, PortfolioReplicatesFromCalls) {
    const DEModel m = DEModel::from_sigma(5.0, 0.1, 0.04);
    const Contract bf{Style::European, Payoff::Portfolio, 100.0, 10.0, 0.25};
    for (double S : {85.0, 100.0, 105.0, 112.0}) {
        const double x = std::log(S);
        auto cl = [&](double K) { return series(m).vanilla_call(x, K, 0.25); };
        EXPECT_NEAR(european_price(m, bf, x, Method::ClosedForm), cl(100) - 2 * cl(105) + cl(110), 1e-8) << "S=" << S;
    }
    Contract bad = bf;
    bad.L = 0;
    EXPECT_THROW(european_price(m, bad, 0.0, Method::ClosedForm), ValidationError);
}

TEST(EuropeanDE, MonteCarloCrossCheck) {
    const DEModel m = DEModel::risk_neutral(4.0, 11.0, 0.04);
    const Contract c = call(Payoff::VanillaCall, 1.0, 0.25);
    MCConfig cfg;
    cfg.paths = 1'000'000;
    const MCEstimate mc = price_european_mc(m.market(), c, 0.0, cfg);
    const double v = vanilla_call_price(m, c, 0.0, Method::ClosedForm);
    EXPECT_LE(std::abs(v - mc.mean), 3 * mc.std_error) << "price " << v << " mc " << mc.mean << " se " << mc.std_error;
}

TEST(LogReturnMoments, Examples) {
    EXPECT_EQ(log_return_moments(kBase, 0.0).m1, 0.0);
    EXPECT_EQ(log_return_moments(kBase, 0.0).m2, 0.0);
    const auto mm = log_return_moments(kBase, 1.0);
    EXPECT_NEAR(mm.m1, 0.05 * 7.0 / 18.0, 1e-15);
    EXPECT_NEAR(mm.m2, 2 * 0.05 * (81.0 - 18.0 + 4.0) / (81.0 * 4.0), 1e-15);
    const DEModel w = DEModel::from_sigma(2000.0, 0.1, 0.04);
    EXPECT_NEAR(log_return_moments(w, 1.0).m1, 0.035, 1e-4);
    EXPECT_NEAR(log_return_moments(w, 1.0).m2, 0.01, 1e-4);
    // Against the two-sided exponential moments: lambda dt E[J], lambda dt E[J^2].
    const auto d = kBase.density();
    const auto mv = mean_var(d);
    EXPECT_NEAR(mm.m1, 0.05 * mv.mu1, 1e-15);
    EXPECT_NEAR(mm.m2, 0.05 * (mv.mu2 + mv.mu1 * mv.mu1), 1e-15);
}

TEST(LogMKernel, MatchesDirectFormula) {
    for (auto [a, b, d, xi] : {std::tuple{2.0, 9.0, 0.1, 0.5}, {1.0, 3.0, -0.2, 2.0}, {0.5, 0.5, 0.0, 1.0}}) {
        const double want = std::log(std::exp(-a * b * xi * xi / 2) * oracle::normal_cdf((a - b) * xi / 2 + d / xi));
        EXPECT_NEAR(log_m_kernel(a, b, d, xi), want, 1e-13);
    }
}
