#include <cmath>
#include <limits>
#include <sstream>

#include "cli/internal.hpp"
#include "ctrw/american_de.hpp"
#include "ctrw/blackscholes.hpp"
#include "ctrw/cli.hpp"
#include "ctrw/errors.hpp"
#include "ctrw/fourier_euro.hpp"

namespace ctrw::cli {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string label(const std::string& prefix, double v) {
    std::ostringstream os;
    os << prefix << v;
    return os.str();
}

Method method_of(const json& meta) {
    const auto m = meta.at("method").get<std::string>();
    if (m == "closed") return Method::ClosedForm;
    if (m == "laplace") return Method::LaplaceInversion;
    throw ParameterError("figure method must be 'closed' or 'laplace', got '" + m + "'");
}

std::vector<double> grid_of(const json& meta) {
    const auto& g = meta.at("grid");
    return linear_grid(g.at("from").get<double>(), g.at("to").get<double>(), g.at("points").get<int>());
}

QuadSpec spec_of(const json& meta) {
    return quad_spec(meta.at("rel_tol").get<double>(), meta.at("abs_tol").get<double>());
}

struct Common {
    double r, sigma, T, K;
    std::vector<double> rhos;
    std::vector<double> grid;
    QuadSpec spec;
};

Common common_of(const json& meta) {
    return {meta.at("r").get<double>(),
            meta.at("sigma").get<double>(),
            meta.at("T").get<double>(),
            meta.at("K").get<double>(),
            meta.at("rho").get<std::vector<double>>(),
            grid_of(meta),
            spec_of(meta)};
}

PriceCurve moneyness_curve(const json& meta, const std::vector<double>& grid) {
    PriceCurve c;
    c.abscissa_name = "S/K";
    c.abscissa = grid;
    c.meta = meta;
    return c;
}

// Binary (fig1) or vanilla (fig2) calls against moneyness.
PriceCurve call_figure(const json& meta, Payoff payoff, bool no_trade) {
    const Common p = common_of(meta);
    const Method method = method_of(meta);
    PriceCurve c = moneyness_curve(meta, p.grid);
    const Contract contract{Style::European, payoff, p.K, 0.0, p.T};
    for (double rho : p.rhos) {
        const DEModel m = DEModel::from_sigma(rho, p.sigma, p.r);
        std::vector<double> col;
        for (double sk : p.grid) col.push_back(european_price(m, contract, std::log(sk * p.K), method, p.spec));
        c.names.push_back(label("rho=", rho));
        c.columns.push_back(std::move(col));
    }
    std::vector<double> bs;
    for (double sk : p.grid) {
        const BSParams b{sk * p.K, p.K, p.r, p.sigma, p.T};
        bs.push_back(payoff == Payoff::BinaryCall ? bs_binary_call(b) : bs_vanilla_call(b));
    }
    c.names.push_back("bs");
    c.columns.push_back(std::move(bs));
    if (no_trade) {
        std::vector<double> nt;
        for (double sk : p.grid) nt.push_back(no_trade_vanilla_call(std::log(sk * p.K), p.K, p.r, p.T));
        c.names.push_back("no_trade");
        c.columns.push_back(std::move(nt));
    }
    return c;
}

double iv_or_nan(double price, const BSParams& b) {
    try {
        return implied_vol(price, b);
    } catch (const OutOfBandError&) {
        return kNaN;
    }
}

// Implied volatility of CTRW vanilla calls; the bs column inverts BS prices as a self-test.
PriceCurve iv_figure(const json& meta) {
    const Common p = common_of(meta);
    const Method method = method_of(meta);
    PriceCurve c = moneyness_curve(meta, p.grid);
    const Contract contract{Style::European, Payoff::VanillaCall, p.K, 0.0, p.T};
    for (double rho : p.rhos) {
        const DEModel m = DEModel::from_sigma(rho, p.sigma, p.r);
        std::vector<double> col;
        for (double sk : p.grid) {
            const double price = vanilla_call_price(m, contract, std::log(sk * p.K), method, p.spec);
            col.push_back(iv_or_nan(price, {sk * p.K, p.K, p.r, 0.0, p.T}));
        }
        c.names.push_back(label("rho=", rho));
        c.columns.push_back(std::move(col));
    }
    std::vector<double> bs;
    for (double sk : p.grid) {
        const BSParams b{sk * p.K, p.K, p.r, p.sigma, p.T};
        bs.push_back(iv_or_nan(bs_vanilla_call(b), b));
    }
    c.names.push_back("bs");
    c.columns.push_back(std::move(bs));
    return c;
}

// Butterfly against spot for several rho, replicated from vanilla calls.
PriceCurve butterfly_rho_figure(const json& meta) {
    const Common p = common_of(meta);
    const Method method = method_of(meta);
    const double L = meta.at("L").get<double>();
    PriceCurve c;
    c.abscissa_name = "S";
    c.abscissa = p.grid;
    c.meta = meta;
    const Contract contract{Style::European, Payoff::Portfolio, p.K, L, p.T};
    for (double rho : p.rhos) {
        const DEModel m = DEModel::from_sigma(rho, p.sigma, p.r);
        std::vector<double> col;
        for (double S : p.grid) col.push_back(european_price(m, contract, std::log(S), method, p.spec));
        c.names.push_back(label("rho=", rho));
        c.columns.push_back(std::move(col));
    }
    std::vector<double> bs;
    for (double S : p.grid) {
        auto call = [&](double K) { return bs_vanilla_call({S, K, p.r, p.sigma, p.T}); };
        bs.push_back(call(p.K) - 2 * call(p.K + L / 2) + call(p.K + L));
    }
    c.names.push_back("bs");
    c.columns.push_back(std::move(bs));
    return c;
}

// Butterfly against spot for every jump family at a common mean and variance.
PriceCurve butterfly_density_figure(const json& meta) {
    if (meta.at("method").get<std::string>() != "fourier") throw ParameterError("fig4 is priced with method 'fourier'");
    const double r = meta.at("r").get<double>(), T = meta.at("T").get<double>();
    const double K = meta.at("K").get<double>(), L = meta.at("L").get<double>();
    const Moments mom{meta.at("mu1").get<double>(), meta.at("mu2").get<double>()};
    const QuadSpec spec = spec_of(meta);
    PriceCurve c;
    c.abscissa_name = "S";
    c.abscissa = grid_of(meta);
    c.meta = meta;
    const auto payoff = fourier::Payoff::butterfly(K, L);
    for (const auto& name : meta.at("densities").get<std::vector<std::string>>()) {
        const MarketParams mp = make_market(r, fit_from_moments(parse_family(name), mom));
        std::vector<double> col;
        for (double S : c.abscissa) col.push_back(fourier::price_fourier(payoff, mp, std::log(S), T, spec));
        c.names.push_back(name);
        c.columns.push_back(std::move(col));
    }
    return c;
}

// American binary put against moneyness, maturities ascending, then the perpetual limit.
PriceCurve american_figure(const json& meta) {
    const Common p = common_of(meta);
    const Method method = method_of(meta);
    const auto maturities = meta.at("maturities").get<std::vector<double>>();
    for (std::size_t i = 1; i < maturities.size(); ++i)
        if (!(maturities[i] > maturities[i - 1])) throw ParameterError("fig5 maturities must be ascending");
    PriceCurve c = moneyness_curve(meta, p.grid);
    const double k = std::log(p.K);
    for (double T : maturities) {
        for (double rho : p.rhos) {
            const DEModel m = DEModel::from_sigma(rho, p.sigma, p.r);
            std::vector<double> col;
            for (double sk : p.grid) col.push_back(binary_put_price(m, k, std::log(sk * p.K), T, method, p.spec));
            c.names.push_back(label("T=", T) + label(" rho=", rho));
            c.columns.push_back(std::move(col));
        }
    }
    for (double rho : p.rhos) {
        const DEModel m = DEModel::from_sigma(rho, p.sigma, p.r);
        std::vector<double> col;
        for (double sk : p.grid) col.push_back(perpetual_binary_put(m, k, std::log(sk * p.K)));
        c.names.push_back(label("perpetual rho=", rho));
        c.columns.push_back(std::move(col));
    }
    return c;
}

json moneyness_defaults(const std::string& id) {
    return {{"figure", id},
            {"r", 0.04},
            {"sigma", 0.1},
            {"T", 0.25},
            {"K", 1.0},
            {"rho", {2.0, 5.0, 20.0}},
            {"grid", {{"from", 0.8}, {"to", 1.2}, {"points", 41}}},
            {"method", "closed"},
            {"rel_tol", 1e-9},
            {"abs_tol", 1e-10}};
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig1", "fig2", "iv1", "iv2", "fig3", "fig4", "fig5"};
    return ids;
}

json figure_defaults(const std::string& id) {
    if (id == "fig1" || id == "fig2" || id == "iv1") return moneyness_defaults(id);
    if (id == "iv2") {
        json j = moneyness_defaults(id);
        j["r"] = 0.02139;
        j["sigma"] = 0.2;
        j["T"] = 60.0 / 365.0;
        j["rho"] = {30.0};
        return j;
    }
    if (id == "fig3") {
        json j = moneyness_defaults(id);
        j["K"] = 100.0;
        j["L"] = 10.0;
        j["grid"] = {{"from", 80.0}, {"to", 120.0}, {"points", 81}};
        return j;
    }
    if (id == "fig4") {
        json names = json::array();
        for (Family f : kAllFamilies) names.push_back(std::string(family_name(f)));
        return {{"figure", id},
                {"r", 0.04},
                {"T", 0.25},
                {"K", 100.0},
                {"L", 10.0},
                {"mu1", 1e-3},
                {"mu2", 1e-4},
                {"densities", names},
                {"grid", {{"from", 80.0}, {"to", 120.0}, {"points", 81}}},
                {"method", "fourier"},
                {"rel_tol", 1e-9},
                {"abs_tol", 1e-8}};
    }
    if (id == "fig5") {
        json j = moneyness_defaults(id);
        j["maturities"] = {0.25, 1.0, 5.0};
        j["method"] = "laplace";
        return j;
    }
    throw ParameterError("unknown figure '" + id + "'");
}

PriceCurve make_figure(const json& meta) {
    const auto id = meta.at("figure").get<std::string>();
    if (id == "fig1") return call_figure(meta, Payoff::BinaryCall, false);
    if (id == "fig2") return call_figure(meta, Payoff::VanillaCall, true);
    if (id == "iv1" || id == "iv2") return iv_figure(meta);
    if (id == "fig3") return butterfly_rho_figure(meta);
    if (id == "fig4") return butterfly_density_figure(meta);
    if (id == "fig5") return american_figure(meta);
    throw ParameterError("unknown figure '" + id + "'");
}

}  // namespace ctrw::cli
