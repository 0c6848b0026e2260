#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "cli/internal.hpp"
#include "ctrw/american_de.hpp"
#include "ctrw/blackscholes.hpp"
#include "ctrw/cli.hpp"
#include "ctrw/errors.hpp"
#include "ctrw/fourier_euro.hpp"
#include "ctrw/mc_oracle.hpp"

namespace ctrw::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text) || !f.flush()) throw IoError("cannot write '" + path + "'");
}

void add_model_options(CLI::App* app, Options& o) {
    app->add_option("--density", o.density, "jump family: exp, discrete, constant, gaussian, logistic, gumbel, pareto");
    app->add_option("--a", o.a, "first density parameter");
    app->add_option("--b", o.b, "second density parameter");
    app->add_option("--rho", o.rho, "right tail rate of the exponential density");
    app->add_option("--gamma", o.gamma, "left tail rate of the exponential density");
    app->add_option("--sigma", o.sigma, "diffusive volatility; sets gamma = rho - 1 + 2r/sigma^2");
    app->add_option("--mu1", o.mu1, "jump mean, fits the density by moments");
    app->add_option("--mu2", o.mu2, "jump variance, fits the density by moments");
    app->add_option("--rate", o.rate, "risk-free rate per year");
    app->add_option("--lambda-override", o.lambda_override, "fixed jump intensity; results are not risk-neutral");
    app->add_option("--config", o.config, "JSON file whose keys mirror the flags");
}

void add_contract_options(CLI::App* app, Options& o) {
    app->add_option("--contract", o.contract, "binary-call, vanilla-call, binary-put, vanilla-put, butterfly");
    app->add_option("--style", o.style, "european, american, perpetual");
    app->add_option("--T", o.T, "time to expiry in years");
    app->add_option("--spot", o.spot, "spot price");
    app->add_option("--strike", o.strike, "strike K");
    app->add_option("--L", o.L, "butterfly width");
    app->add_option("--method", o.method, "laplace, closed, fourier, mc");
    app->add_option("--tol", o.tol, "absolute tolerance");
    app->add_option("--rel-tol", o.rel_tol, "relative tolerance");
    app->add_option("--paths", o.paths, "Monte Carlo paths");
    app->add_option("--seed", o.seed, "Monte Carlo seed");
    app->add_flag("--antithetic", o.antithetic, "pair each Monte Carlo path with its reflected twin");
    app->add_option("--out", o.out, "output file (default stdout)");
}

json base_json(const Options& o, const Model& m) {
    return {{"density", density_json(m.market.density)},
            {"lambda", m.market.lambda},
            {"risk_neutral", m.market.risk_neutral},
            {"rate", o.rate}};
}

json mc_json(const Options& o, const Model& m, const Contract& c) {
    const MCConfig cfg{o.paths, o.seed, o.antithetic, 0};
    const double x = std::log(o.spot);
    MCEstimate e;
    if (c.style == Style::European) e = price_european_mc(m.market, c, x, cfg);
    else if (c.style == Style::American && c.payoff == Payoff::BinaryPut)
        e = price_american_binary_put_mc(m.market, c.log_strike(), x, c.T_bar, cfg);
    else
        throw ParameterError("Monte Carlo prices European contracts and the American binary put");
    return {{"price", e.mean}, {"std_error", e.std_error}, {"paths", e.paths}, {"seed", e.seed}};
}

Method exact_method(const std::string& name, const Model& m) {
    if (!m.de) throw UnsupportedFamilyError("method '" + name + "' needs the exponential density");
    return name == "closed" ? Method::ClosedForm : Method::LaplaceInversion;
}

json price_json(const Options& o) {
    const Model m = build_model(o);
    const Contract c = build_contract(o);
    const std::string method = o.method.empty() ? (m.de ? "closed" : "fourier") : o.method;
    const QuadSpec spec = quad_spec(o.rel_tol, o.tol);
    const double x = std::log(o.spot);

    json j = base_json(o, m);
    j["command"] = "price";
    j["contract"] = o.contract;
    j["style"] = o.style;
    j["method"] = method;
    j["tol"] = o.tol;
    j["rel_tol"] = o.rel_tol;
    j["spot"] = o.spot;
    j["strike"] = o.strike;
    j["T"] = o.T;
    if (c.payoff == Payoff::Portfolio) j["L"] = o.L;

    if (method == "closed" || method == "laplace") {
        const Method meth = exact_method(method, m);
        const DEModel& de = *m.de;
        switch (c.style) {
            case Style::European: j["price"] = european_price(de, c, x, meth, spec); break;
            case Style::American:
                if (c.payoff != Payoff::BinaryPut)
                    throw ParameterError("american style is priced for binary-put only");
                j["price"] = binary_put_price(de, c.log_strike(), x, c.T_bar, meth, spec);
                break;
            case Style::Perpetual:
                if (c.payoff == Payoff::BinaryPut) {
                    j["price"] = perpetual_binary_put(de, c.log_strike(), x);
                } else if (c.payoff == Payoff::VanillaPut) {
                    const PerpetualPut p = perpetual_vanilla_put(de, c.K, x);
                    j["price"] = p.price;
                    j["Z_star"] = std::exp(p.z_star);
                } else {
                    throw ParameterError("perpetual style is priced for binary-put and vanilla-put only");
                }
                j.erase("T");
                break;
        }
    } else if (method == "fourier") {
        if (c.style != Style::European || c.payoff != Payoff::Portfolio)
            throw ParameterError("method 'fourier' prices the European butterfly");
        const auto r = fourier::price_fourier_detail(fourier::Payoff::butterfly(c.K, c.L), m.market, x, c.T_bar, spec);
        j["price"] = r.price;
        j["error_bound"] = r.error_bound;
        j["cutoff"] = r.cutoff;
    } else if (method == "mc") {
        j.update(mc_json(o, m, c));
        j.erase("tol");
        j.erase("rel_tol");
    } else {
        throw ParameterError("unknown method '" + method + "'");
    }
    return j;
}

json mc_command(const Options& o) {
    const Model m = build_model(o);
    json j = base_json(o, m);
    j["command"] = "mc";
    j["spot"] = o.spot;
    j["T"] = o.T;
    if (o.martingale) {
        const MCConfig cfg{o.paths, o.seed, o.antithetic, 0};
        const MCEstimate e = martingale_check(m.market, std::log(o.spot), o.T, cfg);
        j["check"] = "martingale";
        j["mean"] = e.mean;
        j["std_error"] = e.std_error;
        j["paths"] = e.paths;
        j["seed"] = e.seed;
        j["pass"] = std::abs(e.mean) <= 3 * e.std_error;
        return j;
    }
    const Contract c = build_contract(o);
    j["contract"] = o.contract;
    j["style"] = o.style;
    j["strike"] = o.strike;
    if (c.payoff == Payoff::Portfolio) j["L"] = o.L;
    const json e = mc_json(o, m, c);
    j["mean"] = e["price"];
    j["std_error"] = e["std_error"];
    j["paths"] = e["paths"];
    j["seed"] = e["seed"];
    return j;
}

PriceCurve iv_command(const Options& o, int& out_of_band) {
    const Model m = build_model(o);
    const std::string method = o.method.empty() ? (m.de ? "closed" : "mc") : o.method;
    if (o.points < 2) throw ParameterError("--points must be at least 2");
    if (!(o.from > 0) || !(o.to > o.from)) throw ParameterError("moneyness grid needs 0 < --from < --to");
    const QuadSpec spec = quad_spec(o.rel_tol, o.tol);

    PriceCurve c;
    c.abscissa_name = "S/K";
    c.abscissa = linear_grid(o.from, o.to, o.points);
    c.names = {"price", "iv"};
    c.columns.assign(2, {});
    c.meta = base_json(o, m);
    c.meta["command"] = "iv";
    c.meta["method"] = method;
    c.meta["strike"] = o.strike;
    c.meta["T"] = o.T;
    c.meta["grid"] = {{"from", o.from}, {"to", o.to}, {"points", o.points}};
    if (method == "mc") c.meta.update({{"paths", o.paths}, {"seed", o.seed}, {"antithetic", o.antithetic}});
    else c.meta.update({{"tol", o.tol}, {"rel_tol", o.rel_tol}});

    const Contract contract{Style::European, Payoff::VanillaCall, o.strike, 0.0, o.T};
    contract.validate();
    out_of_band = 0;
    for (double sk : c.abscissa) {
        const double S = sk * o.strike, x = std::log(S);
        double price;
        if (method == "mc") {
            price = price_european_mc(m.market, contract, x, {o.paths, o.seed, o.antithetic, 0}).mean;
        } else if (method == "closed" || method == "laplace") {
            price = vanilla_call_price(*m.de, contract, x, exact_method(method, m), spec);
        } else {
            throw ParameterError("iv prices vanilla calls with closed, laplace or mc");
        }
        double iv = std::numeric_limits<double>::quiet_NaN();
        try {
            iv = implied_vol(price, {S, o.strike, o.rate, 0.0, o.T});
        } catch (const OutOfBandError&) {
            ++out_of_band;
        }
        c.columns[0].push_back(price);
        c.columns[1].push_back(iv);
    }
    return c;
}

json calibrate_command(const Options& o) {
    const JumpDensity d = build_density(o);
    const MarketParams mp = make_market(o.rate, d);
    return {{"command", "calibrate-lambda"},
            {"density", density_json(d)},
            {"rate", o.rate},
            {"exp_moment", exp_moment(d)},
            {"lambda", mp.lambda}};
}

// Density as given, without constructor checks, so validate can report on it.
JumpDensity raw_density(const Options& o) {
    const Family f = parse_family(o.density);
    if (f == Family::Exponential && o.rho) {
        const double gamma = o.gamma ? *o.gamma
                             : o.sigma ? *o.rho - 1 + 2 * o.rate / (*o.sigma * *o.sigma)
                                       : throw ParameterError("--rho needs --gamma or --sigma");
        return {f, 1 / *o.rho, 1 / gamma};
    }
    if (o.a && o.b) return {f, *o.a, *o.b};
    return build_density(o);
}

json validate_command(const Options& o, bool& ok, std::string& failure) {
    MarketParams mp;
    mp.r = o.rate;
    mp.density = raw_density(o);
    if (o.lambda_override) {
        mp.lambda = *o.lambda_override;
        mp.risk_neutral = false;
    } else {
        try {
            mp.lambda = risk_neutral_intensity(o.rate, mp.density);
        } catch (const Error&) {
            mp.lambda = std::numeric_limits<double>::quiet_NaN();
        }
    }
    const Diagnostics diag = validate(mp);
    json checks = json::array();
    for (const auto& c : diag.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    ok = diag.ok();
    failure = diag.first_failure();
    json j{{"command", "validate"}, {"density", density_json(mp.density)}, {"rate", o.rate}, {"ok", ok}};
    j["lambda"] = std::isfinite(mp.lambda) ? json(mp.lambda) : json(nullptr);
    j["checks"] = checks;
    return j;
}

// Figure meta from --config: either a JSON object or a CSV written by this tool.
json figure_meta(const std::string& id, const std::string& config) {
    json meta;
    if (!config.empty()) {
        const std::string text = read_file(config);
        if (text.rfind("# ", 0) == 0) {
            std::istringstream is(text);
            meta = read_csv(is).meta;
        } else {
            meta = json::parse(text);
        }
        if (!meta.is_object()) throw ParameterError("figure config must be a JSON object");
    }
    const std::string name = !id.empty() ? id : meta.value("figure", std::string());
    if (name.empty()) throw ParameterError("fig needs a figure id or a --config naming one");
    if (meta.contains("figure") && meta["figure"] != name)
        throw ParameterError("config describes " + meta["figure"].dump() + ", not " + name);
    json full = figure_defaults(name);
    if (!meta.is_null()) full.merge_patch(meta);
    full["figure"] = name;
    return full;
}

// Splices "--flag value" tokens from a JSON --config right after the subcommand,
// so explicit flags (parsed later, last one wins) take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    if (args.empty() || args[0] == "fig") return args;
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    const auto tokens = config_tokens(json::parse(read_file(path)));
    args.insert(args.begin() + 1, tokens.begin(), tokens.end());
    return args;
}

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Option pricing under compound Poisson (continuous-time random walk) market models", "ctrw"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    Options o;
    auto* price = app.add_subcommand("price", "price one contract, JSON on stdout");
    add_model_options(price, o);
    add_contract_options(price, o);

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate with standard error");
    add_model_options(mc, o);
    add_contract_options(mc, o);
    mc->add_flag("--martingale", o.martingale, "estimate E[e^{-rT} S_T] - S_0 instead of a contract");

    auto* iv = app.add_subcommand("iv", "implied volatility of vanilla calls over a moneyness grid, CSV");
    add_model_options(iv, o);
    add_contract_options(iv, o);
    iv->add_option("--from", o.from, "lowest S/K");
    iv->add_option("--to", o.to, "highest S/K");
    iv->add_option("--points", o.points, "grid size");

    std::string fig_id;
    std::optional<double> fig_tol, fig_rel_tol;
    std::optional<std::string> fig_method;
    auto* fig = app.add_subcommand("fig", "figure data as CSV with a '# {meta}' line");
    fig->add_option("figure", fig_id, "fig1, fig2, iv1, iv2, fig3, fig4, fig5");
    fig->add_option("--config", o.config, "JSON meta or a CSV produced by fig; regenerates that figure");
    fig->add_option("--tol", fig_tol, "absolute tolerance override");
    fig->add_option("--rel-tol", fig_rel_tol, "relative tolerance override");
    fig->add_option("--method", fig_method, "pricing route override");
    fig->add_option("--out", o.out, "output file (default stdout)");

    auto* cal = app.add_subcommand("calibrate-lambda", "risk-neutral intensity for a density and rate");
    add_model_options(cal, o);

    auto* val = app.add_subcommand("validate", "admissibility diagnostics, exit 2 on any failure");
    add_model_options(val, o);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    if (price->parsed()) {
        emit(price_json(o).dump(2) + "\n", o.out, out);
    } else if (mc->parsed()) {
        emit(mc_command(o).dump(2) + "\n", o.out, out);
    } else if (iv->parsed()) {
        int bad = 0;
        const PriceCurve c = iv_command(o, bad);
        std::ostringstream ss;
        write_csv(ss, c);
        emit(ss.str(), o.out, out);
        if (bad) err << "warning: " << bad << " price(s) outside the no-arbitrage band; implied vol left empty\n";
    } else if (fig->parsed()) {
        json meta = figure_meta(fig_id, o.config);
        if (fig_tol) meta["abs_tol"] = *fig_tol;
        if (fig_rel_tol) meta["rel_tol"] = *fig_rel_tol;
        if (fig_method) meta["method"] = *fig_method;
        const PriceCurve c = make_figure(meta);
        std::ostringstream ss;
        write_csv(ss, c);
        emit(ss.str(), o.out, out);
    } else if (cal->parsed()) {
        emit(calibrate_command(o).dump(2) + "\n", o.out, out);
    } else if (val->parsed()) {
        bool ok = false;
        std::string failure;
        out << validate_command(o, ok, failure).dump(2) << "\n";
        if (!ok) {
            err << "error: " << failure << "\n";
            return kExitValidation;
        }
    }
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
    try {
        return dispatch(expand_config(std::move(args)), out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const nlohmann::json::exception& e) {
        err << "error: bad JSON: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const AccuracyError& e) {
        err << "accuracy error: " << e.what() << "\n";
        return kExitAccuracy;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitAccuracy;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace ctrw::cli
