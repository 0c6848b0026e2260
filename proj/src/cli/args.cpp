#include <cmath>
#include <cstdio>

#include "cli/internal.hpp"
#include "ctrw/cli.hpp"
#include "ctrw/errors.hpp"

namespace ctrw::cli {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

DEModel exponential_model(const Options& o, const JumpDensity* fitted) {
    double rho, gamma;
    if (o.rho) {
        rho = *o.rho;
        if (o.gamma) gamma = *o.gamma;
        else if (o.sigma) {
            if (!(*o.sigma > 0)) throw ParameterError("--sigma must be positive");
            gamma = rho - 1 + 2 * o.rate / (*o.sigma * *o.sigma);
        } else
            throw ParameterError("--rho needs --gamma or --sigma");
    } else if (fitted) {
        rho = fitted->rho();
        gamma = fitted->gamma();
    } else {
        throw ParameterError("exponential density needs --rho, --a/--b or --mu1/--mu2");
    }
    DEModel m{rho, gamma, o.rate, 0.0};
    if (o.lambda_override) {
        m.lambda = *o.lambda_override;
        m.validate();
        return m;
    }
    return DEModel::risk_neutral(rho, gamma, o.rate);
}

}  // namespace

JumpDensity build_density(const Options& o) {
    const Family f = parse_family(o.density);
    if (f == Family::Exponential && o.rho) {
        const double gamma = o.gamma ? *o.gamma
                             : o.sigma ? *o.rho - 1 + 2 * o.rate / (*o.sigma * *o.sigma)
                                       : throw ParameterError("--rho needs --gamma or --sigma");
        return JumpDensity::from_rates(*o.rho, gamma);
    }
    if (o.a || o.b) {
        if (!(o.a && o.b)) throw ParameterError("--a and --b must be given together");
        return JumpDensity::make(f, *o.a, *o.b);
    }
    if (o.mu1 || o.mu2) {
        if (!(o.mu1 && o.mu2)) throw ParameterError("--mu1 and --mu2 must be given together");
        return fit_from_moments(f, {*o.mu1, *o.mu2});
    }
    throw ParameterError("density needs --a/--b or --mu1/--mu2");
}

Model build_model(const Options& o) {
    Model m;
    const Family f = parse_family(o.density);
    if (f == Family::Exponential) {
        std::optional<JumpDensity> fitted;
        if (!o.rho) fitted = build_density(o);
        const DEModel de = exponential_model(o, fitted ? &*fitted : nullptr);
        m.de = de;
        m.market = de.market();
        m.market.risk_neutral = !o.lambda_override;
        return m;
    }
    const JumpDensity d = build_density(o);
    if (o.lambda_override) {
        d.validate();
        if (!(*o.lambda_override > 0) || !std::isfinite(*o.lambda_override))
            throw ParameterError("--lambda-override must be positive");
        m.market = MarketParams{o.rate, d, *o.lambda_override, false};
    } else {
        m.market = make_market(o.rate, d);
    }
    return m;
}

Payoff parse_payoff(const std::string& name) {
    if (name == "binary-call") return Payoff::BinaryCall;
    if (name == "vanilla-call") return Payoff::VanillaCall;
    if (name == "binary-put") return Payoff::BinaryPut;
    if (name == "vanilla-put") return Payoff::VanillaPut;
    if (name == "butterfly") return Payoff::Portfolio;
    throw ParameterError("unknown contract '" + name + "'");
}

Style parse_style(const std::string& name) {
    if (name == "european") return Style::European;
    if (name == "american") return Style::American;
    if (name == "perpetual") return Style::Perpetual;
    throw ParameterError("unknown style '" + name + "'");
}

Contract build_contract(const Options& o) {
    Contract c;
    c.style = parse_style(o.style);
    c.payoff = parse_payoff(o.contract);
    c.K = o.strike;
    c.L = o.L;
    c.T_bar = o.T;
    c.validate();
    if (!(o.spot > 0) || !std::isfinite(o.spot)) throw ParameterError("--spot must be positive");
    return c;
}

QuadSpec quad_spec(double rel_tol, double abs_tol) {
    if (!(rel_tol > 0) || !(abs_tol > 0) || !std::isfinite(rel_tol) || !std::isfinite(abs_tol))
        throw ParameterError("tolerances must be positive");
    QuadSpec s;
    s.rel_tol = rel_tol;
    s.abs_tol = abs_tol;
    return s;
}

std::vector<std::string> config_tokens(const nlohmann::json& cfg) {
    if (!cfg.is_object()) throw ParameterError("config must be a JSON object");
    std::vector<std::string> tokens;
    auto flag = [](std::string key) {
        for (char& ch : key)
            if (ch == '_') ch = '-';
        return "--" + key;
    };
    auto scalar = [&](const std::string& key, const nlohmann::json& v) {
        if (v.is_boolean()) {
            if (v.get<bool>()) tokens.push_back(flag(key));
        } else if (v.is_number_integer()) {
            tokens.push_back(flag(key));
            tokens.push_back(std::to_string(v.get<long long>()));
        } else if (v.is_number()) {
            tokens.push_back(flag(key));
            tokens.push_back(num(v.get<double>()));
        } else if (v.is_string()) {
            tokens.push_back(flag(key));
            tokens.push_back(v.get<std::string>());
        } else {
            throw ParameterError("config key '" + key + "' must be a scalar");
        }
    };
    for (const auto& [key, v] : cfg.items()) {
        if (key == "density" && v.is_object()) {
            for (const auto& [k2, v2] : v.items()) scalar(k2 == "family" ? "density" : k2, v2);
        } else {
            scalar(key, v);
        }
    }
    return tokens;
}

nlohmann::json density_json(const JumpDensity& d) {
    return {{"family", std::string(family_name(d.family))}, {"a", d.a}, {"b", d.b}};
}

}  // namespace ctrw::cli
