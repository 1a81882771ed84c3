#include "fluxheat/problem_json.hpp"

#include <set>
#include <string>

#include "fluxheat/errors.hpp"

namespace fluxheat {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError(where + ": unknown field \"" + it.key() + "\"");
        }
    }
}

double number(const json& j, const char* key, double fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

double required_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
    return number(j, key, 0.0, where);
}

std::string kind_of(const json& j, const std::string& where) {
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        throw ConfigError(where + ": missing string field \"kind\"");
    }
    return j.at("kind").get<std::string>();
}

SourceShape phi_from_json(const json& j) {
    const std::string where = "phi";
    require_object(j, where);
    reject_unknown(j, {"kind", "lambda", "mu", "sigma", "delta", "scale"}, where);
    const std::string kind = kind_of(j, where);
    if (kind == "LinearX") return SourceShape::linear_x(required_number(j, "lambda", where));
    if (kind == "NegSinh") {
        return SourceShape::neg_sinh(required_number(j, "lambda", where), required_number(j, "mu", where));
    }
    if (kind == "NegSin") {
        return SourceShape::neg_sin(required_number(j, "lambda", where), required_number(j, "mu", where));
    }
    if (kind == "ScaledSeparable") {
        return SourceShape::scaled_separable(required_number(j, "sigma", where),
                                             number(j, "delta", 1.0, where),
                                             required_number(j, "scale", where));
    }
    if (kind == "ConstantOne") return SourceShape::constant_one();
    throw ConfigError("phi: unknown kind \"" + kind + "\"");
}

InitialProfile h_from_json(const json& j, const SourceShape& phi) {
    const std::string where = "h";
    require_object(j, where);
    reject_unknown(j, {"kind", "eta", "m", "a", "sigma", "delta"}, where);
    const std::string kind = kind_of(j, where);
    if (kind == "Monomial") {
        return InitialProfile::monomial(required_number(j, "eta", where), required_number(j, "m", where));
    }
    if (kind == "Quadratic") {
        return InitialProfile::quadratic(required_number(j, "eta", where), number(j, "a", 0.0, where));
    }
    if (kind == "ScaledSeparable") {
        const bool from_phi = phi.kind == ShapeKind::ScaledSeparable;
        const double sigma = from_phi ? number(j, "sigma", phi.sigma, where) : required_number(j, "sigma", where);
        const double delta = from_phi ? number(j, "delta", phi.delta, where) : number(j, "delta", 1.0, where);
        return InitialProfile::scaled_separable(required_number(j, "eta", where), sigma, delta);
    }
    throw ConfigError("h: unknown kind \"" + kind + "\"");
}

FluxLaw flux_from_json(const json& j) {
    const std::string where = "flux";
    require_object(j, where);
    reject_unknown(j, {"kind", "nu", "n", "f1", "f2", "f"}, where);
    const std::string kind = kind_of(j, where);
    if (kind == "Zero") return FluxLaw::zero();
    if (kind == "Constant") return FluxLaw::constant(required_number(j, "nu", where));
    if (kind == "Linear") return FluxLaw::linear(required_number(j, "nu", where));
    if (kind == "Affine") {
        const TimeFunction f1 = j.contains("f1") ? time_function_from_json(j.at("f1")) : TimeFunction::constant(0.0);
        const TimeFunction f2 = j.contains("f2") ? time_function_from_json(j.at("f2")) : TimeFunction::constant(0.0);
        return FluxLaw::affine(f1, f2);
    }
    if (kind == "PowerLaw") {
        const TimeFunction f = j.contains("f") ? time_function_from_json(j.at("f")) : TimeFunction::constant(1.0);
        return FluxLaw::power_law(required_number(j, "n", where), f);
    }
    throw ConfigError("flux: unknown kind \"" + kind + "\"");
}

}  // namespace

TimeFunction time_function_from_json(const json& j) {
    const std::string where = "time function";
    if (j.is_number()) return TimeFunction::constant(j.get<double>());
    require_object(j, where);
    const std::string kind = kind_of(j, where);
    if (kind == "poly") {
        reject_unknown(j, {"kind", "coeffs"}, where);
        if (!j.contains("coeffs") || !j.at("coeffs").is_array() || j.at("coeffs").empty()) {
            throw ConfigError("poly: \"coeffs\" must be a non-empty array");
        }
        std::vector<double> c;
        for (const auto& v : j.at("coeffs")) {
            if (!v.is_number()) throw ConfigError("poly: coefficients must be numbers");
            c.push_back(v.get<double>());
        }
        return TimeFunction::polynomial(std::move(c));
    }
    if (kind == "exp") {
        reject_unknown(j, {"kind", "amp", "rate"}, where);
        return TimeFunction::exponential(number(j, "amp", 1.0, where), required_number(j, "rate", where));
    }
    if (kind == "power") {
        reject_unknown(j, {"kind", "coef", "exponent"}, where);
        return TimeFunction::power(number(j, "coef", 1.0, where), required_number(j, "exponent", where));
    }
    throw ConfigError("time function: unknown kind \"" + kind + "\"");
}

json time_function_to_json(const TimeFunction& f) {
    switch (f.kind) {
        case TimeFunction::Kind::Polynomial: return {{"kind", "poly"}, {"coeffs", f.coeffs}};
        case TimeFunction::Kind::Exponential: return {{"kind", "exp"}, {"amp", f.amplitude}, {"rate", f.rate}};
        case TimeFunction::Kind::Power: return {{"kind", "power"}, {"coef", f.amplitude}, {"exponent", f.exponent}};
    }
    return {};
}

ProblemSpec spec_from_json(const json& j) {
    require_object(j, "case");
    reject_unknown(j, {"phi", "flux", "h", "variant"}, "case");
    for (const char* key : {"phi", "flux", "h"}) {
        if (!j.contains(key)) throw ConfigError(std::string("case: missing \"") + key + "\"");
    }
    ProblemSpec spec;
    spec.phi = phi_from_json(j.at("phi"));
    spec.flux = flux_from_json(j.at("flux"));
    spec.h = h_from_json(j.at("h"), spec.phi);

    const std::string variant = j.value("variant", std::string("P"));
    if (variant == "PTilde") return transform_to_tilde(spec);
    if (variant != "P") throw ConfigError("variant must be \"P\" or \"PTilde\"");
    return spec;
}

json spec_to_json(const ProblemSpec& spec) {
    const ProblemSpec p = underlying_p(spec);
    json phi = {{"kind", to_string(p.phi.kind)}};
    switch (p.phi.kind) {
        case ShapeKind::LinearX: phi["lambda"] = p.phi.lambda; break;
        case ShapeKind::NegSinh:
        case ShapeKind::NegSin:
            phi["lambda"] = p.phi.lambda;
            phi["mu"] = p.phi.mu;
            break;
        case ShapeKind::ScaledSeparable:
            phi["sigma"] = p.phi.sigma;
            phi["delta"] = p.phi.delta;
            phi["scale"] = p.phi.scale;
            break;
        case ShapeKind::ConstantOne: break;
    }

    json flux = {{"kind", to_string(p.flux.kind)}};
    switch (p.flux.kind) {
        case FluxKind::Zero: break;
        case FluxKind::Constant:
        case FluxKind::Linear: flux["nu"] = p.flux.nu; break;
        case FluxKind::Affine:
            flux["f1"] = time_function_to_json(p.flux.f1);
            flux["f2"] = time_function_to_json(p.flux.f2);
            break;
        case FluxKind::PowerLaw:
            flux["n"] = p.flux.n;
            flux["f"] = time_function_to_json(p.flux.f);
            break;
    }

    json h = {{"kind", to_string(p.h.kind)}, {"eta", p.h.eta}};
    switch (p.h.kind) {
        case ProfileKind::Monomial: h["m"] = p.h.m; break;
        case ProfileKind::Quadratic: h["a"] = p.h.a; break;
        case ProfileKind::ScaledSeparable:
            h["sigma"] = p.h.sigma;
            h["delta"] = p.h.delta;
            break;
    }
    return {{"phi", phi}, {"flux", flux}, {"h", h},
            {"variant", spec.variant == Variant::PTilde ? "PTilde" : "P"}};
}

}  // namespace fluxheat
