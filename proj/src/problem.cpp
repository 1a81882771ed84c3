#include "fluxheat/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fluxheat/errors.hpp"
#include "fluxheat/specfun.hpp"

namespace fluxheat {

namespace {

// sin(z + kπ/2) without accumulating the phase in floating point.
double sin_shifted(double z, int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return std::sin(z);
        case 1: return std::cos(z);
        case 2: return -std::sin(z);
        default: return -std::cos(z);
    }
}

double sinh_derivative(double z, int k) { return (k % 2 == 0) ? std::sinh(z) : std::cosh(z); }

bool finite_all(std::initializer_list<double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace

double separable_x(double sigma, double delta, double x, int k) {
    if (sigma > 0.0) {
        const double r = std::sqrt(sigma);
        return delta * std::pow(r, k - 1) * sinh_derivative(r * x, k);
    }
    if (sigma < 0.0) {
        const double r = std::sqrt(-sigma);
        return delta * std::pow(r, k - 1) * sin_shifted(r * x, k);
    }
    if (k == 0) return delta * x;
    return (k == 1) ? delta : 0.0;
}

SourceShape SourceShape::linear_x(double lambda) {
    SourceShape s;
    s.kind = ShapeKind::LinearX;
    s.lambda = lambda;
    return s;
}

SourceShape SourceShape::neg_sinh(double lambda, double mu) {
    SourceShape s;
    s.kind = ShapeKind::NegSinh;
    s.lambda = lambda;
    s.mu = mu;
    return s;
}

SourceShape SourceShape::neg_sin(double lambda, double mu) {
    SourceShape s;
    s.kind = ShapeKind::NegSin;
    s.lambda = lambda;
    s.mu = mu;
    return s;
}

SourceShape SourceShape::scaled_separable(double sigma, double delta, double scale) {
    SourceShape s;
    s.kind = ShapeKind::ScaledSeparable;
    s.sigma = sigma;
    s.delta = delta;
    s.scale = scale;
    return s;
}

SourceShape SourceShape::constant_one() {
    SourceShape s;
    s.kind = ShapeKind::ConstantOne;
    return s;
}

double SourceShape::base(double x, int k) const {
    switch (kind) {
        case ShapeKind::LinearX:
            if (k == 0) return lambda * x;
            return (k == 1) ? lambda : 0.0;
        case ShapeKind::NegSinh:
            return -mu * std::pow(lambda, k) * sinh_derivative(lambda * x, k);
        case ShapeKind::NegSin:
            return -mu * std::pow(lambda, k) * sin_shifted(lambda * x, k);
        case ShapeKind::ScaledSeparable:
            return scale * separable_x(sigma, delta, x, k);
        case ShapeKind::ConstantOne:
            return (k == 0) ? 1.0 : 0.0;
    }
    return 0.0;
}

InitialProfile InitialProfile::monomial(double eta, double m) {
    InitialProfile h;
    h.kind = ProfileKind::Monomial;
    h.eta = eta;
    h.m = m;
    return h;
}

InitialProfile InitialProfile::quadratic(double curvature, double a) {
    InitialProfile h;
    h.kind = ProfileKind::Quadratic;
    h.eta = curvature;
    h.a = a;
    return h;
}

InitialProfile InitialProfile::scaled_separable(double eta, double sigma, double delta) {
    InitialProfile h;
    h.kind = ProfileKind::ScaledSeparable;
    h.eta = eta;
    h.sigma = sigma;
    h.delta = delta;
    return h;
}

double InitialProfile::base(double x, int k) const {
    switch (kind) {
        case ProfileKind::Monomial: {
            double coef = eta;
            for (int j = 0; j < k; ++j) coef *= (m - j);
            if (coef == 0.0) return 0.0;
            return coef * std::pow(x, m - k);
        }
        case ProfileKind::Quadratic:
            if (k == 0) return 0.5 * eta * x * x + a * x;
            if (k == 1) return eta * x + a;
            return (k == 2) ? eta : 0.0;
        case ProfileKind::ScaledSeparable:
            return eta * separable_x(sigma, delta, x, k);
    }
    return 0.0;
}

bool InitialProfile::odd_monomial() const {
    if (kind != ProfileKind::Monomial) return false;
    if (!(m >= 1.0) || m != std::round(m) || m > 1.0e6) return false;
    return static_cast<long>(m) % 2 == 1;
}

TimeFunction TimeFunction::constant(double value) { return polynomial({value}); }

TimeFunction TimeFunction::polynomial(std::vector<double> coeffs) {
    TimeFunction f;
    f.kind = Kind::Polynomial;
    f.coeffs = std::move(coeffs);
    return f;
}

TimeFunction TimeFunction::exponential(double amplitude, double rate) {
    TimeFunction f;
    f.kind = Kind::Exponential;
    f.amplitude = amplitude;
    f.rate = rate;
    return f;
}

TimeFunction TimeFunction::power(double amplitude, double exponent) {
    TimeFunction f;
    f.kind = Kind::Power;
    f.amplitude = amplitude;
    f.exponent = exponent;
    return f;
}

double TimeFunction::operator()(double t) const {
    switch (kind) {
        case Kind::Polynomial: {
            double v = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
            return v;
        }
        case Kind::Exponential:
            return amplitude * std::exp(rate * t);
        case Kind::Power:
            if (exponent == 0.0) return amplitude;
            return amplitude * std::pow(t, exponent);
    }
    return 0.0;
}

double TimeFunction::integral(double t) const {
    switch (kind) {
        case Kind::Polynomial: {
            double v = 0.0;
            for (std::size_t k = coeffs.size(); k-- > 0;) v = v * t + coeffs[k] / static_cast<double>(k + 1);
            return v * t;
        }
        case Kind::Exponential:
            if (rate == 0.0) return amplitude * t;
            return amplitude * std::expm1(rate * t) / rate;
        case Kind::Power:
            if (!locally_integrable()) {
                throw ConstructionError("time function t^n with n <= -1 is not integrable at 0");
            }
            return amplitude * std::pow(t, exponent + 1.0) / (exponent + 1.0);
    }
    return 0.0;
}

bool TimeFunction::locally_integrable() const {
    if (kind == Kind::Power) return exponent > -1.0 && std::isfinite(amplitude);
    if (kind == Kind::Exponential) return std::isfinite(amplitude) && std::isfinite(rate);
    for (double c : coeffs) {
        if (!std::isfinite(c)) return false;
    }
    return true;
}

bool TimeFunction::strictly_positive() const {
    switch (kind) {
        case Kind::Polynomial:
            if (coeffs.empty() || !(coeffs.front() > 0.0)) return false;
            for (double c : coeffs) {
                if (c < 0.0) return false;
            }
            return true;
        case Kind::Exponential:
        case Kind::Power:
            return amplitude > 0.0;
    }
    return false;
}

FluxLaw FluxLaw::zero() {
    FluxLaw f;
    f.kind = FluxKind::Zero;
    f.nu = 0.0;
    return f;
}

FluxLaw FluxLaw::constant(double nu) {
    FluxLaw f;
    f.kind = FluxKind::Constant;
    f.nu = nu;
    return f;
}

FluxLaw FluxLaw::linear(double nu) {
    FluxLaw f;
    f.kind = FluxKind::Linear;
    f.nu = nu;
    return f;
}

FluxLaw FluxLaw::affine(TimeFunction f1, TimeFunction f2) {
    FluxLaw f;
    f.kind = FluxKind::Affine;
    f.f1 = std::move(f1);
    f.f2 = std::move(f2);
    return f;
}

FluxLaw FluxLaw::power_law(double n, TimeFunction fn) {
    FluxLaw f;
    f.kind = FluxKind::PowerLaw;
    f.n = n;
    f.f = std::move(fn);
    return f;
}

double FluxLaw::operator()(double flux, double t) const {
    switch (kind) {
        case FluxKind::Zero: return 0.0;
        case FluxKind::Constant: return nu;
        case FluxKind::Linear: return nu * flux;
        case FluxKind::Affine: return f1(t) + f2(t) * flux;
        case FluxKind::PowerLaw: return std::pow(flux, n) * f(t);
    }
    return 0.0;
}

namespace {

// h'' == cΦ at a handful of points, c the constant value of F.
bool stationary_pairing(const ProblemSpec& p) {
    double c = 0.0;
    if (p.flux.kind == FluxKind::Constant) {
        c = p.flux.nu;
    } else if (p.flux.kind != FluxKind::Zero) {
        return false;
    }
    for (double x : {0.25, 0.5, 1.0, 2.0, 3.0}) {
        const double lhs = p.h.base(x, 2);
        const double rhs = c * p.phi.base(x, 0);
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        if (!(std::abs(lhs - rhs) <= 1e-12 * scale)) return false;
    }
    return p.h.base(0.0, 0) == 0.0;
}

bool integral_rep_shape(ShapeKind kind) {
    return kind == ShapeKind::LinearX || kind == ShapeKind::NegSinh || kind == ShapeKind::NegSin;
}

}  // namespace

Family classify(const ProblemSpec& spec) {
    const ProblemSpec p = underlying_p(spec);
    if (stationary_pairing(p)) return Family::Stationary;
    if (p.phi.kind == ShapeKind::ScaledSeparable && p.h.kind == ProfileKind::ScaledSeparable &&
        p.phi.sigma == p.h.sigma && p.phi.delta == p.h.delta &&
        (p.flux.kind == FluxKind::Linear || p.flux.kind == FluxKind::Affine ||
         p.flux.kind == FluxKind::PowerLaw)) {
        return Family::Separated;
    }
    if (p.flux.kind == FluxKind::Linear && integral_rep_shape(p.phi.kind) &&
        p.h.kind == ProfileKind::Monomial) {
        return Family::IntegralRep;
    }
    return Family::Unsupported;
}

std::vector<Violation> validate(const ProblemSpec& spec, bool closed_form_flux) {
    std::vector<Violation> out;
    auto add = [&out](std::string code, std::string message) {
        out.push_back({std::move(code), std::move(message)});
    };

    const int expected_order = (spec.variant == Variant::PTilde) ? 1 : 0;
    if (spec.phi.order != expected_order || spec.h.order != expected_order) {
        add("variant", "derivative order of phi/h does not match the problem variant");
    }

    const ProblemSpec p = underlying_p(spec);
    const SourceShape& phi = p.phi;
    const InitialProfile& h = p.h;
    const FluxLaw& f = p.flux;

    if (!finite_all({phi.lambda, phi.mu, phi.sigma, phi.delta, phi.scale})) {
        add("finite", "phi parameters must be finite");
    }
    if (!finite_all({h.eta, h.m, h.a, h.sigma, h.delta, f.nu, f.n})) {
        add("finite", "h and flux parameters must be finite");
    }

    switch (phi.kind) {
        case ShapeKind::LinearX:
            if (!(phi.lambda > 0.0)) add("positivity", "lambda must be positive");
            break;
        case ShapeKind::NegSinh:
        case ShapeKind::NegSin:
            if (!(phi.lambda > 0.0)) add("positivity", "lambda must be positive");
            if (!(phi.mu > 0.0)) add("positivity", "mu must be positive");
            break;
        case ShapeKind::ScaledSeparable:
            if (phi.delta == 0.0) add("separable", "delta must be non-zero");
            if (phi.scale == 0.0) add("separable", "scale must be non-zero");
            break;
        case ShapeKind::ConstantOne:
            break;
    }

    switch (h.kind) {
        case ProfileKind::Monomial:
            if (h.eta == 0.0) add("profile", "eta must be non-zero");
            if (!(h.m >= 1.0)) add("growth", "m must be at least 1");
            break;
        case ProfileKind::Quadratic:
            break;
        case ProfileKind::ScaledSeparable:
            if (h.eta == 0.0) add("profile", "eta must be non-zero");
            if (h.delta == 0.0) add("separable", "delta must be non-zero");
            break;
    }

    const double h0 = h.base(0.0, 0);
    if (!(std::abs(h0) <= 1e-14)) {
        add("compatibility", "h must vanish at x = 0");
    }

    const Family family = classify(p);
    switch (f.kind) {
        case FluxKind::Zero:
        case FluxKind::Constant:
            break;
        case FluxKind::Linear:
            if (family == Family::IntegralRep && !(f.nu > 0.0)) {
                add("positivity", "nu must be positive");
            }
            break;
        case FluxKind::Affine:
            if (!f.f1.locally_integrable() || !f.f2.locally_integrable()) {
                add("integrability", "f1 and f2 must be locally integrable");
            }
            break;
        case FluxKind::PowerLaw:
            if (!(f.n < 1.0)) add("power", "power-law exponent n must be below 1");
            if (!f.f.strictly_positive()) add("power", "f must be positive");
            if (!f.f.locally_integrable()) add("integrability", "f must be locally integrable");
            if (phi.kind == ShapeKind::ScaledSeparable &&
                !(phi.scale > 0.0 && phi.delta > 0.0 && h.eta > 0.0)) {
                add("power", "power-law separated solutions need positive scale, delta and eta");
            }
            break;
    }

    if (family == Family::Separated && (phi.sigma != h.sigma || phi.delta != h.delta)) {
        add("separable", "phi and h must share sigma and delta");
    }
    if (family == Family::Unsupported) {
        add("family", "no explicit solution family matches this combination of phi, F and h");
    }
    if (closed_form_flux && family == Family::IntegralRep && !h.odd_monomial()) {
        add("odd_m", "m must be odd for polynomial flux");
    }
    return out;
}

DerivedParameters derive_parameters(const ProblemSpec& spec) {
    const ProblemSpec p = underlying_p(spec);
    DerivedParameters d;
    const bool linear = p.flux.kind == FluxKind::Linear;
    if (p.phi.kind == ShapeKind::NegSinh && linear) {
        d.sigma = p.phi.lambda + p.flux.nu * p.phi.mu;
    }
    if (p.phi.kind == ShapeKind::NegSin && linear) {
        d.delta = p.phi.lambda - p.flux.nu * p.phi.mu;
    }
    if (p.phi.kind == ShapeKind::ScaledSeparable) {
        d.sigma = p.phi.sigma;
        d.delta = p.phi.delta;
        if (linear) d.gamma = p.phi.scale * p.flux.nu * p.phi.delta;
    }
    if (p.h.kind == ProfileKind::Monomial && p.h.m >= 1.0) {
        const double m = p.h.m;
        const double g = (m == std::round(m)) ? specfun::gamma_half(0.5 * m) : std::tgamma(0.5 * m);
        d.c = std::pow(2.0, m - 1.0) * m * p.h.eta * g / std::sqrt(std::numbers::pi);
        if (p.h.odd_monomial()) d.p = static_cast<int>((m - 1.0) / 2.0);
    }
    return d;
}

ProblemSpec transform_to_tilde(const ProblemSpec& spec) {
    if (spec.variant == Variant::PTilde) {
        throw ConstructionError("transform_to_tilde: spec is already a tilde problem");
    }
    ProblemSpec t = spec;
    t.variant = Variant::PTilde;
    t.phi.order = 1;
    t.h.order = 1;
    return t;
}

ProblemSpec underlying_p(const ProblemSpec& spec) {
    ProblemSpec p = spec;
    p.variant = Variant::P;
    p.phi.order = 0;
    p.h.order = 0;
    return p;
}

std::string to_string(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::LinearX: return "LinearX";
        case ShapeKind::NegSinh: return "NegSinh";
        case ShapeKind::NegSin: return "NegSin";
        case ShapeKind::ScaledSeparable: return "ScaledSeparable";
        case ShapeKind::ConstantOne: return "ConstantOne";
    }
    return "?";
}

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::Monomial: return "Monomial";
        case ProfileKind::Quadratic: return "Quadratic";
        case ProfileKind::ScaledSeparable: return "ScaledSeparable";
    }
    return "?";
}

std::string to_string(FluxKind kind) {
    switch (kind) {
        case FluxKind::Zero: return "Zero";
        case FluxKind::Constant: return "Constant";
        case FluxKind::Linear: return "Linear";
        case FluxKind::Affine: return "Affine";
        case FluxKind::PowerLaw: return "PowerLaw";
    }
    return "?";
}

std::string to_string(Family family) {
    switch (family) {
        case Family::Stationary: return "Stationary";
        case Family::Separated: return "Separated";
        case Family::IntegralRep: return "IntegralRep";
        case Family::Unsupported: return "Unsupported";
    }
    return "?";
}

}  // namespace fluxheat
