#include "fluxheat/asymptotics.hpp"

#include <cmath>
#include <sstream>

#include "fluxheat/closed_form.hpp"
#include "fluxheat/errors.hpp"
#include "fluxheat/volterra.hpp"

namespace fluxheat {

LimitClass LimitClass::infinity(double s) { return (s > 0.0) ? plus_infinity() : minus_infinity(); }

std::string to_string(const LimitClass& c) {
    switch (c.tag) {
        case LimitClass::Tag::Zero: return "Zero";
        case LimitClass::Tag::Finite: {
            std::ostringstream s;
            s.precision(17);
            s << "Finite(" << c.value << ")";
            return s.str();
        }
        case LimitClass::Tag::PlusInfinity: return "PlusInfinity";
        case LimitClass::Tag::MinusInfinity: return "MinusInfinity";
        case LimitClass::Tag::Unclassified: return "Unclassified";
    }
    return "?";
}

bool same_class(const LimitClass& a, const LimitClass& b, double rel_tol) {
    if (a.tag != b.tag) return false;
    if (a.tag != LimitClass::Tag::Finite) return true;
    const double scale = std::max({std::abs(a.value), std::abs(b.value), 1e-12});
    return std::abs(a.value - b.value) <= rel_tol * scale;
}

namespace {

struct IrData {
    double c = 0.0;
    int p = 0;
    double nu = 0.0;
    double rho = 0.0;
    double kappa = 0.0;
    double b = 0.0;
    bool resonant = false;
    bool phi1 = false;
};

IrData ir_data(const ProblemSpec& spec) {
    const ProblemSpec ps = underlying_p(spec);
    if (classify(ps) != Family::IntegralRep) {
        throw ConstructionError("limit: spec is not in the integral-representation family");
    }
    if (!ps.h.odd_monomial()) throw ConstructionError("limit: m must be odd");
    IrData d;
    const DerivedParameters dp = derive_parameters(ps);
    d.c = dp.c.value();
    d.p = dp.p.value();
    d.nu = ps.flux.nu;
    const Kernel k = Kernel::for_shape(ps.phi);
    d.rho = k.rho();
    d.kappa = k.kappa();
    d.b = d.kappa - d.nu * d.rho;
    d.resonant = std::abs(d.b) <= 1e-14 * (std::abs(d.kappa) + std::abs(d.nu * d.rho));
    d.phi1 = ps.phi.kind == ShapeKind::LinearX;
    return d;
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

LimitClass flux_limit(const ProblemSpec& spec) {
    const IrData d = ir_data(spec);
    if (d.phi1) {
        // V = c₁ Σ_{j<p} (-at)^j/j! - c₁e^{-at}: degree p-1 with leading coefficient c·p/a.
        if (d.p == 0) return LimitClass::zero();
        const double a = -d.b;
        if (d.p == 1) return LimitClass::finite(d.c / a);
        return LimitClass::infinity(d.c);
    }
    if (d.resonant) return LimitClass::infinity(-d.nu * d.rho * d.c);
    if (d.b > 0.0) {
        const double amp = -d.nu * d.rho * d.c * factorial(d.p) / std::pow(d.b, d.p + 1);
        return LimitClass::infinity(amp);
    }
    const double lead = d.c * d.kappa / d.b;
    if (d.p == 0) return LimitClass::finite(lead);
    return LimitClass::infinity(lead);
}

LimitClass flux_initial_limit(const ProblemSpec& spec) {
    const ProblemSpec ps = underlying_p(spec);
    if (classify(ps) != Family::IntegralRep) {
        throw ConstructionError("flux_initial_limit: spec is not in the integral-representation family");
    }
    if (ps.h.m == 1.0) return LimitClass::finite(ps.h.eta);
    return LimitClass::zero();
}

namespace {

ControlClasses control_constant_source(const ProblemSpec& p, double x) {
    ControlClasses c;
    c.u0 = LimitClass::infinity(p.h.eta);
    c.u = LimitClass::finite(p.h.base(x, 0));
    c.ratio = LimitClass::zero();
    return c;
}

LimitClass class_of_exponential(double amplitude, double rate) {
    if (amplitude == 0.0) return LimitClass::zero();
    if (rate == 0.0) return LimitClass::finite(amplitude);
    if (rate > 0.0) return LimitClass::infinity(amplitude);
    return LimitClass::zero();
}

ControlClasses control_separated(const ProblemSpec& p, double x) {
    const double sigma = p.phi.sigma;
    const double delta = p.phi.delta;
    const double xx = separable_x(sigma, delta, x, 0);
    const double eta = p.h.eta;
    const double hx = eta * xx;
    ControlClasses c;
    c.u0 = class_of_exponential(hx, sigma);

    if (p.flux.kind == FluxKind::Linear) {
        const double gamma = p.phi.scale * p.flux.nu * delta;
        c.u = class_of_exponential(hx, sigma - gamma);
        c.ratio = class_of_exponential(1.0, -gamma);
        if (hx == 0.0) c.ratio = LimitClass::unclassified();
        return c;
    }
    if (p.flux.kind != FluxKind::PowerLaw) {
        throw ConstructionError("control_classification: separated control needs F = νV or F = c·V^n");
    }
    const TimeFunction& f = p.flux.f;
    if (f.kind != TimeFunction::Kind::Polynomial || f.coeffs.size() != 1) {
        throw ConstructionError("control_classification: power law needs a constant coefficient");
    }
    const double n = p.flux.n;
    const double q = 1.0 - n;
    const double k = p.phi.scale * f.coeffs[0] * std::pow(delta, n);
    // W = T^q solves Ẇ = q(σW - k); T = W^{1/q} until W reaches 0.
    auto breakdown = [&]() {
        c.u = LimitClass::unclassified();
        c.ratio = LimitClass::unclassified();
        return c;
    };
    if (sigma > 0.0) {
        const double d = std::pow(eta, q) - k / sigma;
        if (std::abs(d) <= 1e-14 * std::max(std::pow(eta, q), k / sigma)) {
            c.u = LimitClass::finite(hx);
            c.ratio = LimitClass::zero();
        } else if (d > 0.0) {
            c.u = LimitClass::infinity(xx);
            c.ratio = LimitClass::finite(std::pow(d, 1.0 / q) / eta);
        } else if (n == 0.0) {
            c.u = LimitClass::infinity(-xx);
            c.ratio = LimitClass::finite(d / eta);
        } else if (n > 0.0) {
            c.u = LimitClass::zero();
            c.ratio = LimitClass::zero();
        } else {
            return breakdown();
        }
        return c;
    }
    if (n < 0.0) return breakdown();
    if (n > 0.0) {
        c.u = LimitClass::zero();
        c.ratio = LimitClass::zero();
        return c;
    }
    if (sigma == 0.0) {
        c.u = LimitClass::infinity(-xx);
        c.ratio = LimitClass::minus_infinity();
    } else {
        c.u = LimitClass::finite(k / sigma * xx);
        c.ratio = LimitClass::infinity(k / sigma / eta);
    }
    return c;
}

ControlClasses control_integral_rep(const ProblemSpec& p, double x) {
    const IrData d = ir_data(p);
    const double eta = p.h.eta;
    ControlClasses c;
    c.u0 = (d.p == 0) ? LimitClass::finite(eta * x) : LimitClass::infinity(eta);

    if (d.phi1) {
        // u = u₀ + x(V - ct^p)
        const double a = -d.b;
        if (d.p == 0) {
            c.u = LimitClass::zero();
        } else if (d.p == 1) {
            c.u = LimitClass::finite(eta * x * x * x + d.c * x / a);
        } else {
            c.u = LimitClass::infinity(eta);
        }
        c.ratio = LimitClass::zero();
        return c;
    }

    // u = u₀ + ψ(x)(V - ct^p), ψ = Φ/ρ
    const double psi = p.phi.base(x, 0) / d.rho;
    if (psi == 0.0) {
        c.u = c.u0;
        c.ratio = LimitClass::finite(1.0);
        return c;
    }
    if (d.resonant) {
        const double lead = -psi * d.nu * d.rho * d.c;
        c.u = LimitClass::infinity(lead);
        c.ratio = LimitClass::infinity(lead * eta);
        return c;
    }
    if (d.b > 0.0) {
        const double amp = -d.nu * d.rho * d.c * factorial(d.p) / std::pow(d.b, d.p + 1);
        c.u = LimitClass::infinity(psi * amp);
        c.ratio = LimitClass::infinity(psi * amp * eta);
        return c;
    }
    // Decaying exponential: u → c·t^p·B(x) with B = x + ψνρ/b.
    const double bx = x + psi * d.nu * d.rho / d.b;
    if (d.p == 0) {
        c.u = LimitClass::finite(d.c * bx);
    } else {
        c.u = (bx == 0.0) ? LimitClass::unclassified() : LimitClass::infinity(d.c * bx);
    }
    c.ratio = LimitClass::finite(bx / x);
    return c;
}

}  // namespace

ControlClasses control_classification(const ProblemSpec& spec, double x) {
    if (!(x > 0.0)) throw DomainError("control_classification: x must be positive");
    const ProblemSpec p = underlying_p(spec);
    const Family family = classify(p);
    if (family == Family::Stationary && p.phi.kind == ShapeKind::ConstantOne &&
        p.flux.kind == FluxKind::Constant && p.h.kind == ProfileKind::Quadratic) {
        return control_constant_source(p, x);
    }
    if (family == Family::Separated) return control_separated(p, x);
    if (family == Family::IntegralRep && p.h.odd_monomial()) return control_integral_rep(p, x);
    throw ConstructionError("control_classification: spec is not one of the control configurations");
}

LimitClass numeric_limit_probe(const std::function<double(double)>& g, const std::vector<double>& ladder,
                               double rel_tol) {
    if (ladder.size() < 2) throw DomainError("numeric_limit_probe: ladder needs at least two times");
    std::vector<double> v;
    for (double t : ladder) {
        const double y = g(t);
        if (std::isnan(y)) return LimitClass::unclassified();
        v.push_back(y);
    }
    const std::size_t n = v.size();

    bool shrinking = true;
    bool growing = true;
    for (std::size_t i = 1; i < n; ++i) {
        const double prev = std::abs(v[i - 1]);
        const double cur = std::abs(v[i]);
        if (!(cur <= 0.5 * prev)) shrinking = false;
        if (!(cur >= 2.0 * prev) || !(v[i] * v[i - 1] > 0.0)) growing = false;
    }
    if (v.back() == 0.0 || shrinking) return LimitClass::zero();
    if (growing) return LimitClass::infinity(v.back());

    const double last = v[n - 1];
    const double before = v[n - 2];
    if (std::isfinite(last) && std::abs(last - before) <= rel_tol * std::max(std::abs(last), 1e-300)) {
        return LimitClass::finite(last);
    }
    return LimitClass::unclassified();
}

const std::vector<double>& probe_ladder(const ProblemSpec& spec) {
    const ProblemSpec p = underlying_p(spec);
    switch (classify(p)) {
        case Family::Separated: return kDefaultProbeLadder;
        case Family::IntegralRep: {
            if (!p.h.odd_monomial()) return kDefaultProbeLadder;
            const FluxTrajectory v = flux_closed_form(p);
            for (const ExpTerm& e : v.exponentials()) {
                if (e.rate > 0.0) return kDefaultProbeLadder;
            }
            return kAlgebraicProbeLadder;
        }
        default: return kAlgebraicProbeLadder;
    }
}

}  // namespace fluxheat
