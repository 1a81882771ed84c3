#include "fluxheat/green.hpp"

#include <algorithm>
#include <cmath>

#include "fluxheat/baseline.hpp"
#include "fluxheat/errors.hpp"
#include "fluxheat/specfun.hpp"

namespace fluxheat {

double green_eval(double x, double t, double xi, double tau) {
    if (x < 0.0 || xi < 0.0) throw DomainError("green_eval: x and xi must be non-negative");
    if (!(tau < t)) throw DomainError("green_eval: requires tau < t");
    return specfun::heat_kernel(x, t, xi, tau) - specfun::heat_kernel(-x, t, xi, tau);
}

QuadResult quad_semiinfinite(const std::function<double(double)>& f, double x, double s, double growth,
                             const QuadOptions& opts) {
    if (!(s > 0.0)) throw DomainError("quad_semiinfinite: time separation must be positive");
    const double width = 2.0 * std::sqrt(s);
    const double lo = std::max(0.0, x - kGaussianWidths * width);
    const double hi = x + 2.0 * std::max(growth, 0.0) * s + kGaussianWidths * width;
    QuadOptions o = opts;
    const double panels = std::ceil((hi - lo) / std::sqrt(s));
    o.initial_panels = static_cast<int>(std::clamp(panels, 1.0, 512.0));
    return integrate(f, lo, hi, o);
}

double growth_rate(const SourceShape& phi) {
    if (phi.kind == ShapeKind::NegSinh) return std::abs(phi.lambda);
    if (phi.kind == ShapeKind::ScaledSeparable && phi.sigma > 0.0) return std::sqrt(phi.sigma);
    return 0.0;
}

double growth_rate(const InitialProfile& h) {
    if (h.kind == ProfileKind::ScaledSeparable && h.sigma > 0.0) return std::sqrt(h.sigma);
    return 0.0;
}

double baseline_u0(const InitialProfile& h, double x, double t, const QuadOptions& opts) {
    if (t < 0.0) throw DomainError("baseline_u0: t must be non-negative");
    if (t == 0.0) return h.base(x, 0);
    auto integrand = [&](double xi) { return green_eval(x, t, xi, 0.0) * h.base(xi, 0); };
    return quad_semiinfinite(integrand, x, t, growth_rate(h), opts).value;
}

double green_phi_rate(const SourceShape& phi) {
    switch (phi.kind) {
        case ShapeKind::LinearX: return 0.0;
        case ShapeKind::NegSinh: return phi.lambda * phi.lambda;
        case ShapeKind::NegSin: return -phi.lambda * phi.lambda;
        case ShapeKind::ScaledSeparable: return phi.sigma;
        case ShapeKind::ConstantOne: break;
    }
    throw ConstructionError("green_phi_rate: no exponential closed form for a constant source");
}

IdentityCheck verify_identity_phi(const SourceShape& phi, double x, double t, double tau, const QuadOptions& opts) {
    const double s = t - tau;
    auto integrand = [&](double xi) { return green_eval(x, t, xi, tau) * phi.base(xi, 0); };
    IdentityCheck c;
    c.lhs = quad_semiinfinite(integrand, x, s, growth_rate(phi), opts).value;
    if (phi.kind == ShapeKind::ConstantOne) {
        c.rhs = specfun::erf(x / (2.0 * std::sqrt(s)));
    } else {
        c.rhs = std::exp(green_phi_rate(phi) * s) * phi.base(x, 0);
    }
    c.diff = std::abs(c.lhs - c.rhs);
    return c;
}

IdentityCheck verify_identity_h(const InitialProfile& h, double x, double t, const QuadOptions& opts) {
    const auto closed = baseline_u0_closed(h, x, t);
    if (!closed) throw ConstructionError("verify_identity_h: no closed-form u0 for this profile");
    IdentityCheck c;
    c.lhs = baseline_u0(h, x, t, opts);
    c.rhs = *closed;
    c.diff = std::abs(c.lhs - c.rhs);
    return c;
}

double assemble_integral_representation(const ProblemSpec& spec, double x, double t, const FluxTrajectory& v,
                                        bool slow) {
    const ProblemSpec p = underlying_p(spec);
    if (p.flux.kind != FluxKind::Linear) {
        throw ConstructionError("assemble_integral_representation: flux law must be linear");
    }
    if (t < 0.0) throw DomainError("assemble_integral_representation: t must be non-negative");
    if (t == 0.0) return p.h.base(x, 0);

    const double nu = p.flux.nu;
    const bool closed_inner = p.phi.kind != ShapeKind::ConstantOne;

    if (!slow && closed_inner) {
        const auto u0_closed = baseline_u0_closed(p.h, x, t);
        const double u0 = u0_closed ? *u0_closed : baseline_u0(p.h, x, t);
        return u0 - nu * p.phi.base(x, 0) * v.weighted_integral(t, green_phi_rate(p.phi));
    }

    QuadOptions inner_opts;
    inner_opts.abs_tol = 1e-12;
    inner_opts.rel_tol = 1e-12;
    const double g = growth_rate(p.phi);
    auto inner = [&](double tau) {
        auto integrand = [&](double xi) { return green_eval(x, t, xi, tau) * p.phi.base(xi, 0); };
        return quad_semiinfinite(integrand, x, t - tau, g, inner_opts).value;
    };
    QuadOptions outer_opts;
    outer_opts.abs_tol = 1e-10;
    outer_opts.rel_tol = 1e-10;
    outer_opts.initial_panels = 4;
    const double source = integrate([&](double tau) { return inner(tau) * v(tau); }, 0.0, t, outer_opts).value;
    return baseline_u0(p.h, x, t, inner_opts) - nu * source;
}

}  // namespace fluxheat
