#include "fluxheat/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "fluxheat/errors.hpp"
#include "fluxheat/green.hpp"
#include "fluxheat/specfun.hpp"

namespace fluxheat {

Kernel Kernel::constant_lambda(double lambda) {
    Kernel k;
    k.kind = KernelKind::ConstantLambda;
    k.lambda = lambda;
    return k;
}

Kernel Kernel::growing_exp(double lambda, double mu) {
    Kernel k;
    k.kind = KernelKind::GrowingExp;
    k.lambda = lambda;
    k.mu = mu;
    return k;
}

Kernel Kernel::decaying_exp(double lambda, double mu) {
    Kernel k;
    k.kind = KernelKind::DecayingExp;
    k.lambda = lambda;
    k.mu = mu;
    return k;
}

Kernel Kernel::for_shape(const SourceShape& phi) {
    switch (phi.kind) {
        case ShapeKind::LinearX: return constant_lambda(phi.lambda);
        case ShapeKind::NegSinh: return growing_exp(phi.lambda, phi.mu);
        case ShapeKind::NegSin: return decaying_exp(phi.lambda, phi.mu);
        default: break;
    }
    throw ConstructionError("Kernel::for_shape: no analytic kernel for " + to_string(phi.kind));
}

Kernel Kernel::quadrature(const SourceShape& phi) {
    Kernel k;
    k.kind = KernelKind::Quadrature;
    k.shape = phi;
    k.shape.order = 0;
    return k;
}

double Kernel::rho() const {
    switch (kind) {
        case KernelKind::ConstantLambda: return lambda;
        case KernelKind::GrowingExp:
        case KernelKind::DecayingExp: return -lambda * mu;
        case KernelKind::Quadrature: break;
    }
    throw DomainError("Kernel::rho: quadrature kernels have no closed form");
}

double Kernel::kappa() const {
    switch (kind) {
        case KernelKind::ConstantLambda: return 0.0;
        case KernelKind::GrowingExp: return lambda * lambda;
        case KernelKind::DecayingExp: return -lambda * lambda;
        case KernelKind::Quadrature: break;
    }
    throw DomainError("Kernel::kappa: quadrature kernels have no closed form");
}

double kernel_eval(const Kernel& k, double t) {
    if (!(t > 0.0)) throw DomainError("kernel_eval: t must be positive");
    if (k.analytic()) return k.rho() * std::exp(k.kappa() * t);
    const SourceShape& phi = k.shape;
    auto integrand = [&](double xi) { return xi * std::exp(-xi * xi / (4.0 * t)) * phi.base(xi, 0); };
    QuadOptions opts;
    opts.abs_tol = 1e-13;
    opts.rel_tol = 1e-13;
    const double integral = quad_semiinfinite(integrand, 0.0, t, growth_rate(phi), opts).value;
    return integral / (2.0 * std::sqrt(std::numbers::pi) * std::pow(t, 1.5));
}

Forcing Forcing::power_law(double c, double exponent) {
    Forcing f;
    f.kind = ForcingKind::PowerLaw;
    f.c = c;
    f.exponent = exponent;
    return f;
}

Forcing Forcing::for_monomial(const InitialProfile& h) {
    if (h.kind != ProfileKind::Monomial) {
        throw ConstructionError("Forcing::for_monomial: h must be a monomial");
    }
    ProblemSpec s;
    s.h = h;
    s.h.order = 0;
    const DerivedParameters d = derive_parameters(s);
    return power_law(d.c.value(), 0.5 * (h.m - 1.0));
}

Forcing Forcing::quadrature(const InitialProfile& h) {
    Forcing f;
    f.kind = ForcingKind::Quadrature;
    f.h = h;
    f.h.order = 0;
    return f;
}

double Forcing::initial_value() const {
    if (kind == ForcingKind::PowerLaw) return (exponent == 0.0) ? c : 0.0;
    return h.base(0.0, 1);
}

double forcing_eval(const Forcing& f, double t) {
    if (!(t > 0.0)) throw DomainError("forcing_eval: t must be positive");
    if (f.kind == ForcingKind::PowerLaw) {
        return (f.exponent == 0.0) ? f.c : f.c * std::pow(t, f.exponent);
    }
    auto integrand = [&](double xi) { return std::exp(-xi * xi / (4.0 * t)) * f.h.base(xi, 1); };
    QuadOptions opts;
    opts.abs_tol = 1e-13;
    opts.rel_tol = 1e-13;
    const double integral = quad_semiinfinite(integrand, 0.0, t, growth_rate(f.h), opts).value;
    return integral / std::sqrt(std::numbers::pi * t);
}

namespace {

// Weights of ∫ g(s) ℓ(s) ds over s ∈ [kh, (k+1)h] for the two linear hat pieces:
// a_k pairs with the node at s = kh, b_k with the node at s = (k+1)h.
struct ProductWeights {
    std::vector<double> a;
    std::vector<double> b;
};

ProductWeights exponential_weights(double rho, double kappa, double h, int n) {
    ProductWeights w;
    w.a.resize(n);
    w.b.resize(n);
    const double m0 = specfun::exp_moment(0, kappa, h);
    const double m1 = specfun::exp_moment(1, kappa, h);
    for (int k = 0; k < n; ++k) {
        const double scale = rho * std::exp(kappa * k * h);
        w.a[k] = scale * (m0 - m1 / h);
        w.b[k] = scale * m1 / h;
    }
    return w;
}

ProductWeights gauss_weights(const std::function<double(double)>& g, double h, int n) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    ProductWeights w;
    w.a.resize(n);
    w.b.resize(n);
    for (int k = 0; k < n; ++k) {
        const double lo = k * h;
        const double hi = (k + 1) * h;
        w.a[k] = Rule::integrate([&](double s) { return g(s) * (hi - s) / h; }, lo, hi);
        w.b[k] = Rule::integrate([&](double s) { return g(s) * (s - lo) / h; }, lo, hi);
    }
    return w;
}

ProductWeights kernel_weights(const Kernel& k, double h, int n) {
    if (k.analytic()) return exponential_weights(k.rho(), k.kappa(), h, n);
    return gauss_weights([&](double s) { return kernel_eval(k, s); }, h, n);
}

// Σ_{j=1}^{i} (a_{i-j} y_j + b_{i-j} y_{j-1}), skipping the unknown y_i.
double history(const ProductWeights& w, const std::vector<double>& y, int i) {
    double sum = w.b[i - 1] * y[0];
    for (int j = 1; j < i; ++j) {
        sum += w.a[i - j] * y[j] + w.b[i - j - 1] * y[j];
    }
    return sum;
}

void check_grid(double nu, double t_end, int n_steps) {
    if (!(nu > 0.0)) throw DomainError("volterra: nu must be positive");
    if (!(t_end > 0.0)) throw DomainError("volterra: t_end must be positive");
    if (n_steps < 2) throw DomainError("volterra: need at least two steps");
}

std::vector<double> solve_on_grid(const ProductWeights& w, const std::vector<double>& forcing, double nu) {
    const int n = static_cast<int>(forcing.size()) - 1;
    std::vector<double> y(n + 1);
    y[0] = forcing[0];
    const double diag = 1.0 + nu * w.a[0];
    for (int i = 1; i <= n; ++i) {
        y[i] = (forcing[i] - nu * history(w, y, i)) / diag;
    }
    return y;
}

std::vector<double> uniform_times(double t_end, int n) {
    std::vector<double> t(n + 1);
    for (int i = 0; i <= n; ++i) t[i] = t_end * i / n;
    return t;
}

}  // namespace

FluxTrajectory solve_volterra(const Kernel& k, const Forcing& f, double nu, double t_end, int n_steps) {
    check_grid(nu, t_end, n_steps);
    const double h = t_end / n_steps;
    const std::vector<double> times = uniform_times(t_end, n_steps);
    std::vector<double> forcing(n_steps + 1);
    forcing[0] = f.initial_value();
    for (int i = 1; i <= n_steps; ++i) forcing[i] = forcing_eval(f, times[i]);
    const ProductWeights w = kernel_weights(k, h, n_steps);
    return FluxTrajectory::sampled(times, solve_on_grid(w, forcing, nu));
}

FluxTrajectory solve_resolvent(const Kernel& k, const Forcing& f, double nu, double t_end, int n_steps) {
    check_grid(nu, t_end, n_steps);
    if (f.kind != ForcingKind::PowerLaw || f.exponent < 0.0 || f.exponent != std::round(f.exponent)) {
        throw DomainError("solve_resolvent: forcing must be c·t^p with integer p >= 0");
    }
    const double h = t_end / n_steps;
    const std::vector<double> times = uniform_times(t_end, n_steps);
    const ProductWeights w = kernel_weights(k, h, n_steps);
    const std::vector<double> r = solve_on_grid(w, std::vector<double>(n_steps + 1, 1.0), nu);

    const int p = static_cast<int>(f.exponent);
    std::vector<double> v(n_steps + 1);
    if (p == 0) {
        for (int i = 0; i <= n_steps; ++i) v[i] = f.c * r[i];
        return FluxTrajectory::sampled(times, v);
    }
    // V₀' = c·p·s^{p-1} convolved with the piecewise linear r.
    const ProductWeights dw = gauss_weights([&](double s) { return f.c * p * std::pow(s, p - 1); }, h, n_steps);
    v[0] = f.initial_value() * r[0];
    for (int i = 1; i <= n_steps; ++i) {
        double conv = 0.0;
        for (int j = 1; j <= i; ++j) conv += dw.a[i - j] * r[j] + dw.b[i - j] * r[j - 1];
        v[i] = f.initial_value() * r[i] + conv;
    }
    return FluxTrajectory::sampled(times, v);
}

double volterra_residual(const FluxTrajectory& v, const Kernel& k, const Forcing& f, double nu,
                         const std::vector<double>& t_samples) {
    double worst = 0.0;
    for (double t : t_samples) {
        double conv = 0.0;
        if (t > 0.0) {
            if (k.analytic()) {
                conv = k.rho() * v.weighted_integral(t, k.kappa());
            } else {
                QuadOptions opts;
                opts.abs_tol = 1e-12;
                opts.rel_tol = 1e-12;
                opts.initial_panels = 8;
                conv = integrate([&](double tau) { return kernel_eval(k, t - tau) * v(tau); }, 0.0, t, opts).value;
            }
        }
        const double v0 = (t > 0.0) ? forcing_eval(f, t) : f.initial_value();
        worst = std::max(worst, std::abs(v(t) - v0 + nu * conv));
    }
    return worst;
}

KernelBound kernel_bound(const Kernel& k, double t1, double t2) {
    if (!(t1 < t2)) throw DomainError("kernel_bound: requires t1 < t2");
    if (t1 < 0.0) throw DomainError("kernel_bound: requires t1 >= 0");
    const double d = t2 - t1;
    KernelBound b;
    double lambda = k.lambda;
    double mu = k.mu;
    KernelKind shape_kind = k.kind;
    if (k.analytic()) {
        b.lhs = k.rho() * specfun::exp_moment(0, k.kappa(), d);
    } else {
        QuadOptions opts;
        opts.abs_tol = 1e-12;
        opts.rel_tol = 1e-12;
        b.lhs = integrate([&](double s) { return kernel_eval(k, s); }, 0.0, d, opts).value;
        lambda = k.shape.lambda;
        mu = k.shape.mu;
        switch (k.shape.kind) {
            case ShapeKind::LinearX: shape_kind = KernelKind::ConstantLambda; break;
            case ShapeKind::NegSinh: shape_kind = KernelKind::GrowingExp; break;
            case ShapeKind::NegSin: shape_kind = KernelKind::DecayingExp; break;
            default: throw ConstructionError("kernel_bound: no reference bound for this shape");
        }
    }
    switch (shape_kind) {
        case KernelKind::ConstantLambda: b.rhs = -lambda * d; break;
        case KernelKind::GrowingExp: b.rhs = -(mu / lambda) * std::expm1(lambda * lambda * d); break;
        case KernelKind::DecayingExp: b.rhs = -(mu / lambda) * -std::expm1(-lambda * lambda * d); break;
        case KernelKind::Quadrature: break;
    }
    const double slack = 1e-12 * std::max({1.0, std::abs(b.lhs), std::abs(b.rhs)});
    b.holds = b.lhs >= b.rhs - slack;
    return b;
}

bool kernel_bound_check(const Kernel& k, double t1, double t2) { return kernel_bound(k, t1, t2).holds; }

Kernel kernel_for(const ProblemSpec& spec) { return Kernel::for_shape(underlying_p(spec).phi); }

Forcing forcing_for(const ProblemSpec& spec) {
    const InitialProfile h = underlying_p(spec).h;
    if (h.kind == ProfileKind::Monomial) return Forcing::for_monomial(h);
    return Forcing::quadrature(h);
}

}  // namespace fluxheat
