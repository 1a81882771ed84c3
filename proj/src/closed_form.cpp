#include "fluxheat/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "fluxheat/errors.hpp"
#include "fluxheat/quadrature.hpp"
#include "fluxheat/specfun.hpp"
#include "fluxheat/volterra.hpp"

namespace fluxheat {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Stationary: return "Stationary";
        case Provenance::Separated: return "Separated";
        case Provenance::IntegralRepPhi1: return "IntegralRepPhi1";
        case Provenance::IntegralRepPhi2: return "IntegralRepPhi2";
        case Provenance::IntegralRepPhi3: return "IntegralRepPhi3";
    }
    return "?";
}

SolutionField::SolutionField(ProblemSpec spec, Provenance provenance, Evaluator eval,
                             std::optional<FluxTrajectory> trajectory)
    : spec_(std::move(spec)), provenance_(provenance), eval_(std::move(eval)), trajectory_(std::move(trajectory)) {}

double SolutionField::flux(double t) const {
    return (spec_.variant == Variant::PTilde) ? eval_(0.0, t, 0) : eval_(0.0, t, 1);
}

double SolutionField::source(double x, double t) const { return spec_.phi(x) * spec_.flux(flux(t), t); }

SolutionField stationary_solution(const ProblemSpec& spec) {
    const ProblemSpec p = underlying_p(spec);
    if (classify(p) != Family::Stationary) {
        throw ConstructionError("stationary_solution: needs F constant (or zero) with h'' = F·Φ and h(0) = 0");
    }
    const InitialProfile h = p.h;
    auto eval = [h](double x, double, int k) { return h.base(x, k); };
    return SolutionField(p, Provenance::Stationary, eval, FluxTrajectory::closed({h.base(0.0, 1)}, {}));
}

namespace {

QuadOptions tight() {
    QuadOptions o;
    o.abs_tol = 1e-14;
    o.rel_tol = 1e-13;
    return o;
}

// ∫₀ᵗ f(s) e^{rate·s} ds.
double weighted_time_integral(const TimeFunction& f, double rate, double t) {
    if (t <= 0.0) return 0.0;
    switch (f.kind) {
        case TimeFunction::Kind::Polynomial: {
            double sum = 0.0;
            for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
                if (f.coeffs[k] != 0.0) sum += f.coeffs[k] * specfun::exp_moment(static_cast<int>(k), rate, t);
            }
            return sum;
        }
        case TimeFunction::Kind::Exponential:
            return f.amplitude * specfun::exp_moment(0, rate + f.rate, t);
        case TimeFunction::Kind::Power:
            break;
    }
    return integrate([&](double s) { return f(s) * std::exp(rate * s); }, 0.0, t, tight()).value;
}

bool constant_function(const TimeFunction& f) {
    return f.kind == TimeFunction::Kind::Polynomial && f.coeffs.size() <= 1;
}

}  // namespace

double separated_t(const ProblemSpec& spec, double t) {
    const ProblemSpec p = underlying_p(spec);
    const double sigma = p.phi.sigma;
    const double delta = p.phi.delta;
    const double ls = p.phi.scale;
    const double eta = p.h.eta;
    switch (p.flux.kind) {
        case FluxKind::Linear: {
            const double gamma = ls * p.flux.nu * delta;
            return eta * std::exp((sigma - gamma) * t);
        }
        case FluxKind::Affine: {
            const TimeFunction& f1 = p.flux.f1;
            const TimeFunction& f2 = p.flux.f2;
            if (constant_function(f2)) {
                const double c2 = f2.coeffs.empty() ? 0.0 : f2.coeffs[0];
                const double rate = sigma - ls * delta * c2;
                return std::exp(rate * t) * (eta - ls * weighted_time_integral(f1, -rate, t));
            }
            auto g = [&](double s) { return sigma * s - ls * delta * f2.integral(s); };
            double inner = 0.0;
            if (t > 0.0) {
                inner = integrate([&](double s) { return f1(s) * std::exp(-g(s)); }, 0.0, t, tight()).value;
            }
            return std::exp(g(t)) * (eta - ls * inner);
        }
        case FluxKind::PowerLaw: {
            const double n = p.flux.n;
            const double q = 1.0 - n;
            const double w = std::exp(q * sigma * t) *
                             (std::pow(eta, q) - q * ls * std::pow(delta, n) *
                                                     weighted_time_integral(p.flux.f, -q * sigma, t));
            if (n == 0.0) return w;
            return (w > 0.0) ? std::pow(w, 1.0 / q) : 0.0;
        }
        default:
            break;
    }
    throw ConstructionError("separated_t: flux law must be Linear, Affine or PowerLaw");
}

SolutionField separated_solution(const ProblemSpec& spec) {
    const ProblemSpec p = underlying_p(spec);
    if (classify(p) != Family::Separated) {
        throw ConstructionError("separated_solution: needs Φ = λX, h = ηX sharing σ, δ and a Linear, Affine or "
                                "PowerLaw flux law");
    }
    if (p.flux.kind == FluxKind::PowerLaw) {
        if (!(p.phi.scale > 0.0 && p.phi.delta > 0.0 && p.h.eta > 0.0)) {
            throw ConstructionError("separated_solution: power law needs positive scale, delta and eta");
        }
        if (!(p.flux.n < 1.0)) throw ConstructionError("separated_solution: power law needs n < 1");
        if (!p.flux.f.locally_integrable()) throw ConstructionError("separated_solution: f is not integrable");
    }
    if (p.flux.kind == FluxKind::Affine &&
        !(p.flux.f1.locally_integrable() && p.flux.f2.locally_integrable())) {
        throw ConstructionError("separated_solution: f1 and f2 must be locally integrable");
    }
    std::optional<FluxTrajectory> traj;
    if (p.flux.kind == FluxKind::Linear) {
        const double gamma = p.phi.scale * p.flux.nu * p.phi.delta;
        traj = FluxTrajectory::closed({}, {ExpTerm{p.phi.delta * p.h.eta, p.phi.sigma - gamma}});
    }
    auto eval = [p](double x, double t, int k) {
        return separable_x(p.phi.sigma, p.phi.delta, x, k) * separated_t(p, t);
    };
    return SolutionField(p, Provenance::Separated, eval, traj);
}

FluxTrajectory flux_closed_form(const ProblemSpec& spec) {
    const ProblemSpec ps = underlying_p(spec);
    if (classify(ps) != Family::IntegralRep) {
        throw ConstructionError("flux_closed_form: needs Φ ∈ {λx, -μ sinh λx, -μ sin λx}, F = νV, h = ηx^m");
    }
    if (!ps.h.odd_monomial()) throw ConstructionError("flux_closed_form: m must be odd for polynomial flux");
    const double nu = ps.flux.nu;
    if (!(nu > 0.0)) throw ConstructionError("flux_closed_form: nu must be positive");

    const DerivedParameters d = derive_parameters(ps);
    const double c = d.c.value();
    const int p = d.p.value();
    const Kernel k = Kernel::for_shape(ps.phi);
    const double rho = k.rho();
    const double kappa = k.kappa();
    // Laplace transform: V̂ = V̂₀ (s - κ)/(s - b), b = κ - νρ.
    const double b = kappa - nu * rho;
    const bool resonant = std::abs(b) <= 1e-14 * (std::abs(kappa) + std::abs(nu * rho));

    std::vector<double> poly(p + 2, 0.0);
    std::vector<ExpTerm> exps;
    if (resonant) {
        // V = c t^p - νρ c t^{p+1}/(p+1)
        poly[p] = c;
        poly[p + 1] = -nu * rho * c / (p + 1);
    } else {
        // V = (cκ/b) t^p - A Σ_{k<p} (bt)^k/k! + A e^{bt},  A = -νρ c p!/b^{p+1}
        double factorial = 1.0;
        for (int j = 2; j <= p; ++j) factorial *= j;
        const double amp = -nu * rho * c * factorial / std::pow(b, p + 1);
        double term = 1.0;  // b^j / j!
        for (int j = 0; j < p; ++j) {
            if (j > 0) term *= b / j;
            poly[j] = -amp * term;
        }
        poly[p] = c * kappa / b;
        poly.pop_back();
        exps.push_back({amp, b});
    }
    FluxTrajectory v = FluxTrajectory::closed(std::move(poly), std::move(exps));

#ifndef NDEBUG
    {
        std::vector<double> ts;
        for (int i = 1; i <= 50; ++i) ts.push_back(0.1 * i);
        const double res = volterra_residual(v, k, Forcing::power_law(c, p), nu, ts);
        double scale = 1.0;
        for (double t : ts) scale = std::max(scale, std::abs(v(t)));
        if (res > 1e-8 * scale) {
            std::ostringstream msg;
            msg << "flux_closed_form: Volterra residual " << res << " exceeds tolerance";
            throw ConstructionError(msg.str());
        }
    }
#endif
    return v;
}

namespace {

// k-th x-derivative of the polynomial u₀ for h = ηx^m, m odd.
double u0_polynomial_dx(const InitialProfile& h, double x, double t, int k) {
    const int m = static_cast<int>(h.m);
    const int p = (m - 1) / 2;
    double sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= p; ++j) {
        if (j > 0) binom *= static_cast<double>(m - 2 * j + 2) * (m - 2 * j + 1) / ((2.0 * j - 1.0) * (2.0 * j));
        const int q = m - 2 * j;
        if (k > q) continue;
        double falling = 1.0;
        for (int r = 0; r < k; ++r) falling *= (q - r);
        const double g = specfun::gamma_half(specfun::HalfInteger{2 * j + 1});
        sum += binom * g * std::pow(4.0 * t, j) * falling * std::pow(x, q - k);
    }
    return h.eta * sum / std::sqrt(std::numbers::pi);
}

Provenance provenance_of(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::LinearX: return Provenance::IntegralRepPhi1;
        case ShapeKind::NegSinh: return Provenance::IntegralRepPhi2;
        default: return Provenance::IntegralRepPhi3;
    }
}

}  // namespace

SolutionField integral_rep_solution(const ProblemSpec& spec) {
    const ProblemSpec p = underlying_p(spec);
    const FluxTrajectory v = flux_closed_form(p);
    const double kappa = Kernel::for_shape(p.phi).kappa();
    const double nu = p.flux.nu;
    auto eval = [p, v, kappa, nu](double x, double t, int k) {
        const double w = (t > 0.0) ? v.weighted_integral(t, kappa) : 0.0;
        return u0_polynomial_dx(p.h, x, t, k) - nu * p.phi.base(x, k) * w;
    };
    return SolutionField(p, provenance_of(p.phi.kind), eval, v);
}

SolutionField solution_for(const ProblemSpec& spec) {
    if (spec.variant == Variant::PTilde) return tilde_solution(spec);
    switch (classify(spec)) {
        case Family::Stationary: return stationary_solution(spec);
        case Family::Separated: return separated_solution(spec);
        case Family::IntegralRep: return integral_rep_solution(spec);
        case Family::Unsupported: break;
    }
    throw ConstructionError("no explicit solution family matches this spec");
}

SolutionField tilde_solution(const ProblemSpec& spec) {
    if (spec.variant != Variant::PTilde) throw ConstructionError("tilde_solution: spec must be a tilde problem");
    const SolutionField base = solution_for(underlying_p(spec));
    auto eval = [base](double x, double t, int k) { return base.derivative(x, t, k + 1); };
    return SolutionField(spec, base.provenance(), eval, base.trajectory());
}

PdeResidual pde_residual(const SolutionField& field, double x, double t, double h) {
    if (!(t - h > 0.0)) throw DomainError("pde_residual: need t > h");
    auto central = [&](double step) {
        const double u0 = field.u(x, t);
        const double ut = (field.u(x, t + step) - field.u(x, t - step)) / (2.0 * step);
        const double uxx = (field.u(x + step, t) - 2.0 * u0 + field.u(x - step, t)) / (step * step);
        return std::pair<double, double>{ut, uxx};
    };
    const auto [ut1, uxx1] = central(h);
    const auto [ut2, uxx2] = central(0.5 * h);
    const double ut = (4.0 * ut2 - ut1) / 3.0;
    const double uxx = (4.0 * uxx2 - uxx1) / 3.0;
    PdeResidual r;
    r.scale = std::max({1.0, std::abs(field.u(x, t)), std::abs(ut), std::abs(uxx)});
    r.residual = std::abs(ut - uxx + field.source(x, t)) / r.scale;
    return r;
}

}  // namespace fluxheat
