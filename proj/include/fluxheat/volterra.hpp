#pragma once

/**
 * @file volterra.hpp
 * @brief The flux equation V(t) = V₀(t) - ν ∫₀ᵗ R(t-τ) V(τ) dτ.
 *
 * R(t) = 1/(2√π t^{3/2}) ∫₀^∞ ξ e^{-ξ²/4t} Φ(ξ) dξ,
 * V₀(t) = 1/√(πt) ∫₀^∞ e^{-ξ²/4t} h'(ξ) dξ.
 */

#include <vector>

#include "fluxheat/flux_trajectory.hpp"
#include "fluxheat/problem.hpp"

namespace fluxheat {

enum class KernelKind { ConstantLambda, GrowingExp, DecayingExp, Quadrature };

struct Kernel {
    KernelKind kind = KernelKind::ConstantLambda;
    double lambda = 1.0;
    double mu = 1.0;
    SourceShape shape;  // Quadrature only

    static Kernel constant_lambda(double lambda);
    static Kernel growing_exp(double lambda, double mu);
    static Kernel decaying_exp(double lambda, double mu);
    /// Analytic kernel of φ₁, φ₂ or φ₃.
    static Kernel for_shape(const SourceShape& phi);
    /// Kernel evaluated from its defining integral.
    static Kernel quadrature(const SourceShape& phi);

    bool analytic() const noexcept { return kind != KernelKind::Quadrature; }
    /// Analytic kinds are R(t) = rho·e^{kappa·t}.
    double rho() const;
    double kappa() const;
};

double kernel_eval(const Kernel& k, double t);

enum class ForcingKind { PowerLaw, Quadrature };

struct Forcing {
    ForcingKind kind = ForcingKind::PowerLaw;
    double c = 1.0;
    double exponent = 0.0;  // (m-1)/2
    InitialProfile h;       // Quadrature only

    static Forcing power_law(double c, double exponent);
    /// c·t^{(m-1)/2} for a monomial h.
    static Forcing for_monomial(const InitialProfile& h);
    static Forcing quadrature(const InitialProfile& h);

    /// lim_{t→0⁺} V₀(t).
    double initial_value() const;
};

double forcing_eval(const Forcing& f, double t);

/// Product trapezoidal rule on a uniform grid; V at t = 0 is the forcing's limit value.
FluxTrajectory solve_volterra(const Kernel& k, const Forcing& f, double nu, double t_end, int n_steps);

/// Solves r = 1 - ν R*r, then V = V₀(0⁺) r + V₀' * r. Needs an integer exponent.
FluxTrajectory solve_resolvent(const Kernel& k, const Forcing& f, double nu, double t_end, int n_steps);

/// max_t |V(t) - V₀(t) + ν ∫₀ᵗ R(t-τ)V(τ)dτ| over the sample times.
double volterra_residual(const FluxTrajectory& v, const Kernel& k, const Forcing& f, double nu,
                         const std::vector<double>& t_samples);

struct KernelBound {
    double lhs = 0.0;  // ∫_{t1}^{t2} R(t2-τ) dτ
    double rhs = 0.0;  // f(t2-t1)
    bool holds = false;
};

/// Lower bound hypothesis on the kernel, with f(t) = -λt, -(μ/λ)(e^{λ²t}-1), -(μ/λ)(1-e^{-λ²t}).
KernelBound kernel_bound(const Kernel& k, double t1, double t2);
bool kernel_bound_check(const Kernel& k, double t1, double t2);

/// Kernel, forcing and ν of an integral-representation spec.
Kernel kernel_for(const ProblemSpec& spec);
Forcing forcing_for(const ProblemSpec& spec);

}  // namespace fluxheat
