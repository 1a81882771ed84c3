#pragma once

/**
 * @file green.hpp
 * @brief Dirichlet Green function of the half-line and the integrals built on it.
 *
 * G(x,t,ξ,τ) = K(x,t,ξ,τ) - K(-x,t,ξ,τ).
 */

#include <functional>

#include "fluxheat/flux_trajectory.hpp"
#include "fluxheat/problem.hpp"
#include "fluxheat/quadrature.hpp"

namespace fluxheat {

/// Requires x, ξ >= 0 and τ < t.
double green_eval(double x, double t, double xi, double tau);

/// Half-width of the truncation window in units of the Gaussian width 2√s.
inline constexpr double kGaussianWidths = 8.0;

/**
 * ∫₀^∞ f(ξ) dξ for an integrand carrying a Gaussian envelope centred at `x`
 * with variance parameter s (envelope e^{-(ξ-x)²/4s}), possibly times e^{gξ}.
 * The window is [max(0, x - W·2√s), x + 2gs + W·2√s], pre-split into panels
 * of width about √s.
 */
QuadResult quad_semiinfinite(const std::function<double(double)>& f, double x, double s, double growth = 0.0,
                             const QuadOptions& opts = {});

/// Exponential growth rate of a shape or profile, used to place the window.
double growth_rate(const SourceShape& phi);
double growth_rate(const InitialProfile& h);

/// ∫₀^∞ G(x,t,ξ,0) h(ξ) dξ for the P-level h; h(x) at t = 0.
double baseline_u0(const InitialProfile& h, double x, double t, const QuadOptions& opts = {});

struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double diff = 0.0;
};

/// ∫₀^∞ G(x,t,ξ,τ) Φ(ξ) dξ against e^{κ(t-τ)} Φ(x) (κ = 0, λ², -λ², σ) or erf(x/2√(t-τ)) for Φ ≡ 1.
IdentityCheck verify_identity_phi(const SourceShape& phi, double x, double t, double tau,
                                  const QuadOptions& opts = {});

/// ∫₀^∞ G(x,t,ξ,0) h(ξ) dξ against the closed-form u₀. Throws ConstructionError without one.
IdentityCheck verify_identity_h(const InitialProfile& h, double x, double t, const QuadOptions& opts = {});

/// Closed-form ∫₀^∞ G(x,t,ξ,τ) Φ(ξ) dξ = e^{κ(t-τ)}Φ(x): returns κ, or throws for ConstantOne.
double green_phi_rate(const SourceShape& phi);

/**
 * u(x,t) = ∫G h dξ - ν ∫₀ᵗ (∫G Φ dξ) V(τ) dτ for a Linear flux law.
 * Fast path: closed-form inner integral and exact time integral of V.
 * Slow path: nested adaptive quadrature over τ and ξ.
 */
double assemble_integral_representation(const ProblemSpec& spec, double x, double t, const FluxTrajectory& v,
                                        bool slow = false);

}  // namespace fluxheat
