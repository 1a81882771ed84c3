#pragma once

/**
 * @file specfun.hpp
 * @brief Special functions shared by every other module.
 *
 * Gamma at positive integers and half-integers (exact recurrence), the error
 * function, the one-dimensional heat kernel, and the exponential moment
 * integral  M_n(a, t) = ∫₀ᵗ τⁿ e^{aτ} dτ.
 */

namespace fluxheat::specfun {

/// A positive integer or half-integer, stored as twice its value.
struct HalfInteger {
    int twice = 1;

    static HalfInteger from_double(double z);
    double value() const noexcept { return 0.5 * twice; }
};

/// Γ(z) for z ∈ {1/2, 1, 3/2, 2, ...} by the recurrence Γ(z+1) = zΓ(z)
/// seeded with Γ(1/2) = √π or Γ(1) = 1. Throws DomainError for z <= 0.
double gamma_half(HalfInteger z);

/// Same, accepting a double; throws DomainError unless 2z is a positive integer.
double gamma_half(double z);

/// Conventional error function (2/√π)∫₀ˣ e^{-s²} ds.
double erf(double x);

/// Fundamental solution of u_t = u_xx:
/// K(x,t,ξ,τ) = exp(-(x-ξ)²/4(t-τ)) / (2√(π(t-τ))). Requires τ < t.
double heat_kernel(double x, double t, double xi, double tau);

/**
 * @brief ∫₀ᵗ τⁿ e^{aτ} dτ.
 *
 * Uses a positive-term series when |a|t <= kMomentSeriesCutoff (for a < 0 the
 * Kummer-transformed series, so no alternating cancellation) and the finite
 * closed-form sum
 *   (n!/a) e^{at} ( Σ_{k<n} (-1)^k t^{n-k}/((n-k)! a^k) + (-1)^n/a^n
 *                   + (-1)^{n+1} e^{-at}/a^n )
 * beyond it. a = 0 returns t^{n+1}/(n+1). Throws DomainError for n < 0 or t <= 0.
 */
double exp_moment(int n, double a, double t);

/// e^{-at} ∫₀ᵗ τⁿ e^{aτ} dτ, finite for large positive a·t where exp_moment overflows.
double exp_moment_scaled(int n, double a, double t);

/// Crossover in |a|·t between the series and closed-form branches of exp_moment.
inline constexpr double kMomentSeriesCutoff = 40.0;

/// Series branch only; exposed so tests can compare the branches at the crossover.
double exp_moment_series(int n, double a, double t);
/// Closed-form branch only (a != 0).
double exp_moment_closed(int n, double a, double t);

}  // namespace fluxheat::specfun
