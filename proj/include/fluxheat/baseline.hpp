#pragma once

/**
 * @file baseline.hpp
 * @brief Closed forms of u₀, the zero-source solution started from h.
 */

#include <optional>

#include "fluxheat/problem.hpp"

namespace fluxheat {

/// h = ηx^m, m = 2p+1:  u₀ = η/√π Σ_{k=0}^{p} C(m,2k) Γ(k+1/2) (4t)^k x^{m-2k}.
/// Throws ConstructionError for anything but an odd monomial.
double baseline_u0_polynomial(const InitialProfile& h, double x, double t);

/// h = (η/2)x² + a x:
/// u₀ = (η/2)(x² + 2t) erf(x/2√t) + (η/√π) x √t e^{-x²/4t} + a x.
double baseline_u0_quadratic(const InitialProfile& h, double x, double t);

/// h = ηX:  u₀ = h(x) e^{σt}.
double baseline_u0_separable(const InitialProfile& h, double x, double t);

/// Whichever of the above applies to h (P-level data), or nullopt.
std::optional<double> baseline_u0_closed(const InitialProfile& h, double x, double t);

}  // namespace fluxheat
