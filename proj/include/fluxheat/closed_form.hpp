#pragma once

/**
 * @file closed_form.hpp
 * @brief Exact solution fields: stationary, separated-variables,
 * integral-representation, and their x-derivatives (the tilde problem).
 */

#include <functional>
#include <optional>
#include <string>

#include "fluxheat/baseline.hpp"
#include "fluxheat/flux_trajectory.hpp"
#include "fluxheat/problem.hpp"

namespace fluxheat {

enum class Provenance { Stationary, Separated, IntegralRepPhi1, IntegralRepPhi2, IntegralRepPhi3 };

std::string to_string(Provenance p);

class SolutionField {
public:
    /// k-th x-derivative of the field at (x, t).
    using Evaluator = std::function<double(double x, double t, int k)>;

    SolutionField(ProblemSpec spec, Provenance provenance, Evaluator eval, std::optional<FluxTrajectory> trajectory);

    double u(double x, double t) const { return eval_(x, t, 0); }
    double u_x(double x, double t) const { return eval_(x, t, 1); }
    double derivative(double x, double t, int k) const { return eval_(x, t, k); }

    /// Coupling variable of the source: u_x(0,t) for P, v(0,t) for the tilde problem.
    double flux(double t) const;

    /// Φ(x)·F(flux(t), t), with Φ the shape of this field's own problem.
    double source(double x, double t) const;

    const ProblemSpec& spec() const noexcept { return spec_; }
    Provenance provenance() const noexcept { return provenance_; }
    Variant variant() const noexcept { return spec_.variant; }
    const std::optional<FluxTrajectory>& trajectory() const noexcept { return trajectory_; }

private:
    ProblemSpec spec_;
    Provenance provenance_;
    Evaluator eval_;
    std::optional<FluxTrajectory> trajectory_;
};

/// u = h(x) for F ≡ c with h'' = cΦ (c = 0 for F ≡ 0).
SolutionField stationary_solution(const ProblemSpec& spec);

/// T(t) of the separated family; δT(t) is the boundary flux.
double separated_t(const ProblemSpec& spec, double t);

/// u = X(x)T(t) with Φ = λ_s X, h = ηX and a Linear, Affine or PowerLaw flux law.
SolutionField separated_solution(const ProblemSpec& spec);

/// Boundary flux of the integral-representation family for odd m, as
/// polynomial + one exponential (a pure polynomial on the resonant lines).
FluxTrajectory flux_closed_form(const ProblemSpec& spec);

/// u = u₀ - νΦ(x) ∫₀ᵗ e^{κ(t-τ)} V(τ) dτ with κ = 0, λ², -λ² for φ₁, φ₂, φ₃.
SolutionField integral_rep_solution(const ProblemSpec& spec);

/// Any P spec in one of the three families.
SolutionField solution_for(const ProblemSpec& spec);

/// v = u_x for a tilde spec, built from the matching P solution.
SolutionField tilde_solution(const ProblemSpec& spec);

struct PdeResidual {
    double residual = 0.0;  // |u_t - u_xx + source| / scale
    double scale = 1.0;     // max(1, |u|, |u_t|, |u_xx|)
};

/// Central differences with step h and h/2, Richardson-combined.
PdeResidual pde_residual(const SolutionField& field, double x, double t, double h = 1e-3);

}  // namespace fluxheat
