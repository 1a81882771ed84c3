#pragma once

/**
 * @file fd_solver.hpp
 * @brief θ-scheme finite differences for the flux-coupled heat equation on [0, L].
 *
 * The diffusion term is θ-weighted; the nonlocal source Φ(x)F(V,t) is taken
 * from the previous level, so every step is one tridiagonal solve.
 */

#include <functional>
#include <vector>

#include "fluxheat/closed_form.hpp"
#include "fluxheat/flux_trajectory.hpp"
#include "fluxheat/problem.hpp"

namespace fluxheat {

struct Grid1D {
    double L = 8.0;
    int nx = 64;
    double t_end = 1.0;
    int nt = 64;
    double theta = 0.5;

    double dx() const { return L / nx; }
    double dt() const { return t_end / nt; }
    /// Throws DomainError on malformed sizes, StabilityError when θ < 1/2 and Δt is too large.
    void validate() const;
};

enum class FarField { Manufactured, HomogeneousDirichlet };

struct FarFieldPolicy {
    FarField kind = FarField::HomogeneousDirichlet;
    std::function<double(double t)> value;  // Dirichlet data at x = L

    static FarFieldPolicy homogeneous();
    /// Dirichlet data u(L, t) from a known solution.
    static FarFieldPolicy manufactured(std::function<double(double x, double t)> exact, double L);
    static FarFieldPolicy manufactured(const SolutionField& exact, double L);

    double at(double t) const { return value ? value(t) : 0.0; }
};

enum class FluxStencil { SecondOrder, FirstOrder };
enum class SourceLag { Previous, Extrapolated };

struct FdOptions {
    FluxStencil stencil = FluxStencil::SecondOrder;
    /// Previous: F(Vⁿ, tⁿ). Extrapolated: (3Sⁿ - S^{n-1})/2, centred at t^{n+1/2}.
    SourceLag source_lag = SourceLag::Previous;
    /// Leading steps replaced by two backward-Euler half steps (damps Crank-Nicolson start-up ringing).
    int startup_steps = 1;
};

struct DiscreteField {
    std::vector<double> u;  // nodal values, u[0] at x = 0, u[nx] at x = L
    double t = 0.0;
    double flux = 0.0;      // V_h(t): one-sided u_x(0) for P, u[0] for the tilde problem
    double source_prev = 0.0;  // F at the previous level, for the extrapolated lag
    int steps = 0;
};

/// h̃ (or h) sampled on the grid, with the flux of the initial level.
DiscreteField initial_field(const ProblemSpec& spec, const Grid1D& grid, const FdOptions& opts = {});

/// Boundary flux read off a discrete field.
double discrete_flux(const std::vector<double>& u, const ProblemSpec& spec, double dx, FluxStencil stencil);

/// One step of length Δt; start-up steps are taken as two backward-Euler half steps.
DiscreteField step(const DiscreteField& state, const ProblemSpec& spec, const Grid1D& grid,
                   const FarFieldPolicy& far, const FdOptions& opts = {});

struct FdResult {
    DiscreteField final;
    FluxTrajectory flux;  // sampled at every step
};

using FdObserver = std::function<void(const DiscreteField&)>;

FdResult solve(const ProblemSpec& spec, const Grid1D& grid, const FarFieldPolicy& far, const FdOptions& opts = {},
               const FdObserver& observer = {});

struct ConvergenceRow {
    double dx = 0.0;
    double dt = 0.0;
    double err_max = 0.0;
    double err_l2 = 0.0;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    double order_max = 0.0;
    double order_l2 = 0.0;
    bool monotone = true;  // false: errors did not decrease at every refinement
};

using ExactField = std::function<double(double x, double t)>;

/**
 * Errors at t_end against `reference`, or against the finest grid when it is
 * empty (self-convergence; the finest grid then gets no row). Orders are the
 * least-squares slopes of log error against log Δx. Needs at least three grids.
 */
ConvergenceResult convergence_order(const ProblemSpec& spec, const std::vector<Grid1D>& ladder,
                                    const ExactField& reference, const FarFieldPolicy& far,
                                    const FdOptions& opts = {});

/// Grids with nx = nx0·2^k, keeping Δt ∝ Δx (θ >= 1/2) or Δt ∝ Δx² (θ < 1/2).
std::vector<Grid1D> refinement_ladder(const Grid1D& coarsest, int levels);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fluxheat
