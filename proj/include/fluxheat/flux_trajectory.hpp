#pragma once

/**
 * @file flux_trajectory.hpp
 * @brief Boundary flux V(t) = u_x(0,t), either closed-form or sampled.
 *
 * Closed form: V(t) = Σ_k p_k t^k + Σ_j A_j e^{r_j t}.
 * Sampled: values on an increasing time grid, piecewise linear in between.
 */

#include <vector>

namespace fluxheat {

struct ExpTerm {
    double amplitude = 0.0;
    double rate = 0.0;
};

class FluxTrajectory {
public:
    FluxTrajectory() = default;

    static FluxTrajectory closed(std::vector<double> polynomial, std::vector<ExpTerm> exponentials);
    static FluxTrajectory sampled(std::vector<double> times, std::vector<double> values);

    bool is_closed() const noexcept { return closed_; }

    double operator()(double t) const;
    /// dV/dt (closed form only).
    double derivative(double t) const;

    /**
     * ∫₀ᵗ e^{w(t-τ)} V(τ) dτ.
     * Closed form: exact, through exp_moment. Sampled: exact for the piecewise
     * linear interpolant (product trapezoidal rule). Returns 0 at t = 0.
     */
    double weighted_integral(double t, double w) const;

    /// The same trajectory plus a constant offset.
    FluxTrajectory shifted(double offset) const;

    const std::vector<double>& polynomial() const noexcept { return poly_; }
    const std::vector<ExpTerm>& exponentials() const noexcept { return exps_; }
    const std::vector<double>& times() const noexcept { return times_; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    bool closed_ = true;
    std::vector<double> poly_;
    std::vector<ExpTerm> exps_;
    std::vector<double> times_;
    std::vector<double> values_;
};

}  // namespace fluxheat
