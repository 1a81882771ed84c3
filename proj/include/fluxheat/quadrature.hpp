#pragma once

#include <cstddef>
#include <functional>

namespace fluxheat {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_evaluations = 1'000'000;
    /// Uniform panels the interval is split into before adaptive refinement starts.
    int initial_panels = 1;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod on [a, b]: the subinterval with the
/// largest error estimate is bisected until the total estimate drops below
/// max(abs_tol, rel_tol·|value|). Throws QuadratureError when the budget runs out.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, const QuadOptions& opts = {});

}  // namespace fluxheat
