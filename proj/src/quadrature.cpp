#include "fluxheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fluxheat/errors.hpp"

namespace fluxheat {

namespace {

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

constexpr std::size_t kPointsPerPanel = 15;

Panel evaluate(const std::function<double(double)>& f, double a, double b) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, kPointsPerPanel>;
    double err = 0.0;
    const double v = Rule::integrate(f, a, b, 0, 0.0, &err);
    return Panel{a, b, v, err};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, const QuadOptions& opts) {
    QuadResult result;
    if (a == b) return result;
    if (!(std::isfinite(a) && std::isfinite(b))) {
        throw DomainError("integrate: limits must be finite");
    }
    const double sign = (b < a) ? -1.0 : 1.0;
    if (b < a) std::swap(a, b);

    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    const int n0 = std::max(1, opts.initial_panels);
    const double width = (b - a) / n0;
    for (int i = 0; i < n0; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == n0) ? b : a + (i + 1) * width;
        Panel p = evaluate(f, lo, hi);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    result.evaluations = n0 * kPointsPerPanel;

    auto converged = [&]() { return total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

    while (!converged()) {
        if (result.evaluations + 2 * kPointsPerPanel > opts.max_evaluations) {
            throw QuadratureError("integrate: evaluation budget exhausted", sign * total, total_err);
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw QuadratureError("integrate: subinterval below machine resolution", sign * total, total_err);
        }
        Panel left = evaluate(f, worst.a, mid);
        Panel right = evaluate(f, mid, worst.b);
        result.evaluations += 2 * kPointsPerPanel;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (!std::isfinite(total)) {
            throw QuadratureError("integrate: non-finite integrand", total, total_err);
        }
    }

    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    result.value = sign * total;
    result.error = total_err;
    return result;
}

}  // namespace fluxheat
