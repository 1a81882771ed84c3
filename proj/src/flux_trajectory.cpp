#include "fluxheat/flux_trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "fluxheat/errors.hpp"
#include "fluxheat/specfun.hpp"

namespace fluxheat {

namespace {

// e^{wt} ∫₀ᵗ τⁿ e^{aτ} dτ, arranged so that no intermediate overflows when the product is finite.
double shifted_moment(int n, double w, double a, double t) {
    if (a > 0.0) return std::exp((w + a) * t) * specfun::exp_moment_scaled(n, a, t);
    return std::exp(w * t) * specfun::exp_moment(n, a, t);
}

}  // namespace

FluxTrajectory FluxTrajectory::closed(std::vector<double> polynomial, std::vector<ExpTerm> exponentials) {
    FluxTrajectory v;
    v.closed_ = true;
    v.poly_ = std::move(polynomial);
    v.exps_ = std::move(exponentials);
    return v;
}

FluxTrajectory FluxTrajectory::sampled(std::vector<double> times, std::vector<double> values) {
    if (times.size() != values.size() || times.size() < 2) {
        throw DomainError("sampled trajectory needs at least two (t, V) pairs of equal length");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw DomainError("sample times must be strictly increasing");
    }
    FluxTrajectory v;
    v.closed_ = false;
    v.times_ = std::move(times);
    v.values_ = std::move(values);
    return v;
}

double FluxTrajectory::operator()(double t) const {
    if (closed_) {
        double p = 0.0;
        for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) p = p * t + *it;
        for (const ExpTerm& e : exps_) p += e.amplitude * std::exp(e.rate * t);
        return p;
    }
    if (t < times_.front() || t > times_.back()) {
        throw DomainError("sampled trajectory evaluated outside its time range");
    }
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t i = (it == times_.end()) ? times_.size() - 1 : static_cast<std::size_t>(it - times_.begin());
    if (i == 0) i = 1;
    const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
    return (1.0 - w) * values_[i - 1] + w * values_[i];
}

double FluxTrajectory::derivative(double t) const {
    if (!closed_) throw DomainError("derivative is only available for closed-form trajectories");
    double d = 0.0;
    for (std::size_t k = poly_.size(); k-- > 1;) d = d * t + static_cast<double>(k) * poly_[k];
    for (const ExpTerm& e : exps_) d += e.amplitude * e.rate * std::exp(e.rate * t);
    return d;
}

double FluxTrajectory::weighted_integral(double t, double w) const {
    if (t < 0.0) throw DomainError("weighted_integral: t must be non-negative");
    if (t == 0.0) return 0.0;
    if (closed_) {
        double sum = 0.0;
        for (std::size_t k = 0; k < poly_.size(); ++k) {
            if (poly_[k] == 0.0) continue;
            sum += poly_[k] * shifted_moment(static_cast<int>(k), w, -w, t);
        }
        for (const ExpTerm& e : exps_) {
            sum += e.amplitude * shifted_moment(0, w, e.rate - w, t);
        }
        return sum;
    }
    if (t > times_.back() * (1.0 + 1e-14)) {
        throw DomainError("weighted_integral beyond the sampled range");
    }
    double sum = 0.0;
    for (std::size_t i = 1; i < times_.size() && times_[i - 1] < t; ++i) {
        const double a = times_[i - 1];
        const double b = std::min(times_[i], t);
        const double h = b - a;
        const double va = values_[i - 1];
        const double slope = (values_[i] - values_[i - 1]) / (times_[i] - times_[i - 1]);
        const double e = std::exp(w * (t - a));
        sum += e * (va * specfun::exp_moment(0, -w, h) + slope * specfun::exp_moment(1, -w, h));
    }
    return sum;
}

FluxTrajectory FluxTrajectory::shifted(double offset) const {
    FluxTrajectory v = *this;
    if (closed_) {
        if (v.poly_.empty()) v.poly_.push_back(0.0);
        v.poly_[0] += offset;
    } else {
        for (double& x : v.values_) x += offset;
    }
    return v;
}

}  // namespace fluxheat
