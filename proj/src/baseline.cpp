#include "fluxheat/baseline.hpp"

#include <cmath>
#include <numbers>

#include "fluxheat/errors.hpp"
#include "fluxheat/specfun.hpp"

namespace fluxheat {

double baseline_u0_polynomial(const InitialProfile& h, double x, double t) {
    if (!h.odd_monomial()) {
        throw ConstructionError("baseline_u0_polynomial: h must be an odd monomial");
    }
    const int m = static_cast<int>(h.m);
    const int p = (m - 1) / 2;
    double sum = 0.0;
    double binom = 1.0;  // C(m, 2k)
    for (int k = 0; k <= p; ++k) {
        if (k > 0) {
            binom *= static_cast<double>(m - 2 * k + 2) * (m - 2 * k + 1) / ((2.0 * k - 1.0) * (2.0 * k));
        }
        const double g = specfun::gamma_half(specfun::HalfInteger{2 * k + 1});
        sum += binom * g * std::pow(4.0 * t, k) * std::pow(x, m - 2 * k);
    }
    return h.eta * sum / std::sqrt(std::numbers::pi);
}

double baseline_u0_quadratic(const InitialProfile& h, double x, double t) {
    if (h.kind != ProfileKind::Quadratic) {
        throw ConstructionError("baseline_u0_quadratic: h must be quadratic");
    }
    if (t <= 0.0) return h.base(x, 0);
    const double rt = std::sqrt(t);
    const double z = x / (2.0 * rt);
    return 0.5 * h.eta * (x * x + 2.0 * t) * specfun::erf(z) +
           h.eta / std::sqrt(std::numbers::pi) * x * rt * std::exp(-z * z) + h.a * x;
}

double baseline_u0_separable(const InitialProfile& h, double x, double t) {
    if (h.kind != ProfileKind::ScaledSeparable) {
        throw ConstructionError("baseline_u0_separable: h must be separable");
    }
    return h.base(x, 0) * std::exp(h.sigma * t);
}

std::optional<double> baseline_u0_closed(const InitialProfile& h, double x, double t) {
    switch (h.kind) {
        case ProfileKind::Monomial:
            if (h.odd_monomial()) return baseline_u0_polynomial(h, x, t);
            return std::nullopt;
        case ProfileKind::Quadratic: return baseline_u0_quadratic(h, x, t);
        case ProfileKind::ScaledSeparable: return baseline_u0_separable(h, x, t);
    }
    return std::nullopt;
}

}  // namespace fluxheat
