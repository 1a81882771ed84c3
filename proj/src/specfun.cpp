#include "fluxheat/specfun.hpp"

#include <cmath>
#include <numbers>

#include "fluxheat/errors.hpp"

namespace fluxheat::specfun {

HalfInteger HalfInteger::from_double(double z) {
    const double twice = 2.0 * z;
    if (!(z > 0.0) || twice != std::round(twice) || twice > 1.0e6) {
        throw DomainError("gamma_half: argument must be a positive integer or half-integer");
    }
    return HalfInteger{static_cast<int>(twice)};
}

double gamma_half(HalfInteger z) {
    if (z.twice <= 0) {
        throw DomainError("gamma_half: argument must be positive");
    }
    // Start at Γ(1/2) or Γ(1) and step up by one each iteration.
    int twice = (z.twice % 2 == 1) ? 1 : 2;
    double value = (twice == 1) ? std::sqrt(std::numbers::pi) : 1.0;
    while (twice < z.twice) {
        value *= 0.5 * twice;
        twice += 2;
    }
    return value;
}

double gamma_half(double z) { return gamma_half(HalfInteger::from_double(z)); }

double erf(double x) { return std::erf(x); }

double heat_kernel(double x, double t, double xi, double tau) {
    const double s = t - tau;
    if (!(s > 0.0)) {
        throw DomainError("heat_kernel: requires tau < t");
    }
    const double d = x - xi;
    return std::exp(-d * d / (4.0 * s)) / (2.0 * std::sqrt(std::numbers::pi * s));
}

double exp_moment_series(int n, double a, double t) {
    const double x = std::abs(a) * t;
    const double scale = std::pow(t, n + 1);
    double sum = 0.0;
    if (a >= 0.0) {
        // Σ x^k / (k! (n+k+1))
        double term = 1.0;
        for (int k = 0; k < 2000; ++k) {
            if (k > 0) term *= x / k;
            const double contrib = term / (n + k + 1);
            sum += contrib;
            if (k > x && contrib < 1e-18 * sum) break;
        }
        return scale * sum;
    }
    // e^{-x} Σ x^k / ((n+1)(n+2)...(n+k+1))
    double term = 1.0 / (n + 1);
    sum = term;
    for (int k = 1; k < 2000; ++k) {
        term *= x / (n + k + 1);
        sum += term;
        if (k > x && term < 1e-18 * sum) break;
    }
    return scale * std::exp(-x) * sum;
}

double exp_moment_closed(int n, double a, double t) {
    if (a == 0.0) {
        throw DomainError("exp_moment_closed: a must be non-zero");
    }
    // (n!/a) e^{at} (Σ_{k<n} (-1)^k t^{n-k}/((n-k)! a^k) + (-1)^n/a^n) + (-1)^{n+1} n!/a^{n+1}
    double factorial_n = 1.0;
    for (int k = 2; k <= n; ++k) factorial_n *= k;

    double inner = 0.0;
    double a_pow = 1.0;  // a^k
    for (int k = 0; k < n; ++k) {
        double fact = 1.0;
        for (int j = 2; j <= n - k; ++j) fact *= j;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        inner += sign * std::pow(t, n - k) / (fact * a_pow);
        a_pow *= a;
    }
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
    inner += sign_n / a_pow;  // a_pow == a^n here
    return factorial_n / a * std::exp(a * t) * inner - sign_n * factorial_n / (a_pow * a);
}

double exp_moment(int n, double a, double t) {
    if (n < 0) {
        throw DomainError("exp_moment: n must be non-negative");
    }
    if (!(t > 0.0)) {
        throw DomainError("exp_moment: t must be positive");
    }
    if (a == 0.0) {
        return std::pow(t, n + 1) / (n + 1);
    }
    if (std::abs(a) * t <= kMomentSeriesCutoff) {
        return exp_moment_series(n, a, t);
    }
    return exp_moment_closed(n, a, t);
}

double exp_moment_scaled(int n, double a, double t) {
    if (!(a > 0.0) || a * t <= kMomentSeriesCutoff) {
        return std::exp(-a * t) * exp_moment(n, a, t);
    }
    // (n!/a) Σ_{k<=n} (-1)^k t^{n-k}/((n-k)! a^k) + (-1)^{n+1} n!/a^{n+1} e^{-at}
    double factorial_n = 1.0;
    for (int k = 2; k <= n; ++k) factorial_n *= k;
    double inner = 0.0;
    double a_pow = 1.0;
    for (int k = 0; k <= n; ++k) {
        double fact = 1.0;
        for (int j = 2; j <= n - k; ++j) fact *= j;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        inner += sign * std::pow(t, n - k) / (fact * a_pow);
        a_pow *= a;
    }
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
    return factorial_n / a * inner - sign_n * factorial_n / a_pow * std::exp(-a * t);
}

}  // namespace fluxheat::specfun
