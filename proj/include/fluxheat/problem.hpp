#pragma once

/**
 * @file problem.hpp
 * @brief Declarative description of one benchmark instance.
 *
 * Problem P:  u_t - u_xx = -Φ(x) F(u_x(0,t), t),  u(x,0) = h(x),  u(0,t) = 0.
 * Problem P̃ is the problem satisfied by v = u_x; a P̃ spec stores the P-level
 * data with `order = 1` on Φ and h, so it always remembers where it came from.
 */

#include <optional>
#include <string>
#include <vector>

namespace fluxheat {

enum class Variant { P, PTilde };

/// k-th derivative of X(x), where X'' = σX, X(0) = 0, X'(0) = δ:
/// (δ/√σ)sinh(√σx) for σ > 0, (δ/√|σ|)sin(√|σ|x) for σ < 0, δx for σ = 0.
double separable_x(double sigma, double delta, double x, int k = 0);

enum class ShapeKind { LinearX, NegSinh, NegSin, ScaledSeparable, ConstantOne };

struct SourceShape {
    ShapeKind kind = ShapeKind::LinearX;
    double lambda = 1.0;  // rate
    double mu = 1.0;      // amplitude (NegSinh / NegSin)
    double sigma = 0.0;   // ScaledSeparable: branch selector of X
    double delta = 1.0;   // ScaledSeparable: X'(0)
    double scale = 1.0;   // ScaledSeparable: λ_s in Φ = λ_s X
    int order = 0;        // number of x-derivatives applied (1 for P̃)

    static SourceShape linear_x(double lambda);
    static SourceShape neg_sinh(double lambda, double mu);
    static SourceShape neg_sin(double lambda, double mu);
    static SourceShape scaled_separable(double sigma, double delta, double scale);
    static SourceShape constant_one();

    /// k-th derivative of the shape as seen by its problem (i.e. of Φ^{(order)}).
    double operator()(double x, int k = 0) const { return base(x, k + order); }
    /// k-th derivative of the P-level Φ.
    double base(double x, int k = 0) const;
};

enum class ProfileKind { Monomial, Quadratic, ScaledSeparable };

struct InitialProfile {
    ProfileKind kind = ProfileKind::Monomial;
    double eta = 1.0;    // Monomial: ηx^m. Quadratic: curvature, h = (η/2)x² + a x. Separable: ηX.
    double m = 1.0;      // Monomial exponent
    double a = 0.0;      // Quadratic linear coefficient
    double sigma = 0.0;  // ScaledSeparable
    double delta = 1.0;  // ScaledSeparable
    int order = 0;

    static InitialProfile monomial(double eta, double m);
    static InitialProfile quadratic(double curvature, double a);
    static InitialProfile scaled_separable(double eta, double sigma, double delta);

    double operator()(double x, int k = 0) const { return base(x, k + order); }
    double base(double x, int k = 0) const;

    /// True when m is an odd positive integer (Monomial only).
    bool odd_monomial() const;
};

/// Locally integrable time function used by the Affine and PowerLaw flux laws.
struct TimeFunction {
    enum class Kind { Polynomial, Exponential, Power };

    Kind kind = Kind::Polynomial;
    std::vector<double> coeffs{1.0};  // ascending powers
    double amplitude = 1.0;            // Exponential / Power
    double rate = 0.0;                 // Exponential: amplitude·e^{rate·t}
    double exponent = 0.0;             // Power: amplitude·t^exponent

    static TimeFunction constant(double value);
    static TimeFunction polynomial(std::vector<double> coeffs);
    static TimeFunction exponential(double amplitude, double rate);
    static TimeFunction power(double amplitude, double exponent);

    double operator()(double t) const;
    /// ∫₀ᵗ f(τ) dτ.
    double integral(double t) const;
    bool locally_integrable() const;
    bool strictly_positive() const;
};

enum class FluxKind { Zero, Constant, Linear, Affine, PowerLaw };

struct FluxLaw {
    FluxKind kind = FluxKind::Linear;
    double nu = 1.0;  // Constant / Linear
    double n = 0.0;   // PowerLaw exponent, n < 1
    TimeFunction f1 = TimeFunction::constant(0.0);
    TimeFunction f2 = TimeFunction::constant(0.0);
    TimeFunction f = TimeFunction::constant(1.0);

    static FluxLaw zero();
    static FluxLaw constant(double nu);
    static FluxLaw linear(double nu);
    static FluxLaw affine(TimeFunction f1, TimeFunction f2);
    static FluxLaw power_law(double n, TimeFunction f);

    /// F(V, t).
    double operator()(double flux, double t) const;
};

struct ProblemSpec {
    SourceShape phi;
    FluxLaw flux;
    InitialProfile h;
    Variant variant = Variant::P;
};

/// Which explicit solution family a spec belongs to.
enum class Family { Stationary, Separated, IntegralRep, Unsupported };

Family classify(const ProblemSpec& spec);

struct Violation {
    std::string code;
    std::string message;
};

/// Hypothesis check. Violations are returned, never thrown.
/// `closed_form_flux` additionally requires odd m for the integral-representation family.
std::vector<Violation> validate(const ProblemSpec& spec, bool closed_form_flux = false);

struct DerivedParameters {
    std::optional<double> sigma;  // λ + νμ (NegSinh)
    std::optional<double> delta;  // λ - νμ (NegSin)
    std::optional<double> gamma;  // λ_s ν δ (ScaledSeparable, Linear F)
    std::optional<double> c;      // 2^{m-1} m η Γ(m/2)/√π (Monomial)
    std::optional<int> p;         // (m-1)/2 for odd m
};

DerivedParameters derive_parameters(const ProblemSpec& spec);

/// Data of the problem satisfied by v = u_x: Φ̃ = Φ', h̃ = h', F̃ = F.
ProblemSpec transform_to_tilde(const ProblemSpec& spec);

/// Inverse of transform_to_tilde; identity on P specs.
ProblemSpec underlying_p(const ProblemSpec& spec);

std::string to_string(ShapeKind kind);
std::string to_string(ProfileKind kind);
std::string to_string(FluxKind kind);
std::string to_string(Family family);

}  // namespace fluxheat
