#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fluxheat/errors.hpp"
#include "fluxheat/problem.hpp"
#include "fluxheat/problem_json.hpp"
#include "fluxheat/quadrature.hpp"

using namespace fluxheat;
using nlohmann::json;

namespace {

ProblemSpec ir(SourceShape phi, double nu, double eta, double m) {
    return ProblemSpec{phi, FluxLaw::linear(nu), InitialProfile::monomial(eta, m), Variant::P};
}

bool has_code(const std::vector<Violation>& v, const std::string& code) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.code == code; });
}

// V₀(t) = (1/√(πt)) ∫₀^∞ e^{-ξ²/4t} h'(ξ) dξ by plain quadrature.
double v0_by_quadrature(double eta, double m, double t) {
    auto f = [&](double xi) { return std::exp(-xi * xi / (4.0 * t)) * eta * m * std::pow(xi, m - 1.0); };
    return integrate(f, 0.0, 40.0 * std::sqrt(t), {1e-13, 1e-13}).value / std::sqrt(M_PI * t);
}

}  // namespace

TEST(SeparableX, BranchesSolveTheOde) {
    for (double sigma : {2.0, 0.0, -3.0}) {
        const double delta = 1.5;
        EXPECT_DOUBLE_EQ(separable_x(sigma, delta, 0.0), 0.0);
        EXPECT_NEAR(separable_x(sigma, delta, 0.0, 1), delta, 1e-15);
        for (double x : {0.3, 1.1, 2.4}) {
            const double h = 1e-3;
            const double xpp = (separable_x(sigma, delta, x + h) - 2 * separable_x(sigma, delta, x) +
                                separable_x(sigma, delta, x - h)) / (h * h);
            EXPECT_NEAR(xpp, sigma * separable_x(sigma, delta, x), 1e-5 * std::max(1.0, std::abs(xpp)));
            EXPECT_NEAR(separable_x(sigma, delta, x, 2), sigma * separable_x(sigma, delta, x), 1e-12);
        }
    }
}

TEST(SourceShape, NamedShapesAndDerivatives) {
    const auto p2 = SourceShape::neg_sinh(2.0, 0.5);
    EXPECT_NEAR(p2(1.0), -0.5 * std::sinh(2.0), 1e-15);
    EXPECT_NEAR(p2(1.0, 1), -0.5 * 2.0 * std::cosh(2.0), 1e-14);
    const auto p3 = SourceShape::neg_sin(2.0, 0.5);
    EXPECT_NEAR(p3(1.0, 2), 0.5 * 4.0 * std::sin(2.0), 1e-14);
    EXPECT_DOUBLE_EQ(SourceShape::linear_x(3.0)(2.0), 6.0);
    EXPECT_DOUBLE_EQ(SourceShape::constant_one()(7.0), 1.0);
}

TEST(DerivedParameters, SigmaDeltaGamma) {
    const auto d2 = derive_parameters(ir(SourceShape::neg_sinh(1.0, 0.5), 2.0, 1.0, 1.0));
    EXPECT_DOUBLE_EQ(*d2.sigma, 2.0);
    const auto d3 = derive_parameters(ir(SourceShape::neg_sin(1.0, 0.5), 2.0, 1.0, 1.0));
    EXPECT_DOUBLE_EQ(*d3.delta, 0.0);
    ProblemSpec s{SourceShape::scaled_separable(1.0, 2.0, 3.0), FluxLaw::linear(0.5),
                  InitialProfile::scaled_separable(1.0, 1.0, 2.0), Variant::P};
    EXPECT_DOUBLE_EQ(*derive_parameters(s).gamma, 3.0);
}

TEST(DerivedParameters, ConstantMatchesTheInitialFluxIntegral) {
    // c is the coefficient of V₀(t) = c·t^{(m-1)/2}.
    for (double m : {1.0, 2.0, 3.0, 4.0, 5.0, 7.0}) {
        const double eta = 1.3;
        const auto d = derive_parameters(ir(SourceShape::linear_x(1.0), 1.0, eta, m));
        const double t = 0.7;
        const double oracle = v0_by_quadrature(eta, m, t) / std::pow(t, 0.5 * (m - 1.0));
        EXPECT_NEAR(*d.c, oracle, 1e-10 * oracle) << m;
    }
    EXPECT_NEAR(*derive_parameters(ir(SourceShape::linear_x(1.0), 1.0, 1.0, 3.0)).c, 6.0, 1e-14);
    EXPECT_NEAR(*derive_parameters(ir(SourceShape::linear_x(1.0), 1.0, 2.5, 1.0)).c, 2.5, 1e-15);
}

TEST(DerivedParameters, OrderOnlyForOddM) {
    EXPECT_EQ(*derive_parameters(ir(SourceShape::linear_x(1.0), 1.0, 1.0, 7.0)).p, 3);
    EXPECT_FALSE(derive_parameters(ir(SourceShape::linear_x(1.0), 1.0, 1.0, 4.0)).p.has_value());
}

TEST(Classify, Families) {
    EXPECT_EQ(classify(ir(SourceShape::neg_sin(1.0, 1.0), 1.0, 1.0, 3.0)), Family::IntegralRep);
    ProblemSpec st{SourceShape::constant_one(), FluxLaw::constant(2.0), InitialProfile::quadratic(2.0, 1.0),
                   Variant::P};
    EXPECT_EQ(classify(st), Family::Stationary);
    st.h = InitialProfile::quadratic(1.0, 0.0);  // h'' = 1 != 2
    EXPECT_EQ(classify(st), Family::Unsupported);
    ProblemSpec sv{SourceShape::scaled_separable(-1.0, 1.0, 1.0), FluxLaw::power_law(0.5, TimeFunction::constant(1.0)),
                   InitialProfile::scaled_separable(1.0, -1.0, 1.0), Variant::P};
    EXPECT_EQ(classify(sv), Family::Separated);
}

TEST(Validate, ReportsEachViolation) {
    EXPECT_TRUE(validate(ir(SourceShape::linear_x(1.0), 1.0, 1.0, 3.0), true).empty());
    EXPECT_TRUE(has_code(validate(ir(SourceShape::linear_x(1.0), 1.0, 1.0, 2.0), true), "odd_m"));
    EXPECT_TRUE(validate(ir(SourceShape::linear_x(1.0), 1.0, 1.0, 2.0), false).empty());
    EXPECT_TRUE(has_code(validate(ir(SourceShape::linear_x(-1.0), 1.0, 1.0, 1.0)), "positivity"));
    EXPECT_TRUE(has_code(validate(ir(SourceShape::neg_sinh(1.0, 0.0), 1.0, 1.0, 1.0)), "positivity"));
    EXPECT_TRUE(has_code(validate(ir(SourceShape::linear_x(1.0), -1.0, 1.0, 1.0)), "positivity"));
    EXPECT_TRUE(has_code(validate(ir(SourceShape::linear_x(NAN), 1.0, 1.0, 1.0)), "finite"));

    ProblemSpec pl{SourceShape::scaled_separable(1.0, 1.0, 1.0), FluxLaw::power_law(1.0, TimeFunction::constant(1.0)),
                   InitialProfile::scaled_separable(1.0, 1.0, 1.0), Variant::P};
    EXPECT_TRUE(has_code(validate(pl), "power"));
    pl.flux = FluxLaw::power_law(0.5, TimeFunction::power(1.0, -1.5));
    EXPECT_TRUE(has_code(validate(pl), "integrability"));

    ProblemSpec bad{SourceShape::constant_one(), FluxLaw::zero(), InitialProfile::quadratic(1.0, 0.0), Variant::P};
    EXPECT_TRUE(has_code(validate(bad), "family"));
}

TEST(TimeFunction, IntegralsAgainstQuadrature) {
    const std::vector<TimeFunction> fs{TimeFunction::polynomial({1.0, -2.0, 0.5}), TimeFunction::exponential(2.0, -0.7),
                                       TimeFunction::power(1.5, -0.5), TimeFunction::power(1.0, 2.5)};
    for (const auto& f : fs) {
        // substitute τ = s² so the t^{-1/2} case is smooth
        const double t = 1.7;
        const double q =
            integrate([&](double s) { return 2.0 * s * f(s * s); }, 0.0, std::sqrt(t), {1e-13, 1e-13}).value;
        EXPECT_NEAR(f.integral(t), q, 1e-11);
    }
    EXPECT_THROW(TimeFunction::power(1.0, -1.0).integral(1.0), ConstructionError);
    EXPECT_FALSE(TimeFunction::power(1.0, -1.0).locally_integrable());
}

TEST(Transform, TildeDifferentiatesPhiAndH) {
    const ProblemSpec p = ir(SourceShape::neg_sin(2.0, 0.5), 1.0, 1.5, 3.0);
    const ProblemSpec t = transform_to_tilde(p);
    EXPECT_EQ(t.variant, Variant::PTilde);
    for (double x : {0.0, 0.4, 1.3}) {
        EXPECT_NEAR(t.phi(x), p.phi(x, 1), 1e-15);
        EXPECT_NEAR(t.h(x), p.h(x, 1), 1e-15);
    }
    EXPECT_THROW(transform_to_tilde(t), ConstructionError);
    const ProblemSpec back = underlying_p(t);
    EXPECT_EQ(back.variant, Variant::P);
    EXPECT_NEAR(back.h(2.0), 12.0, 1e-13);
    EXPECT_TRUE(validate(t, true).empty());
}

TEST(Transform, SeparableBranchesBecomeCoshCosConstant) {
    for (double sigma : {4.0, -4.0, 0.0}) {
        const ProblemSpec p{SourceShape::scaled_separable(sigma, 1.5, 1.0), FluxLaw::linear(1.0),
                            InitialProfile::scaled_separable(1.0, sigma, 1.5), Variant::P};
        const ProblemSpec t = transform_to_tilde(p);
        const double x = 0.8;
        const double expected = (sigma > 0) ? 1.5 * std::cosh(2.0 * x) : (sigma < 0 ? 1.5 * std::cos(2.0 * x) : 1.5);
        EXPECT_NEAR(t.h(x), expected, 1e-14) << sigma;
    }
}

TEST(Json, RoundTrip) {
    const json j = json::parse(R"({"phi":{"kind":"NegSinh","lambda":2,"mu":0.25},
        "flux":{"kind":"Linear","nu":3},"h":{"kind":"Monomial","eta":1.5,"m":5},"variant":"PTilde"})");
    const ProblemSpec s = spec_from_json(j);
    EXPECT_EQ(s.variant, Variant::PTilde);
    EXPECT_EQ(s.phi.kind, ShapeKind::NegSinh);
    EXPECT_DOUBLE_EQ(s.phi.mu, 0.25);
    EXPECT_DOUBLE_EQ(s.h.m, 5.0);
    const ProblemSpec again = spec_from_json(spec_to_json(s));
    EXPECT_EQ(spec_to_json(again), spec_to_json(s));
}

TEST(Json, TimeFunctionsAndPowerLaw) {
    const json j = json::parse(R"({"phi":{"kind":"ScaledSeparable","sigma":-1,"delta":1,"scale":1},
        "flux":{"kind":"Affine","f1":{"kind":"exp","amp":1,"rate":-1},"f2":{"kind":"poly","coeffs":[0.5,1]}},
        "h":{"kind":"ScaledSeparable","eta":2}})");
    const ProblemSpec s = spec_from_json(j);
    EXPECT_EQ(s.flux.kind, FluxKind::Affine);
    EXPECT_NEAR(s.flux.f1(1.0), std::exp(-1.0), 1e-15);
    EXPECT_DOUBLE_EQ(s.flux.f2(2.0), 2.5);
    EXPECT_DOUBLE_EQ(s.h.sigma, -1.0);  // inherited from phi
}

TEST(Json, RejectsUnknownFieldsAndKinds) {
    EXPECT_THROW(spec_from_json(json::parse(R"({"phi":{"kind":"LinearX","lambda":1},"flux":{"kind":"Linear","nu":1},
        "h":{"kind":"Monomial","eta":1,"m":1},"extra":0})")),
                 ConfigError);
    EXPECT_THROW(spec_from_json(json::parse(R"({"phi":{"kind":"LinearX","lambda":1,"colour":2},
        "flux":{"kind":"Linear","nu":1},"h":{"kind":"Monomial","eta":1,"m":1}})")),
                 ConfigError);
    EXPECT_THROW(spec_from_json(json::parse(R"({"phi":{"kind":"Cosh"},"flux":{"kind":"Linear","nu":1},
        "h":{"kind":"Monomial","eta":1,"m":1}})")),
                 ConfigError);
    EXPECT_THROW(spec_from_json(json::parse(R"({"phi":{"kind":"LinearX"},"flux":{"kind":"Linear"}})")), ConfigError);
    EXPECT_THROW(spec_from_json(json::parse(R"({"phi":{"kind":"LinearX","lambda":1},"flux":{"kind":"Linear","nu":1},
        "h":{"kind":"Monomial","eta":1,"m":1},"variant":"Q"})")),
                 ConfigError);
}
