#include <gtest/gtest.h>

#include <cmath>

#include "fluxheat/closed_form.hpp"
#include "fluxheat/errors.hpp"
#include "fluxheat/fd_solver.hpp"
#include "fluxheat/quadrature.hpp"
#include "fluxheat/volterra.hpp"

using namespace fluxheat;

namespace {

ProblemSpec ir(SourceShape phi, double nu, double eta, double m) {
    return ProblemSpec{phi, FluxLaw::linear(nu), InitialProfile::monomial(eta, m), Variant::P};
}

// R(t) = (1/(2√π t^{3/2})) ∫₀^∞ ξ e^{-ξ²/4t} Φ(ξ) dξ with a plain truncated integral.
double kernel_oracle(const SourceShape& phi, double t) {
    auto f = [&](double xi) { return xi * std::exp(-xi * xi / (4.0 * t)) * phi(xi); };
    const double upper = 2.0 * std::sqrt(t) * 12.0 + 4.0 * phi.lambda * t;
    const double q = integrate(f, 0.0, upper, {1e-14, 1e-13, 10'000'000, 16}).value;
    return q / (2.0 * std::sqrt(M_PI) * std::pow(t, 1.5));
}

}  // namespace

TEST(Kernel, AnalyticFormsMatchTheDefiningIntegral) {
    for (const auto& phi : {SourceShape::linear_x(1.5), SourceShape::neg_sinh(1.2, 0.7), SourceShape::neg_sin(0.8, 2.0)}) {
        const Kernel k = Kernel::for_shape(phi);
        for (double t : {0.1, 0.7, 2.0}) {
            const double oracle = kernel_oracle(phi, t);
            EXPECT_NEAR(kernel_eval(k, t), oracle, 1e-10 * std::max(1.0, std::abs(oracle)));
            EXPECT_NEAR(kernel_eval(Kernel::quadrature(phi), t), oracle, 1e-9 * std::max(1.0, std::abs(oracle)));
        }
    }
    EXPECT_DOUBLE_EQ(kernel_eval(Kernel::constant_lambda(2.0), 5.0), 2.0);
    EXPECT_THROW(kernel_eval(Kernel::constant_lambda(2.0), 0.0), DomainError);
}

TEST(Forcing, MonomialForcingMatchesQuadrature) {
    for (double m : {1.0, 2.0, 3.0, 6.0}) {
        const InitialProfile h = InitialProfile::monomial(1.4, m);
        const Forcing a = Forcing::for_monomial(h);
        const Forcing b = Forcing::quadrature(h);
        for (double t : {0.2, 1.5}) EXPECT_NEAR(forcing_eval(a, t), forcing_eval(b, t), 1e-9 * forcing_eval(a, t));
    }
    EXPECT_DOUBLE_EQ(Forcing::for_monomial(InitialProfile::monomial(2.0, 1.0)).initial_value(), 2.0);
    EXPECT_DOUBLE_EQ(Forcing::for_monomial(InitialProfile::monomial(2.0, 3.0)).initial_value(), 0.0);
}

TEST(Solver, SecondOrderOnTheDecayingCase) {
    // φ₁, m = 1, η = ν = λ = 1: V = e^{-t}
    const ProblemSpec s = ir(SourceShape::linear_x(1.0), 1.0, 1.0, 1.0);
    std::vector<double> hs, errs;
    for (int n : {250, 500, 1000, 2000}) {
        const FluxTrajectory v = solve_volterra(kernel_for(s), forcing_for(s), 1.0, 2.0, n);
        hs.push_back(2.0 / n);
        errs.push_back(std::abs(v(2.0) - std::exp(-2.0)));
    }
    EXPECT_NEAR(loglog_slope(hs, errs), 2.0, 0.3);
}

TEST(Solver, AgreesWithClosedFormsAcrossShapes) {
    for (const auto& phi : {SourceShape::linear_x(1.0), SourceShape::neg_sinh(1.0, 0.5), SourceShape::neg_sin(1.0, 0.5),
                            SourceShape::neg_sin(1.0, 1.0)}) {
        for (double m : {1.0, 3.0, 5.0}) {
            const ProblemSpec s = ir(phi, 1.0, 1.0, m);
            const FluxTrajectory exact = flux_closed_form(s);
            const FluxTrajectory num = solve_volterra(kernel_for(s), forcing_for(s), 1.0, 2.0, 2000);
            const FluxTrajectory res = solve_resolvent(kernel_for(s), forcing_for(s), 1.0, 2.0, 2000);
            for (double t : {0.5, 1.0, 2.0}) {
                const double scale = std::max(1.0, std::abs(exact(t)));
                EXPECT_NEAR(num(t), exact(t), 1e-5 * scale);
                EXPECT_NEAR(res(t), exact(t), 1e-5 * scale);
            }
        }
    }
}

TEST(Solver, HalfIntegerExponentWithQuadratureKernel) {
    // m = 2 has no polynomial closed form; compare the two kernel routes with each other.
    const ProblemSpec s = ir(SourceShape::neg_sin(1.0, 0.5), 1.0, 1.0, 2.0);
    const FluxTrajectory a = solve_volterra(kernel_for(s), forcing_for(s), 1.0, 1.0, 400);
    const FluxTrajectory b = solve_volterra(Kernel::quadrature(s.phi), Forcing::quadrature(s.h), 1.0, 1.0, 400);
    EXPECT_NEAR(a(1.0), b(1.0), 1e-7);
    EXPECT_THROW(solve_resolvent(kernel_for(s), forcing_for(s), 1.0, 1.0, 100), DomainError);
}

TEST(Residual, ClosedFormsAreExactSolutions) {
    std::vector<double> ts;
    for (int i = 1; i <= 50; ++i) ts.push_back(0.1 * i);
    for (const auto& phi : {SourceShape::linear_x(1.0), SourceShape::neg_sinh(0.5, 1.0), SourceShape::neg_sin(1.0, 2.0),
                            SourceShape::neg_sin(2.0, 2.0)}) {
        for (double m : {1.0, 3.0, 5.0, 7.0}) {
            const ProblemSpec s = ir(phi, 1.0, 1.0, m);
            EXPECT_LE(volterra_residual(flux_closed_form(s), kernel_for(s), forcing_for(s), 1.0, ts), 1e-8);
        }
    }
}

TEST(Residual, DetectsAPerturbedTrajectory) {
    const ProblemSpec s = ir(SourceShape::linear_x(1.0), 1.0, 1.0, 3.0);
    const FluxTrajectory off = flux_closed_form(s).shifted(1e-4);
    EXPECT_GT(volterra_residual(off, kernel_for(s), forcing_for(s), 1.0, {0.5, 1.0}), 1e-5);
}

TEST(KernelBound, HoldsForTheThreeShapes) {
    for (const Kernel& k : {Kernel::constant_lambda(1.0), Kernel::growing_exp(1.0, 0.5), Kernel::decaying_exp(1.0, 0.5)}) {
        for (auto [t1, t2] : {std::pair{0.0, 1.0}, std::pair{0.5, 3.0}}) {
            const KernelBound b = kernel_bound(k, t1, t2);
            EXPECT_TRUE(b.holds) << b.lhs << " " << b.rhs;
        }
    }
    EXPECT_THROW(kernel_bound(Kernel::constant_lambda(1.0), 1.0, 1.0), DomainError);
}

TEST(Solver, RejectsBadArguments) {
    const ProblemSpec s = ir(SourceShape::linear_x(1.0), 1.0, 1.0, 1.0);
    EXPECT_THROW(solve_volterra(kernel_for(s), forcing_for(s), 0.0, 1.0, 10), DomainError);
    EXPECT_THROW(solve_volterra(kernel_for(s), forcing_for(s), 1.0, 1.0, 1), DomainError);
}
