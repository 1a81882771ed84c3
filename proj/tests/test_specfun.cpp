#include <gtest/gtest.h>

#include <cmath>

#include "fluxheat/errors.hpp"
#include "fluxheat/specfun.hpp"

using namespace fluxheat;
namespace sf = fluxheat::specfun;

namespace {

// Composite Simpson, used as an independent oracle throughout this file.
template <class F>
double simpson(F f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

TEST(GammaHalf, MatchesTgammaOnIntegersAndHalfIntegers) {
    for (int twice = 1; twice <= 40; ++twice) {
        const double z = 0.5 * twice;
        EXPECT_NEAR(sf::gamma_half(z), std::tgamma(z), 1e-13 * std::tgamma(z)) << z;
    }
}

TEST(GammaHalf, KnownValues) {
    EXPECT_NEAR(sf::gamma_half(0.5), std::sqrt(M_PI), 1e-15);
    EXPECT_NEAR(sf::gamma_half(1.5), 0.5 * std::sqrt(M_PI), 1e-15);
    EXPECT_DOUBLE_EQ(sf::gamma_half(4.0), 6.0);
}

TEST(GammaHalf, RejectsOutsideDomain) {
    EXPECT_THROW(sf::gamma_half(0.0), DomainError);
    EXPECT_THROW(sf::gamma_half(-1.5), DomainError);
    EXPECT_THROW(sf::gamma_half(0.3), DomainError);
}

TEST(Erf, AgreesWithQuadratureOfTheGaussian) {
    // frozen: (2/√π)∫₀¹ e^{-s²} ds by Simpson with 2·10⁴ panels
    const double oracle = 2.0 / std::sqrt(M_PI) * simpson([](double s) { return std::exp(-s * s); }, 0.0, 1.0);
    EXPECT_NEAR(oracle, 0.8427007929497149, 1e-14);
    EXPECT_NEAR(sf::erf(1.0), 0.8427007929497149, 1e-15);
    EXPECT_DOUBLE_EQ(sf::erf(0.0), 0.0);
    EXPECT_NEAR(sf::erf(-2.0), -sf::erf(2.0), 1e-16);
    EXPECT_NEAR(sf::erf(6.0), 1.0, 1e-15);
}

TEST(HeatKernel, UnitMassAndSymmetry) {
    const double mass = simpson([](double xi) { return sf::heat_kernel(0.3, 1.0, xi, 0.5); }, -20.0, 20.0);
    EXPECT_NEAR(mass, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(sf::heat_kernel(1.0, 2.0, 0.2, 1.0), sf::heat_kernel(0.2, 2.0, 1.0, 1.0));
    EXPECT_THROW(sf::heat_kernel(0.0, 1.0, 0.0, 1.0), DomainError);
}

struct MomentCase {
    int n;
    double a;
    double t;
};

class ExpMoment : public ::testing::TestWithParam<MomentCase> {};

TEST_P(ExpMoment, MatchesSimpson) {
    const auto c = GetParam();
    const double oracle = simpson([&](double s) { return std::pow(s, c.n) * std::exp(c.a * s); }, 0.0, c.t, 200000);
    const double got = sf::exp_moment(c.n, c.a, c.t);
    EXPECT_NEAR(got, oracle, 1e-10 * std::max(1.0, std::abs(oracle)));
}

INSTANTIATE_TEST_SUITE_P(Grid, ExpMoment,
                         ::testing::Values(MomentCase{0, 0.0, 2.0}, MomentCase{3, 0.0, 1.5}, MomentCase{0, -1.0, 2.0},
                                           MomentCase{2, 1.0, 3.0}, MomentCase{5, -2.0, 4.0},
                                           MomentCase{4, 0.5, 10.0}, MomentCase{1, -30.0, 2.0},
                                           MomentCase{6, 3.0, 5.0}, MomentCase{0, 1e-9, 1.0},
                                           MomentCase{3, -50.0, 1.0}));

TEST(ExpMomentBranches, AgreeAtTheCrossover) {
    for (int n : {0, 1, 3, 6}) {
        for (double a : {-1.0, 1.0}) {
            const double t = sf::kMomentSeriesCutoff;
            const double s = sf::exp_moment_series(n, a, t);
            const double c = sf::exp_moment_closed(n, a, t);
            EXPECT_NEAR(s, c, 1e-11 * std::abs(c)) << n << " " << a;
        }
    }
}

TEST(ExpMomentScaled, FiniteWhereTheRawMomentOverflows) {
    // e^{-at}∫₀ᵗ e^{aτ} dτ = (1 - e^{-at})/a
    EXPECT_NEAR(sf::exp_moment_scaled(0, 2.0, 1000.0), 0.5, 1e-15);
    EXPECT_TRUE(std::isinf(sf::exp_moment(0, 2.0, 1000.0)));
    EXPECT_NEAR(sf::exp_moment_scaled(2, 0.5, 3.0), std::exp(-1.5) * sf::exp_moment(2, 0.5, 3.0), 1e-14);
}

TEST(ExpMoment, RejectsNegativeArguments) {
    EXPECT_THROW(sf::exp_moment(-1, 1.0, 1.0), DomainError);
    EXPECT_THROW(sf::exp_moment(1, 1.0, -1.0), DomainError);
}
