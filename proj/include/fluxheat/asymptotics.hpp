#pragma once

/**
 * @file asymptotics.hpp
 * @brief Limits as t → +∞ (and t → 0⁺) of fluxes, solutions and u/u₀.
 *
 * Classes are derived from the parameters alone; numeric_limit_probe is the
 * independent, purely numerical check.
 */

#include <functional>
#include <string>
#include <vector>

#include "fluxheat/problem.hpp"

namespace fluxheat {

struct LimitClass {
    enum class Tag { Zero, Finite, PlusInfinity, MinusInfinity, Unclassified };

    Tag tag = Tag::Unclassified;
    double value = 0.0;  // Finite only

    static LimitClass zero() { return {Tag::Zero, 0.0}; }
    static LimitClass finite(double v) { return {Tag::Finite, v}; }
    static LimitClass plus_infinity() { return {Tag::PlusInfinity, 0.0}; }
    static LimitClass minus_infinity() { return {Tag::MinusInfinity, 0.0}; }
    static LimitClass unclassified() { return {Tag::Unclassified, 0.0}; }
    /// ±∞ by the sign of s (s != 0).
    static LimitClass infinity(double s);

    bool is_infinite() const { return tag == Tag::PlusInfinity || tag == Tag::MinusInfinity; }
};

std::string to_string(const LimitClass& c);

/// Same tag, and for Finite the values agree to `rel_tol` (absolute near zero).
bool same_class(const LimitClass& a, const LimitClass& b, double rel_tol = 1e-3);

/// lim_{t→+∞} u_x(0,t) for the integral-representation family with odd m.
LimitClass flux_limit(const ProblemSpec& spec);

/// lim_{t→0⁺} u_x(0,t): η for m = 1, 0 for m > 1.
LimitClass flux_initial_limit(const ProblemSpec& spec);

struct ControlClasses {
    LimitClass u0;
    LimitClass u;
    LimitClass ratio;  // u/u₀
};

/**
 * Limits of u₀, u and u/u₀ at a fixed x > 0 for the three control
 * configurations: Φ ≡ 1 with constant F and quadratic h; the separated family
 * with F = νV or F = c·Vⁿ; the integral-representation family with odd m.
 * Throws ConstructionError for anything else.
 */
ControlClasses control_classification(const ProblemSpec& spec, double x);

inline const std::vector<double> kDefaultProbeLadder{10.0, 20.0, 40.0, 80.0};
inline const std::vector<double> kAlgebraicProbeLadder{1e2, 1e4, 1e6, 1e8};

/**
 * Trend classification of g on an increasing time ladder:
 * Zero when |g| shrinks by at least 2x per step (or underflows),
 * ±∞ when |g| grows by at least 2x per step with a fixed sign,
 * Finite when the last two values agree to `rel_tol`, Unclassified otherwise.
 */
LimitClass numeric_limit_probe(const std::function<double(double)>& g,
                               const std::vector<double>& ladder = kDefaultProbeLadder, double rel_tol = 1e-4);

/// Default ladder when the solution has exponential modes, the wide algebraic ladder otherwise.
const std::vector<double>& probe_ladder(const ProblemSpec& spec);

}  // namespace fluxheat
