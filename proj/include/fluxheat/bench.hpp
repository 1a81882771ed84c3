#pragma once

/**
 * @file bench.hpp
 * @brief Case configs, per-family verification checks and CSV/JSON reports.
 */

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fluxheat/fd_solver.hpp"
#include "fluxheat/problem.hpp"

namespace fluxheat {

struct CheckRecord {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;  // free text, e.g. the two limit classes
};

struct CaseResult {
    std::string id;
    std::vector<CheckRecord> checks;
    std::string error;  // configuration problem, empty when the case ran
    double seconds = 0.0;

    bool config_error() const { return !error.empty(); }
    bool pass() const;
    int exit_code() const { return config_error() ? 2 : (pass() ? 0 : 1); }
};

enum class ReferenceKind { Exact, Self };

struct FdSettings {
    Grid1D grid{8.0, 512, 1.0, 512, 0.5};
    double tolerance = 5e-3;
    SourceLag source_lag = SourceLag::Extrapolated;
    FarField far_field = FarField::Manufactured;
    int levels = 3;
    ReferenceKind reference = ReferenceKind::Exact;
};

struct CaseConfig {
    std::string id;
    std::string description;
    ProblemSpec spec;
    bool closed_form = true;
    double probe_x = 1.0;
    std::optional<FdSettings> fd;
};

struct BenchOptions {
    double tol_scale = 1.0;
    bool slow_oracles = false;
    int jobs = 1;
};

/// Bench keys (id, description, closed_form, probe_x, fd) plus the problem keys.
/// Throws ConfigError on unknown keys, bad values or hypothesis violations.
CaseConfig case_from_json(const nlohmann::json& j, const std::string& fallback_id = "case");
nlohmann::json read_json_file(const std::string& path);

CaseResult run_case(const CaseConfig& config, const BenchOptions& opts);

/// Loads, validates and runs; configuration problems come back in CaseResult::error.
CaseResult run_case_json(const nlohmann::json& j, const std::string& fallback_id, const BenchOptions& opts);

struct SweepPoint {
    std::string id;
    std::vector<std::pair<std::string, nlohmann::json>> params;  // sorted by key
    nlohmann::json config;
};

/**
 * {"id", "base": {case}, "grid": {"dotted.path": [values...]}}. Keys are
 * walked in lexicographic order, each value list sorted, last key fastest.
 * Throws ConfigError above 10⁴ points.
 */
std::vector<SweepPoint> expand_sweep(const nlohmann::json& j);

std::vector<CaseResult> run_sweep(const std::vector<SweepPoint>& points, const BenchOptions& opts);

struct ConvergenceReport {
    std::string id;
    ConvergenceResult result;
};

ConvergenceReport run_convergence(const CaseConfig& config);

std::string format_number(double v);
std::string checks_csv(const CaseResult& r);
std::string sweep_csv(const std::vector<SweepPoint>& points, const std::vector<CaseResult>& results,
                      const std::vector<std::string>& param_keys);
std::string convergence_csv(const ConvergenceReport& r);

nlohmann::json to_json(const CaseResult& r);
nlohmann::json to_json(const ConvergenceReport& r);

}  // namespace fluxheat
