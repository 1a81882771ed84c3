#include "fluxheat/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "fluxheat/asymptotics.hpp"
#include "fluxheat/baseline.hpp"
#include "fluxheat/closed_form.hpp"
#include "fluxheat/errors.hpp"
#include "fluxheat/green.hpp"
#include "fluxheat/problem_json.hpp"
#include "fluxheat/volterra.hpp"

namespace fluxheat {

using nlohmann::json;

bool CaseResult::pass() const {
    if (config_error()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

namespace {

const std::set<std::string> kBenchKeys{"id", "description", "closed_form", "probe_x", "fd"};
const std::set<std::string> kFdKeys{"L",          "nx",        "t_end",  "nt",       "theta",
                                    "tolerance",  "source_lag", "far_field", "levels", "reference"};

double number_field(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string("fd: \"") + key + "\" must be a number");
    return j.at(key).get<double>();
}

int int_field(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw ConfigError(std::string("fd: \"") + key + "\" must be an integer");
    return j.at(key).get<int>();
}

FdSettings fd_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("fd: expected an object");
    for (const auto& item : j.items()) {
        if (!kFdKeys.count(item.key())) throw ConfigError("fd: unknown field \"" + item.key() + "\"");
    }
    FdSettings s;
    s.grid.L = number_field(j, "L", s.grid.L);
    s.grid.nx = int_field(j, "nx", s.grid.nx);
    s.grid.t_end = number_field(j, "t_end", s.grid.t_end);
    s.grid.nt = int_field(j, "nt", s.grid.nt);
    s.grid.theta = number_field(j, "theta", s.grid.theta);
    s.tolerance = number_field(j, "tolerance", s.tolerance);
    s.levels = int_field(j, "levels", s.levels);

    const std::string lag = j.value("source_lag", std::string("extrapolated"));
    if (lag == "extrapolated") {
        s.source_lag = SourceLag::Extrapolated;
    } else if (lag == "previous") {
        s.source_lag = SourceLag::Previous;
    } else {
        throw ConfigError("fd: source_lag must be \"previous\" or \"extrapolated\"");
    }
    const std::string far = j.value("far_field", std::string("manufactured"));
    if (far == "manufactured") {
        s.far_field = FarField::Manufactured;
    } else if (far == "homogeneous") {
        s.far_field = FarField::HomogeneousDirichlet;
    } else {
        throw ConfigError("fd: far_field must be \"manufactured\" or \"homogeneous\"");
    }
    const std::string ref = j.value("reference", std::string("exact"));
    if (ref == "exact") {
        s.reference = ReferenceKind::Exact;
    } else if (ref == "self") {
        s.reference = ReferenceKind::Self;
    } else {
        throw ConfigError("fd: reference must be \"exact\" or \"self\"");
    }
    try {
        s.grid.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return s;
}

// ---- check recording -------------------------------------------------------

class Recorder {
public:
    Recorder(std::vector<CheckRecord>& out, double scale) : out_(out), scale_(scale) {}

    // |lhs - rhs| <= tol·max(1, |rhs|)
    void compare(const std::string& name, double lhs, double rhs, double tol) {
        const double t = tol * scale_ * std::max(1.0, std::abs(rhs));
        const double d = std::abs(lhs - rhs);
        out_.push_back({name, lhs, rhs, d, t, d <= t, ""});
    }

    // lhs is already an error measure; rhs is 0.
    void bound(const std::string& name, double value, double tol) {
        const double t = tol * scale_;
        out_.push_back({name, value, 0.0, std::abs(value), t, std::abs(value) <= t, ""});
    }

    void at_least(const std::string& name, double value, double floor) {
        out_.push_back({name, value, floor, std::max(0.0, floor - value), 0.0, value >= floor, ""});
    }

    void limit(const std::string& name, const LimitClass& probe, const LimitClass& predicted) {
        const double tol = 1e-3 * scale_;
        CheckRecord r{name, encode(probe), encode(predicted), 0.0, 0.0, same_class(probe, predicted, tol), ""};
        if (probe.tag == LimitClass::Tag::Finite && predicted.tag == LimitClass::Tag::Finite) {
            r.abs_diff = std::abs(probe.value - predicted.value);
            r.tolerance = tol * std::max({std::abs(probe.value), std::abs(predicted.value), 1e-12});
        } else {
            r.abs_diff = (probe.tag == predicted.tag) ? 0.0 : std::numeric_limits<double>::infinity();
        }
        r.detail = "probe=" + to_string(probe) + " predicted=" + to_string(predicted);
        out_.push_back(std::move(r));
    }

    // Runs `body`; a thrown exception becomes a failed record under `name`.
    void guarded(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            out_.push_back({name, nan, nan, nan, 0.0, false, e.what()});
        }
    }

private:
    static double encode(const LimitClass& c) {
        switch (c.tag) {
            case LimitClass::Tag::Zero: return 0.0;
            case LimitClass::Tag::Finite: return c.value;
            case LimitClass::Tag::PlusInfinity: return std::numeric_limits<double>::infinity();
            case LimitClass::Tag::MinusInfinity: return -std::numeric_limits<double>::infinity();
            case LimitClass::Tag::Unclassified: break;
        }
        return std::numeric_limits<double>::quiet_NaN();
    }

    std::vector<CheckRecord>& out_;
    double scale_;
};

const std::vector<double> kSampleX{0.25, 1.0, 2.0};
const std::vector<double> kSampleT{0.25, 1.0, 2.0};

void check_pde(Recorder& rec, const SolutionField& field) {
    rec.guarded("pde_residual", [&] {
        double worst = 0.0;
        for (double x : kSampleX) {
            for (double t : kSampleT) worst = std::max(worst, pde_residual(field, x, t).residual);
        }
        rec.bound("pde_residual", worst, 1e-6);
    });
}

void check_initial_and_boundary(Recorder& rec, const SolutionField& field) {
    const ProblemSpec& spec = field.spec();
    rec.guarded("initial_condition", [&] {
        double worst = 0.0;
        for (double x : kSampleX) {
            worst = std::max(worst, std::abs(field.u(x, 0.0) - spec.h(x)) / std::max(1.0, std::abs(spec.h(x))));
        }
        rec.bound("initial_condition", worst, 1e-12);
    });
    if (spec.variant == Variant::P) {
        rec.guarded("boundary_dirichlet", [&] {
            double worst = 0.0;
            for (double t : kSampleT) worst = std::max(worst, std::abs(field.u(0.0, t)));
            rec.bound("boundary_dirichlet", worst, 1e-12);
        });
    } else {
        rec.guarded("boundary_neumann", [&] {
            double worst = 0.0;
            const double phi0 = underlying_p(spec).phi(0.0);
            for (double t : kSampleT) {
                const double g = phi0 * spec.flux(field.flux(t), t);
                worst = std::max(worst, std::abs(field.derivative(0.0, t, 1) - g) / std::max(1.0, std::abs(g)));
            }
            rec.bound("boundary_neumann", worst, 1e-10);
        });
    }
}

// Closed-form u₀ at the P level, if there is one.
std::function<double(double, double)> baseline_for(const ProblemSpec& p) {
    return [h = p.h](double x, double t) {
        const auto v = baseline_u0_closed(h, x, t);
        if (!v) throw ConstructionError("no closed-form baseline for this profile");
        return *v;
    };
}

void check_controls(Recorder& rec, const CaseConfig& cfg, const SolutionField& p_field) {
    const ProblemSpec p = underlying_p(cfg.spec);
    const double x = cfg.probe_x;
    ControlClasses predicted;
    try {
        predicted = control_classification(p, x);
    } catch (const ConstructionError&) {
        return;  // not a control configuration
    }
    rec.guarded("limit.control", [&] {
        const auto& ladder = probe_ladder(p);
        // u₀ only grows exponentially in the separated family; elsewhere it is polynomial in t.
        const auto& u0_ladder = (classify(p) == Family::Separated) ? kDefaultProbeLadder : kAlgebraicProbeLadder;
        const auto u0 = baseline_for(p);
        rec.limit("limit.u0", numeric_limit_probe([&](double t) { return u0(x, t); }, u0_ladder), predicted.u0);
        rec.limit("limit.u", numeric_limit_probe([&](double t) { return p_field.u(x, t); }, ladder), predicted.u);
        rec.limit("limit.ratio",
                  numeric_limit_probe([&](double t) { return p_field.u(x, t) / u0(x, t); }, ladder),
                  predicted.ratio);
    });
}

void check_integral_rep(Recorder& rec, const CaseConfig& cfg, const SolutionField& p_field,
                        const BenchOptions& opts) {
    const ProblemSpec p = underlying_p(cfg.spec);
    const FluxTrajectory v = flux_closed_form(p);
    const Kernel kernel = kernel_for(p);
    const Forcing forcing = forcing_for(p);
    const double nu = p.flux.nu;

    rec.guarded("volterra.residual", [&] {
        std::vector<double> ts;
        for (int i = 1; i <= 50; ++i) ts.push_back(0.1 * i);
        rec.bound("volterra.residual", volterra_residual(v, kernel, forcing, nu, ts), 1e-8);
    });
    rec.guarded("volterra.numeric", [&] {
        const FluxTrajectory num = solve_volterra(kernel, forcing, nu, 2.0, 2000);
        rec.compare("volterra.numeric", num(2.0), v(2.0), 1e-5);
    });
    rec.guarded("volterra.resolvent", [&] {
        const FluxTrajectory res = solve_resolvent(kernel, forcing, nu, 2.0, 2000);
        rec.compare("volterra.resolvent", res(2.0), v(2.0), 1e-5);
    });
    rec.guarded("green.identity_phi", [&] {
        const IdentityCheck c = verify_identity_phi(p.phi, 1.0, 1.0, 0.5);
        rec.compare("green.identity_phi", c.lhs, c.rhs, 1e-8);
    });
    rec.guarded("green.identity_h", [&] {
        const IdentityCheck c = verify_identity_h(p.h, 1.0, 1.0);
        rec.compare("green.identity_h", c.lhs, c.rhs, 1e-8);
    });
    const char* assembly = opts.slow_oracles ? "green.assembly_quadrature" : "green.assembly";
    rec.guarded(assembly, [&] {
        const double x = 1.0, t = 1.0;
        rec.compare(assembly, assemble_integral_representation(p, x, t, v, opts.slow_oracles), p_field.u(x, t),
                    1e-8);
    });
    rec.guarded("limit.flux", [&] {
        rec.limit("limit.flux", numeric_limit_probe([&](double t) { return v(t); }, probe_ladder(p)),
                  flux_limit(p));
    });
    rec.guarded("limit.flux_initial", [&] {
        const LimitClass expected = flux_initial_limit(p);
        const double v0 = v(1e-8);
        if (expected.tag == LimitClass::Tag::Finite) {
            rec.compare("limit.flux_initial", v0, expected.value, 1e-6);
        } else {
            rec.bound("limit.flux_initial", v0, 1e-6);
        }
    });
}

void check_tilde(Recorder& rec, const SolutionField& tilde, const SolutionField& p_field) {
    rec.guarded("tilde.v_equals_ux", [&] {
        double worst = 0.0;
        const double h = 1e-2;
        for (double x : kSampleX) {
            for (double t : kSampleT) {
                auto d = [&](double s) { return (p_field.u(x + s, t) - p_field.u(x - s, t)) / (2.0 * s); };
                const double ux = (4.0 * d(0.5 * h) - d(h)) / 3.0;
                const double v = tilde.u(x, t);
                worst = std::max(worst, std::abs(v - ux) / std::max(1.0, std::abs(v)));
            }
        }
        rec.bound("tilde.v_equals_ux", worst, 1e-8);
    });
}

void check_fd(Recorder& rec, const CaseConfig& cfg, const std::optional<SolutionField>& exact) {
    const FdSettings& s = *cfg.fd;
    FdOptions fo;
    fo.source_lag = s.source_lag;
    FarFieldPolicy far = FarFieldPolicy::homogeneous();
    if (s.far_field == FarField::Manufactured) {
        if (!exact) throw ConfigError("fd: a manufactured far field needs a closed-form solution");
        far = FarFieldPolicy::manufactured(*exact, s.grid.L);
    }

    rec.guarded("fd.max_error", [&] {
        const FdResult r = solve(cfg.spec, s.grid, far, fo);
        if (exact) {
            double worst = 0.0;
            for (int i = 0; i <= s.grid.nx; ++i) {
                worst = std::max(worst, std::abs(r.final.u[i] - exact->u(i * s.grid.dx(), s.grid.t_end)));
            }
            rec.bound("fd.max_error", worst, s.tolerance);
            rec.compare("fd.flux", r.final.flux, exact->flux(s.grid.t_end), s.tolerance);
        } else {
            // No closed form: the numerical Volterra flux is the reference.
            const ProblemSpec p = underlying_p(cfg.spec);
            const FluxTrajectory num =
                solve_volterra(kernel_for(p), forcing_for(p), p.flux.nu, s.grid.t_end, 2000);
            rec.compare("fd.flux_vs_volterra", r.final.flux, num(s.grid.t_end), s.tolerance);
        }
    });
    rec.guarded("fd.order", [&] {
        Grid1D coarse = s.grid;
        const int shrink = 1 << (s.levels - 1);
        coarse.nx = std::max(8, s.grid.nx / shrink);
        coarse.nt = std::max(1, s.grid.nt / ((s.grid.theta >= 0.5) ? shrink : shrink * shrink));
        const auto ladder = refinement_ladder(coarse, s.levels);
        const ConvergenceResult c = convergence_order(cfg.spec, ladder, {}, far, fo);
        double worst = 0.0;
        for (const ConvergenceRow& row : c.rows) worst = std::max(worst, row.err_max);
        if (worst <= 1e-12) {
            // Exactly representable solution: every grid agrees to round-off, no order to measure.
            rec.bound("fd.order_roundoff", worst, 1e-12);
        } else {
            rec.at_least("fd.order", c.order_max, 1.0);
        }
    });
}

}  // namespace

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

CaseConfig case_from_json(const json& j, const std::string& fallback_id) {
    if (!j.is_object()) throw ConfigError("case: expected an object");
    CaseConfig cfg;
    json problem = json::object();
    for (const auto& item : j.items()) {
        if (!kBenchKeys.count(item.key())) problem[item.key()] = item.value();
    }
    cfg.id = j.value("id", fallback_id);
    cfg.description = j.value("description", std::string());
    if (j.contains("closed_form")) {
        if (!j.at("closed_form").is_boolean()) throw ConfigError("closed_form must be a boolean");
        cfg.closed_form = j.at("closed_form").get<bool>();
    }
    if (j.contains("probe_x")) {
        if (!j.at("probe_x").is_number()) throw ConfigError("probe_x must be a number");
        cfg.probe_x = j.at("probe_x").get<double>();
        if (!(cfg.probe_x > 0.0)) throw ConfigError("probe_x must be positive");
    }
    if (j.contains("fd")) cfg.fd = fd_from_json(j.at("fd"));

    try {
        cfg.spec = spec_from_json(problem);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const auto violations = validate(cfg.spec, cfg.closed_form);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "invalid case " << cfg.id << ":";
        for (const Violation& v : violations) msg << " [" << v.code << "] " << v.message << ";";
        throw ConfigError(msg.str());
    }
    return cfg;
}

CaseResult run_case(const CaseConfig& cfg, const BenchOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    CaseResult result;
    result.id = cfg.id;
    Recorder rec(result.checks, opts.tol_scale);

    const ProblemSpec p = underlying_p(cfg.spec);
    const Family family = classify(p);
    std::optional<SolutionField> exact;

    if (cfg.closed_form) {
        rec.guarded("closed_form", [&] {
            const SolutionField p_field = solution_for(p);
            exact = (cfg.spec.variant == Variant::PTilde) ? tilde_solution(cfg.spec) : p_field;
            check_pde(rec, *exact);
            check_initial_and_boundary(rec, *exact);
            if (cfg.spec.variant == Variant::PTilde) check_tilde(rec, *exact, p_field);
            if (family == Family::IntegralRep) check_integral_rep(rec, cfg, p_field, opts);
            check_controls(rec, cfg, p_field);
        });
    } else if (family == Family::IntegralRep) {
        rec.guarded("volterra.cross", [&] {
            // Two independent discretisations of the same equation.
            const Kernel k = kernel_for(p);
            const Forcing f = forcing_for(p);
            const FluxTrajectory a = solve_volterra(k, f, p.flux.nu, 2.0, 1000);
            const FluxTrajectory b = solve_volterra(k, f, p.flux.nu, 2.0, 2000);
            rec.compare("volterra.self_convergence", a(2.0), b(2.0), 1e-4);
        });
    }

    if (cfg.fd) {
        try {
            check_fd(rec, cfg, exact);
        } catch (const ConfigError& e) {
            result.error = e.what();
        }
    }

    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

CaseResult run_case_json(const json& j, const std::string& fallback_id, const BenchOptions& opts) {
    CaseConfig cfg;
    try {
        cfg = case_from_json(j, fallback_id);
    } catch (const ConfigError& e) {
        CaseResult r;
        r.id = (j.is_object() && j.contains("id") && j.at("id").is_string()) ? j.at("id").get<std::string>()
                                                                             : fallback_id;
        r.error = e.what();
        return r;
    }
    return run_case(cfg, opts);
}

// ---- sweep -----------------------------------------------------------------

namespace {

void set_path(json& target, const std::string& path, const json& value) {
    json* node = &target;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string key = path.substr(start, dot - start);
        if (key.empty()) throw ConfigError("sweep: bad parameter path \"" + path + "\"");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        if (!node->contains(key)) (*node)[key] = json::object();
        node = &(*node)[key];
        if (!node->is_object()) throw ConfigError("sweep: \"" + path + "\" does not name an object field");
        start = dot + 1;
    }
}

bool json_less(const json& a, const json& b) {
    if (a.is_number() && b.is_number()) return a.get<double>() < b.get<double>();
    return a.dump() < b.dump();
}

std::string param_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return format_number(v.get<double>());
    return v.dump();
}

}  // namespace

std::vector<SweepPoint> expand_sweep(const json& j) {
    if (!j.is_object()) throw ConfigError("sweep: expected an object");
    for (const auto& item : j.items()) {
        if (item.key() != "id" && item.key() != "base" && item.key() != "grid") {
            throw ConfigError("sweep: unknown field \"" + item.key() + "\"");
        }
    }
    if (!j.contains("base") || !j.at("base").is_object()) throw ConfigError("sweep: \"base\" object required");
    const std::string id = j.value("id", std::string("sweep"));
    const json grid = j.value("grid", json::object());
    if (!grid.is_object()) throw ConfigError("sweep: \"grid\" must be an object");

    std::vector<std::pair<std::string, std::vector<json>>> axes;  // json objects iterate keys sorted
    std::size_t total = 1;
    for (const auto& item : grid.items()) {
        if (!item.value().is_array()) throw ConfigError("sweep: grid \"" + item.key() + "\" must be an array");
        std::vector<json> values(item.value().begin(), item.value().end());
        std::stable_sort(values.begin(), values.end(), json_less);
        total *= values.size();
        if (total > 10000) throw ConfigError("sweep: more than 10000 cases");
        axes.emplace_back(item.key(), std::move(values));
    }

    std::vector<SweepPoint> points;
    if (axes.empty() || total == 0) return points;
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        SweepPoint pt;
        pt.config = j.at("base");
        std::string suffix;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const json& v = axes[a].second[idx[a]];
            set_path(pt.config, axes[a].first, v);
            pt.params.emplace_back(axes[a].first, v);
            suffix += (a ? "," : "") + axes[a].first + "=" + param_text(v);
        }
        pt.id = id + "[" + suffix + "]";
        pt.config["id"] = pt.id;
        points.push_back(std::move(pt));
        for (std::size_t a = axes.size(); a-- > 0;) {
            if (++idx[a] < axes[a].second.size()) break;
            idx[a] = 0;
        }
    }
    return points;
}

std::vector<CaseResult> run_sweep(const std::vector<SweepPoint>& points, const BenchOptions& opts) {
    std::vector<CaseResult> results(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            results[i] = run_case_json(points[i].config, points[i].id, opts);
        }
    };
    const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(points.size())));
    if (jobs <= 1) {
        worker();
        return results;
    }
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

// ---- convergence -----------------------------------------------------------

ConvergenceReport run_convergence(const CaseConfig& cfg) {
    const FdSettings s = cfg.fd.value_or(FdSettings{});
    if (s.levels < 3) throw ConfigError("convergence: need at least 3 grids");
    FdOptions fo;
    fo.source_lag = s.source_lag;

    std::optional<SolutionField> exact;
    if (cfg.closed_form && (s.reference == ReferenceKind::Exact || s.far_field == FarField::Manufactured)) {
        exact = solution_for(cfg.spec);
    }
    FarFieldPolicy far = FarFieldPolicy::homogeneous();
    if (s.far_field == FarField::Manufactured) {
        if (!exact) throw ConfigError("convergence: a manufactured far field needs a closed-form solution");
        far = FarFieldPolicy::manufactured(*exact, s.grid.L);
    }
    ExactField reference;
    if (s.reference == ReferenceKind::Exact) {
        if (!exact) throw ConfigError("convergence: exact reference needs a closed-form solution");
        reference = [field = *exact](double x, double t) { return field.u(x, t); };
    }
    ConvergenceReport r;
    r.id = cfg.id;
    r.result = convergence_order(cfg.spec, refinement_ladder(s.grid, s.levels), reference, far, fo);
    return r;
}

// ---- output ----------------------------------------------------------------

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json number_json(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);  // JSON has no inf/nan
}

}  // namespace

std::string checks_csv(const CaseResult& r) {
    std::ostringstream out;
    out << "case_id,check,lhs,rhs,abs_diff,tolerance,pass,detail\n";
    if (r.config_error()) {
        out << csv_field(r.id) << ",config,nan,nan,nan,0,false," << csv_field(r.error) << "\n";
    }
    for (const CheckRecord& c : r.checks) {
        out << csv_field(r.id) << ',' << csv_field(c.name) << ',' << format_number(c.lhs) << ','
            << format_number(c.rhs) << ',' << format_number(c.abs_diff) << ',' << format_number(c.tolerance) << ','
            << (c.pass ? "true" : "false") << ',' << csv_field(c.detail) << "\n";
    }
    return out.str();
}

std::string sweep_csv(const std::vector<SweepPoint>& points, const std::vector<CaseResult>& results,
                      const std::vector<std::string>& param_keys) {
    std::ostringstream out;
    out << "case_id";
    for (const auto& k : param_keys) out << ',' << csv_field(k);
    out << ",checks,failed,worst_check,worst_ratio,pass,error\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const CaseResult& r = results[i];
        out << csv_field(r.id);
        for (const auto& kv : points[i].params) out << ',' << csv_field(param_text(kv.second));
        int failed = 0;
        std::string worst;
        double worst_ratio = 0.0;
        for (const CheckRecord& c : r.checks) {
            if (!c.pass) ++failed;
            double ratio = (c.tolerance > 0.0) ? c.abs_diff / c.tolerance : (c.pass ? 0.0 : std::numeric_limits<double>::infinity());
            if (std::isnan(ratio)) ratio = std::numeric_limits<double>::infinity();
            if (worst.empty() || ratio > worst_ratio) {
                worst = c.name;
                worst_ratio = ratio;
            }
        }
        out << ',' << r.checks.size() << ',' << failed << ',' << csv_field(worst) << ','
            << format_number(worst_ratio) << ',' << (r.pass() ? "true" : "false") << ',' << csv_field(r.error)
            << "\n";
    }
    return out.str();
}

std::string convergence_csv(const ConvergenceReport& r) {
    std::ostringstream out;
    out << "level,dx,dt,err_max,err_l2,order_max,order_l2\n";
    const auto& rows = r.result.rows;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        std::string om = "nan", ol = "nan";
        if (k > 0) {
            const double ratio = std::log(rows[k - 1].dx / rows[k].dx);
            om = format_number(std::log(rows[k - 1].err_max / rows[k].err_max) / ratio);
            ol = format_number(std::log(rows[k - 1].err_l2 / rows[k].err_l2) / ratio);
        }
        out << k << ',' << format_number(rows[k].dx) << ',' << format_number(rows[k].dt) << ','
            << format_number(rows[k].err_max) << ',' << format_number(rows[k].err_l2) << ',' << om << ',' << ol
            << "\n";
    }
    return out.str();
}

json to_json(const CaseResult& r) {
    json checks = json::array();
    for (const CheckRecord& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"lhs", number_json(c.lhs)},
                          {"rhs", number_json(c.rhs)},
                          {"abs_diff", number_json(c.abs_diff)},
                          {"tolerance", number_json(c.tolerance)},
                          {"pass", c.pass},
                          {"detail", c.detail}});
    }
    json j{{"id", r.id}, {"pass", r.pass()}, {"checks", checks}, {"seconds", r.seconds}};
    if (r.config_error()) j["error"] = r.error;
    return j;
}

json to_json(const ConvergenceReport& r) {
    json rows = json::array();
    for (const ConvergenceRow& row : r.result.rows) {
        rows.push_back({{"dx", row.dx}, {"dt", row.dt}, {"err_max", row.err_max}, {"err_l2", row.err_l2}});
    }
    return {{"id", r.id},
            {"rows", rows},
            {"order_max", r.result.order_max},
            {"order_l2", r.result.order_l2},
            {"monotone", r.result.monotone}};
}

}  // namespace fluxheat
