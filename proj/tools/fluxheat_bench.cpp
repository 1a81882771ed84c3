// fluxheat_bench: run verification cases, parameter sweeps and FD convergence studies.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "fluxheat/bench.hpp"
#include "fluxheat/errors.hpp"

namespace fs = std::filesystem;
using namespace fluxheat;

namespace {

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

void print_failures(const CaseResult& r) {
    if (r.config_error()) {
        std::cerr << r.id << ": configuration error: " << r.error << "\n";
        return;
    }
    for (const CheckRecord& c : r.checks) {
        if (c.pass) continue;
        std::cerr << r.id << ": FAIL " << c.name << " lhs=" << format_number(c.lhs) << " rhs=" << format_number(c.rhs)
                  << " diff=" << format_number(c.abs_diff) << " tol=" << format_number(c.tolerance);
        if (!c.detail.empty()) std::cerr << " (" << c.detail << ")";
        std::cerr << "\n";
    }
}

int cmd_run(const std::string& config, const fs::path& out, const BenchOptions& opts) {
    const std::string stem = fs::path(config).stem().string();
    const CaseResult r = run_case_json(read_json_file(config), stem, opts);
    fs::create_directories(out);
    const std::string name = r.id.empty() ? stem : r.id;
    write_file(out / (name + ".csv"), checks_csv(r));
    write_file(out / (name + ".json"), to_json(r).dump(2) + "\n");
    print_failures(r);
    std::cout << r.id << ": " << (r.config_error() ? "ERROR" : (r.pass() ? "PASS" : "FAIL")) << " ("
              << r.checks.size() << " checks)\n";
    return r.exit_code();
}

int cmd_sweep(const std::string& config, const fs::path& out, const BenchOptions& opts) {
    const nlohmann::json j = read_json_file(config);
    const std::vector<SweepPoint> points = expand_sweep(j);
    const std::vector<CaseResult> results = run_sweep(points, opts);

    std::vector<std::string> keys;
    if (j.contains("grid")) {
        for (const auto& item : j.at("grid").items()) keys.push_back(item.key());
    }
    const std::string id = j.value("id", fs::path(config).stem().string());
    fs::create_directories(out);
    write_file(out / (id + ".csv"), sweep_csv(points, results, keys));
    nlohmann::json mirror = nlohmann::json::array();
    for (const CaseResult& r : results) mirror.push_back(to_json(r));
    write_file(out / (id + ".json"), mirror.dump(2) + "\n");

    int code = 0;
    int passed = 0;
    for (const CaseResult& r : results) {
        print_failures(r);
        code = std::max(code, r.exit_code());
        if (r.pass()) ++passed;
    }
    std::cout << id << ": " << passed << "/" << results.size() << " cases pass\n";
    return code;
}

int cmd_convergence(const std::string& config, const fs::path& out) {
    const CaseConfig cfg = case_from_json(read_json_file(config), fs::path(config).stem().string());
    ConvergenceReport r;
    try {
        r = run_convergence(cfg);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    fs::create_directories(out);
    write_file(out / (cfg.id + "_convergence.csv"), convergence_csv(r));
    write_file(out / (cfg.id + "_convergence.json"), to_json(r).dump(2) + "\n");
    std::cout << cfg.id << ": order_max=" << format_number(r.result.order_max)
              << " order_l2=" << format_number(r.result.order_l2)
              << (r.result.monotone ? "" : " (errors not monotone)") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification benchmark for the flux-coupled heat equation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out = "results";
    BenchOptions opts;
    app.add_option("--out", out, "Output directory");
    app.add_option("--tol-scale", opts.tol_scale, "Multiply every check tolerance")->check(CLI::PositiveNumber);
    app.add_option("--jobs", opts.jobs, "Concurrent cases in a sweep")->check(CLI::PositiveNumber);
    app.add_flag("--slow-oracles", opts.slow_oracles, "Use raw double quadrature where a fast path exists");

    std::string config;
    auto* run = app.add_subcommand("run", "Run one case");
    run->add_option("config", config, "Case JSON")->required();
    auto* sweep = app.add_subcommand("sweep", "Run a parameter grid");
    sweep->add_option("config", config, "Sweep JSON")->required();
    auto* conv = app.add_subcommand("convergence", "FD refinement study");
    conv->add_option("config", config, "Case JSON with an fd block")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(config, out, opts);
        if (sweep->parsed()) return cmd_sweep(config, out, opts);
        return cmd_convergence(config, out);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
