#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fluxheat/bench.hpp"
#include "fluxheat/errors.hpp"

using namespace fluxheat;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kCases = FLUXHEAT_CASES_DIR;
const std::string kExe = FLUXHEAT_BENCH_EXE;

json phi1_case() {
    return json{{"id", "t"},
                {"phi", {{"kind", "LinearX"}, {"lambda", 1}}},
                {"flux", {{"kind", "Linear"}, {"nu", 1}}},
                {"h", {{"kind", "Monomial"}, {"eta", 1}, {"m", 3}}}};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = "\"" + kExe + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("fluxheat_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST(Config, ParsesBenchAndProblemKeys) {
    json j = phi1_case();
    j["probe_x"] = 0.5;
    j["fd"] = {{"nx", 64}, {"nt", 64}, {"reference", "self"}};
    const CaseConfig c = case_from_json(j);
    EXPECT_EQ(c.id, "t");
    EXPECT_DOUBLE_EQ(c.probe_x, 0.5);
    ASSERT_TRUE(c.fd.has_value());
    EXPECT_EQ(c.fd->grid.nx, 64);
    EXPECT_EQ(c.fd->reference, ReferenceKind::Self);
    EXPECT_EQ(c.spec.h.m, 3.0);
}

TEST(Config, RejectsBadInput) {
    json unknown = phi1_case();
    unknown["colour"] = "red";
    EXPECT_THROW(case_from_json(unknown), ConfigError);
    json even = phi1_case();
    even["h"]["m"] = 2;
    EXPECT_THROW(case_from_json(even), ConfigError);
    json bad_fd = phi1_case();
    bad_fd["fd"] = {{"nx", -4}};
    EXPECT_THROW(case_from_json(bad_fd), ConfigError);
    const CaseResult r = run_case_json(even, "even", {});
    EXPECT_TRUE(r.config_error());
    EXPECT_EQ(r.exit_code(), 2);
}

TEST(RunCase, Phi1CubicPassesEveryCheck) {
    const CaseResult r = run_case(case_from_json(phi1_case()), {});
    ASSERT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
    EXPECT_EQ(r.exit_code(), 0);
}

TEST(RunCase, ZeroFluxRunsStationaryChecksOnly) {
    const CaseResult r = run_case(case_from_json(read_json_file(kCases + "/stationary-zero-flux.json")), {});
    EXPECT_TRUE(r.pass());
    for (const auto& c : r.checks) {
        EXPECT_EQ(c.name.find("volterra"), std::string::npos) << c.name;
        EXPECT_EQ(c.name.find("green"), std::string::npos) << c.name;
    }
}

TEST(RunCase, TightToleranceScaleFails) {
    BenchOptions o;
    o.tol_scale = 1e-12;
    EXPECT_EQ(run_case(case_from_json(phi1_case()), o).exit_code(), 1);
}

TEST(Sweep, CartesianCountAndOrder) {
    const auto pts = expand_sweep(read_json_file(kCases + "/sweeps/shapes-by-m.json"));
    ASSERT_EQ(pts.size(), 12u);
    EXPECT_EQ(pts[0].params[0].first, "h.m");
    EXPECT_EQ(pts[0].params[1].first, "phi.kind");
    // last key fastest, values sorted
    EXPECT_EQ(pts[0].params[1].second, "LinearX");
    EXPECT_EQ(pts[1].params[1].second, "NegSin");
    EXPECT_EQ(pts[2].params[1].second, "NegSinh");
    EXPECT_EQ(pts[3].params[0].second, 3);
    EXPECT_EQ(pts[0].config["phi"]["kind"], "LinearX");
}

TEST(Sweep, EmptyAndOversizedGrids) {
    json j{{"id", "e"}, {"base", phi1_case()}, {"grid", {{"h.eta", json::array()}}}};
    EXPECT_TRUE(expand_sweep(j).empty());
    json big{{"id", "b"}, {"base", phi1_case()}, {"grid", json::object()}};
    json axis = json::array();
    for (int i = 0; i < 101; ++i) axis.push_back(1.0 + i);
    big["grid"]["h.eta"] = axis;
    big["grid"]["phi.lambda"] = axis;
    EXPECT_THROW(expand_sweep(big), ConfigError);
}

TEST(Sweep, ParallelRunIsDeterministic) {
    const auto pts = expand_sweep(read_json_file(kCases + "/sweeps/phi3-lambda-crossing.json"));
    BenchOptions one, many;
    many.jobs = 3;
    const auto a = run_sweep(pts, one);
    const auto b = run_sweep(pts, many);
    std::vector<std::string> keys;
    for (const auto& [k, v] : pts.front().params) keys.push_back(k);
    EXPECT_EQ(sweep_csv(pts, a, keys), sweep_csv(pts, b, keys));
    for (const auto& r : a) EXPECT_TRUE(r.pass()) << r.id;
}

TEST(Report, NumbersRoundTrip) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(std::stod(format_number(M_PI)), M_PI);
}

TEST(Convergence, NeedsThreeGrids) {
    const CaseConfig c = case_from_json(read_json_file(kCases + "/convergence/single-grid.json"));
    EXPECT_THROW(run_convergence(c), ConfigError);
}

TEST(Cli, ExitCodes) {
    const fs::path out = scratch("exit");
    const std::string o = "--out \"" + out.string() + "\" ";
    EXPECT_EQ(run_cli(o + "run \"" + kCases + "/phi1-m3-linear.json\""), 0);
    EXPECT_TRUE(fs::exists(out / "phi1-m3-linear.csv"));
    EXPECT_TRUE(fs::exists(out / "phi1-m3-linear.json"));
    EXPECT_EQ(run_cli(o + "run \"" + kCases + "/invalid/even-m-closed-form.json\""), 2);
    EXPECT_EQ(run_cli(o + "--tol-scale 1e-12 run \"" + kCases + "/phi1-m3-linear.json\""), 1);
    EXPECT_EQ(run_cli(o + "run /nonexistent/config.json"), 2);
    EXPECT_EQ(run_cli(o + "convergence \"" + kCases + "/convergence/single-grid.json\""), 2);
    EXPECT_EQ(run_cli(o + "sweep \"" + kCases + "/sweeps/empty.json\""), 0);
    EXPECT_EQ(run_cli(""), 2);
    fs::remove_all(out);
}

TEST(Cli, RerunsAreByteIdentical) {
    const fs::path a = scratch("a"), b = scratch("b");
    const std::string sweep = kCases + "/sweeps/shapes-by-m.json";
    const std::string conv = kCases + "/convergence/pure-diffusion.json";
    for (const fs::path& d : {a, b}) {
        ASSERT_EQ(run_cli("--out \"" + d.string() + "\" --jobs 2 sweep \"" + sweep + "\""), 0);
        ASSERT_EQ(run_cli("--out \"" + d.string() + "\" convergence \"" + conv + "\""), 0);
    }
    EXPECT_EQ(slurp(a / "shapes-by-m.csv"), slurp(b / "shapes-by-m.csv"));
    EXPECT_EQ(slurp(a / "pure-diffusion_convergence.csv"), slurp(b / "pure-diffusion_convergence.csv"));
    const std::string rows = slurp(a / "shapes-by-m.csv");
    EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 13);
    fs::remove_all(a);
    fs::remove_all(b);
}
