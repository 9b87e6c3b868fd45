#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fluxpulse/cli.hpp"
#include "fluxpulse/config.hpp"
#include "fluxpulse/csv_io.hpp"
#include "fluxpulse/errors.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace fluxpulse;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fluxpulse_test_" + std::to_string(std::rand()) +
                std::to_string(reinterpret_cast<std::uintptr_t>(this) & 0xffff));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const std::string p = (path / name).string();
        write_text_file(p, content);
        return p;
    }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// small, fast grid for command-level tests
constexpr const char* kQuickGrid = "[grid]\nx_max = 0.75\nn_points = 257\nd_tau = 0.01\n";

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"fluxpulse"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace

TEST_CASE("minimal config fills defaults") {
    TempDir tmp;
    const auto path = tmp.file("min.ini", "[pulse]\namplitude = 0.59\nduration = 5\n");
    const ExperimentConfig cfg = parse_config(path);
    CHECK(cfg.e_c == 0.009);
    CHECK(cfg.e_l == 645.0);
    CHECK(cfg.e_0 == 76.0);
    CHECK(cfg.center == 20.0); // 4 x duration
    CHECK(cfg.n_points == 1025);
    CHECK(cfg.delta_min == 20.0);
    CHECK(cfg.delta_max == 50.0);
}

TEST_CASE("invalid values are rejected by name") {
    TempDir tmp;
    const auto path = tmp.file("bad.ini", "[params]\ne_0 = -1\n");
    try {
        parse_config(path);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("e_0") != std::string::npos);
    }
}

TEST_CASE("unknown keys and sections are rejected by name") {
    TempDir tmp;
    try {
        parse_config(tmp.file("k.ini", "[grid]\nx_maximum = 1\n"));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("x_maximum") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(tmp.file("s.ini", "[gridd]\nx_max = 1\n")), ConfigError);
    CHECK_THROWS_AS(parse_config(tmp.file("o.ini", "x_max = 1\n")), ConfigError);
}

TEST_CASE("parse errors carry the line number") {
    TempDir tmp;
    const auto path = tmp.file("l.ini", "[grid]\nx_max = 0.75\nn_points == 7\n");
    try {
        parse_config(path);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
}

TEST_CASE("missing file is a config error") {
    CHECK_THROWS_AS(parse_config("/nonexistent/nowhere.ini"), ConfigError);
}

TEST_CASE("render/parse round trip is the identity") {
    ExperimentConfig cfg;
    cfg.amplitude = 0.613;
    cfg.duration = 11.35;
    cfg.center = 45.4;
    cfg.d_tau = 0.004;
    cfg.directory = "out/run1";
    cfg.delta_steps = 7;
    const ExperimentConfig back = parse_config_text(render_config(cfg), "echo");
    CHECK(back == cfg);
}

TEST_CASE("comments and blank lines are tolerated") {
    const ExperimentConfig cfg = parse_config_text(
        "# leading comment\n\n[pulse]\n; semicolon comment\namplitude = 0.5\nduration = 2\n",
        "inline");
    CHECK(cfg.amplitude == 0.5);
    CHECK(cfg.center == 8.0);
}

TEST_CASE("format_double emits shortest round-trip decimals") {
    CHECK(format_double(0.05) == "0.05");
    CHECK(format_double(76.0) == "76");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("cli: relax summary and echo") {
    TempDir tmp;
    const auto cfg = tmp.file("c.ini", std::string(kQuickGrid));
    const auto out = tmp.sub("out");
    CHECK(run({"relax", "--config", cfg, "--out", out}) == 0);
    CHECK(fs::exists(fs::path(out) / "resolved_config.ini"));
    // echo re-parses to the same resolved config
    const ExperimentConfig original = parse_config(cfg);
    const ExperimentConfig echoed = parse_config((fs::path(out) / "resolved_config.ini").string());
    CHECK(echoed == original);
}

TEST_CASE("cli: pulse writes a deterministic timeseries") {
    TempDir tmp;
    const auto cfg = tmp.file(
        "c.ini", std::string(kQuickGrid) + "[pulse]\namplitude = 0.59\nduration = 2\n");
    const auto out1 = tmp.sub("out1"), out2 = tmp.sub("out2");
    REQUIRE(run({"pulse", "--config", cfg, "--out", out1}) == 0);
    REQUIRE(run({"pulse", "--config", cfg, "--out", out2}) == 0);
    const std::string ts1 = slurp((fs::path(out1) / "timeseries.csv").string());
    CHECK(ts1 == slurp((fs::path(out2) / "timeseries.csv").string()));
    CHECK(ts1.rfind("tau,p_left,norm,energy\n", 0) == 0);

    // rerunning from the echo reproduces the output byte for byte
    const auto out3 = tmp.sub("out3");
    REQUIRE(run({"pulse", "--config", (fs::path(out1) / "resolved_config.ini").string(),
                 "--out", out3}) == 0);
    CHECK(ts1 == slurp((fs::path(out3) / "timeseries.csv").string()));
}

TEST_CASE("cli: sweep output is parallelism-invariant") {
    TempDir tmp;
    const auto cfg = tmp.file("c.ini", std::string(kQuickGrid) +
                                           "[sweep]\na_min = 0.55\na_max = 0.65\na_steps = "
                                           "2\ntau0_min = 1.5\ntau0_max = 3\ntau0_steps = 2\n");
    const auto out1 = tmp.sub("j1"), out2 = tmp.sub("j2");
    REQUIRE(run({"sweep", "--config", cfg, "--out", out1, "--jobs", "1"}) == 0);
    REQUIRE(run({"sweep", "--config", cfg, "--out", out2, "--jobs", "2"}) == 0);
    CHECK(slurp((fs::path(out1) / "sweep.csv").string()) ==
          slurp((fs::path(out2) / "sweep.csv").string()));
    CHECK(slurp((fs::path(out1) / "sweep_matrix.csv").string()) ==
          slurp((fs::path(out2) / "sweep_matrix.csv").string()));

    // matrix header row carries the tau0 axis
    const std::string matrix = slurp((fs::path(out1) / "sweep_matrix.csv").string());
    CHECK(matrix.rfind(",1.5,3\n", 0) == 0);
}

TEST_CASE("cli: twopulse bundle") {
    TempDir tmp;
    const auto cfg = tmp.file("c.ini", std::string(kQuickGrid) +
                                           "[pulse]\namplitude = 0.4\nduration = 1.5\n"
                                           "[twopulse]\ndelta_min = 6\ndelta_max = "
                                           "8\ndelta_steps = 3\n");
    const auto out = tmp.sub("out");
    REQUIRE(run({"twopulse", "--config", cfg, "--out", out, "--jobs", "2"}) == 0);
    const std::string csv = slurp((fs::path(out) / "twopulse.csv").string());
    CHECK(csv.rfind("delta_tau,p_left_prime\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4); // header + 3 rows
}

TEST_CASE("cli: profile bundle") {
    TempDir tmp;
    const auto cfg = tmp.file(
        "c.ini", std::string(kQuickGrid) + "[pulse]\namplitude = 0.59\nduration = 2\n");
    const auto out = tmp.sub("out");
    REQUIRE(run({"profile", "--config", cfg, "--out", out}) == 0);
    const std::string profiles = slurp((fs::path(out) / "profiles.csv").string());
    CHECK(profiles.rfind("tau,x,density\n", 0) == 0);
    CHECK(fs::exists(fs::path(out) / "timeseries.csv"));
}

TEST_CASE("cli: fit pipeline and exit codes") {
    TempDir tmp;
    const auto cfg = tmp.file("c.ini", "[output]\nsample_every = 25\n");

    // synthetic decohered trace, t_d = 100
    std::vector<double> ts;
    for (double t = 0.0; t <= 400.0 + 1e-9; t += 0.5)
        ts.push_back(t);
    const auto series = synth_decohered_signal(1.0, 100.0, 0.5, 0.4, ts);
    std::ostringstream csv;
    csv << "t,y\n";
    for (std::size_t i = 0; i < series.t.size(); ++i)
        csv << format_double(series.t[i]) << ',' << format_double(series.y[i]) << '\n';
    const auto data = tmp.file("trace.csv", csv.str());

    const auto out = tmp.sub("out");
    REQUIRE(run({"fit", "--config", cfg, "--input", data, "--out", out}) == 0);
    const EnvelopeFit fit =
        cmd_fit(parse_config(cfg), data, tmp.sub("out_direct"));
    CHECK(std::abs(fit.t_d - 100.0) / 100.0 <= 0.05);
    const std::string fit_csv = slurp((fs::path(out) / "fit.csv").string());
    CHECK(fit_csv.rfind("a1,a2,t_d,rms_residual,n_extrema_used\n", 0) == 0);

    // monotone input: underdetermined -> exit 4
    const auto mono = tmp.file("mono.csv", "t,y\n0,0.1\n1,0.2\n2,0.3\n3,0.4\n");
    CHECK(run({"fit", "--config", cfg, "--input", mono, "--out", tmp.sub("o2")}) == 4);

    // missing config -> exit 2
    CHECK(run({"pulse", "--config", tmp.sub("absent.ini")}) == 2);
    // bad config value -> exit 2
    const auto bad = tmp.file("bad.ini", "[params]\ne_0 = -1\n");
    CHECK(run({"relax", "--config", bad, "--out", tmp.sub("o3")}) == 2);
    // bad usage -> exit 2
    CHECK(run({"pulse"}) == 2);
    CHECK(run({"frobnicate", "--config", cfg}) == 2);
}

#ifdef FLUXPULSE_BIN
TEST_CASE("binary end to end") {
    TempDir tmp;
    const auto cfg = tmp.file("c.ini", std::string(kQuickGrid));
    const std::string cmd = std::string(FLUXPULSE_BIN) + " relax --config " + cfg + " --out " +
                            tmp.sub("out") + " > " + tmp.sub("stdout.txt") + " 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string output = slurp(tmp.sub("stdout.txt"));
    CHECK(output.find("relax: e_ground=") != std::string::npos);
}
#endif
