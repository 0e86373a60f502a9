#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

constexpr const char* kCli = PILEKIT_CLI_PATH;
constexpr const char* kConfigDir = PILEKIT_CONFIG_DIR;

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

fs::path work_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "pilekit_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args) {
    const fs::path log = work_dir() / "last_run.log";
    const std::string cmd = std::string(kCli) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::stringstream ss;
    ss << std::ifstream(log).rdbuf();
    return {WEXITSTATUS(status), ss.str()};
}

std::string slurp(const fs::path& p) {
    std::stringstream ss;
    ss << std::ifstream(p).rdbuf();
    return ss.str();
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = work_dir() / name;
    std::ofstream(p) << content;
    return p;
}

std::string table1() { return std::string(kConfigDir) + "/table1_free_free.cfg"; }

}  // namespace

TEST_CASE("solve: zero volume loss yields an all-zero profile") {
    const auto cfg = write_file("quiet.cfg",
                                "bc = free_free\n"
                                "[pile]\nE = 30 GPa\nD = 0.5\nL = 25\n"
                                "[soil]\nEs = 24 MPa\nnu_s = 0.5\n"
                                "[tunnel]\nH = 20\nR = 3\nx0 = 4.5\nepsilon = 0\n"
                                "[solver]\nmc = 20\nnc = 25\nnf = 50\n");
    const fs::path out = work_dir() / "quiet_out";
    const auto res = run("solve --config " + cfg.string() + " --out " + out.string());
    CHECK(res.exit_code == 0);

    std::ifstream profile(out / "profile.csv");
    std::string line;
    std::getline(profile, line);  // header
    int rows = 0;
    while (std::getline(profile, line)) {
        ++rows;
        CHECK(line.find(",0,0,0,0") != std::string::npos);
    }
    CHECK(rows == 51);
    CHECK(fs::exists(out / "summary.txt"));
    CHECK(fs::exists(out / "manifest.txt"));
}

TEST_CASE("solve: summary reports the training metadata") {
    const fs::path out = work_dir() / "small_out";
    const auto res = run("solve --config " + table1() + " --mc 20 --nc 25 --nf 100 --out " +
                         out.string());
    CHECK(res.exit_code == 0);
    const std::string summary = slurp(out / "summary.txt");
    CHECK(summary.find("Mc = 20") != std::string::npos);
    CHECK(summary.find("Nc = 25") != std::string::npos);
    CHECK(summary.find("training_seconds") != std::string::npos);
    CHECK(summary.find("rank") != std::string::npos);
}

TEST_CASE("solve: malformed data header exits 2 with a diagnostic") {
    const auto bad = write_file("bad.csv", "depth,mm\n1,2\n");
    const auto res = run("solve --config " + table1() + " --mc 20 --nc 25 --nf 50 --data " +
                         bad.string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("header") != std::string::npos);
}

TEST_CASE("solve: reruns from the manifest reproduce the profile bit for bit") {
    const fs::path first = work_dir() / "run1";
    const fs::path second = work_dir() / "run2";
    const auto data = write_file("obs.csv",
                                 "depth_m,deflection_m\n17,0.00101\n23,0.00077\n");
    auto res = run("solve --config " + table1() + " --mc 30 --nc 40 --nf 200 --seed 9 --data " +
                   data.string() + " --out " + first.string());
    REQUIRE(res.exit_code == 0);
    res = run("solve --config " + (first / "manifest.txt").string() + " --out " +
              second.string());
    REQUIRE(res.exit_code == 0);
    CHECK(slurp(first / "profile.csv") == slurp(second / "profile.csv"));
}

TEST_CASE("fdm: segment floor is enforced") {
    const auto res = run("fdm --config " + table1() + " --nf 7");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("segments") != std::string::npos);
}

TEST_CASE("fdm: fixed ends pin the deflection to zero in the CSV") {
    const fs::path out = work_dir() / "fdm_fixed";
    const auto res = run("fdm --config " + std::string(kConfigDir) +
                         "/table1_fixed_fixed.cfg --nf 100 --out " + out.string());
    REQUIRE(res.exit_code == 0);
    std::ifstream profile(out / "fdm_profile.csv");
    std::string header, first, line, last;
    std::getline(profile, header);
    std::getline(profile, first);
    while (std::getline(profile, line))
        if (!line.empty()) last = line;
    CHECK(first.substr(first.find(',')).rfind(",0,", 0) == 0);
    CHECK(last.substr(last.find(',')).rfind(",0,", 0) == 0);
}

TEST_CASE("compare: identical profiles give zero errors") {
    const fs::path out = work_dir() / "fdm_cmp";
    REQUIRE(run("fdm --config " + table1() + " --nf 64 --out " + out.string()).exit_code == 0);
    const auto res = run("compare " + (out / "fdm_profile.csv").string() + " " +
                         (out / "fdm_profile.csv").string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("L2_w = 0") != std::string::npos);
    CHECK(res.output.find("L2_M = 0") != std::string::npos);
    CHECK(res.output.find("L2_Q = 0") != std::string::npos);
}

TEST_CASE("compare: mismatched grids exit 2") {
    const fs::path a = work_dir() / "grid_a";
    const fs::path b = work_dir() / "grid_b";
    REQUIRE(run("fdm --config " + table1() + " --nf 64 --out " + a.string()).exit_code == 0);
    REQUIRE(run("fdm --config " + table1() + " --nf 32 --out " + b.string()).exit_code == 0);
    const auto res = run("compare " + (a / "fdm_profile.csv").string() + " " +
                         (b / "fdm_profile.csv").string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("grid") != std::string::npos);
}

TEST_CASE("solve vs fdm profiles share the evaluation grid") {
    const fs::path sp = work_dir() / "solve_prof";
    const fs::path fp = work_dir() / "fdm_prof";
    REQUIRE(run("solve --config " + table1() + " --mc 60 --nc 120 --nf 250 --out " +
                sp.string()).exit_code == 0);
    REQUIRE(run("fdm --config " + table1() + " --nf 250 --out " + fp.string()).exit_code == 0);
    const auto res = run("compare " + (fp / "fdm_profile.csv").string() + " " +
                         (sp / "profile.csv").string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("L2_w") != std::string::npos);
}

TEST_CASE("study: unknown sweep kind exits 2") {
    write_file("prob.cfg",
               "bc = free_free\n[pile]\nE = 30 GPa\nD = 0.5\nL = 25\n"
               "[soil]\nEs = 24 MPa\nnu_s = 0.5\n"
               "[tunnel]\nH = 20\nR = 3\nx0 = 4.5\nepsilon = 1 %\n");
    const auto bad = write_file("bad.study", "kind = voronoi\nproblem = prob.cfg\n");
    const auto res = run("study --config " + bad.string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("kind") != std::string::npos);
}

TEST_CASE("study: a small sweep writes the report") {
    write_file("prob_small.cfg",
               "bc = free_free\n[pile]\nE = 30 GPa\nD = 0.5\nL = 25\n"
               "[soil]\nEs = 24 MPa\nnu_s = 0.5\n"
               "[tunnel]\nH = 20\nR = 3\nx0 = 4.5\nepsilon = 1 %\n"
               "[solver]\nnf = 200\n");
    const auto study = write_file("small.study",
                                  "kind = neurons\nproblem = prob_small.cfg\n"
                                  "values = 10 20\nnc = 40\n");
    const fs::path out = work_dir() / "study_out";
    const auto res = run("study --config " + study.string() + " --out " + out.string());
    CHECK(res.exit_code == 0);
    const std::string report = slurp(out / "study_report.csv");
    CHECK(report.find("Mc=10") != std::string::npos);
    CHECK(report.find("Mc=20") != std::string::npos);
}

TEST_CASE("missing config exits 2") {
    const auto res = run("solve --config /nonexistent/nope.cfg");
    CHECK(res.exit_code == 2);
}
