#include "pilekit/config.hpp"
#include "pilekit/csv.hpp"
#include "pilekit/experiments.hpp"
#include "pilekit/fdm.hpp"
#include "pilekit/pielm.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace pilekit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> mc, nc, nf;
    std::optional<double> rcond;

    void apply(config::RunSpec& spec) const {
        if (seed) spec.solver.elm.seed = *seed;
        if (mc) spec.solver.elm.neurons = *mc;
        if (nc) spec.solver.collocation_points = *nc;
        if (nf) spec.fdm_segments = *nf;
        if (rcond) spec.solver.rcond = *rcond;
    }
};

std::string command_line(int argc, char** argv) {
    std::ostringstream ss;
    for (int i = 0; i < argc; ++i) ss << (i ? " " : "") << argv[i];
    return ss.str();
}

Eigen::VectorXd uniform_grid(double L, int segments) {
    Eigen::VectorXd z(segments + 1);
    for (int i = 0; i <= segments; ++i) z(i) = L * i / segments;
    return z;
}

void write_summary(const fs::path& path, const config::RunSpec& spec,
                   const TrainedSolution& sol) {
    std::ofstream out(path);
    out << "version = " << config::version() << "\n"
        << "seed = " << sol.basis.seed << "\n"
        << "rng = " << ElmBasis::rng_name() << "\n"
        << "Mc = " << spec.solver.elm.neurons << "\n"
        << "Nc = " << spec.solver.collocation_points << "\n"
        << "N_data = " << spec.data.count() << "\n"
        << "residual_norm = " << csv::format_double(sol.info.residual_norm) << "\n"
        << "rank = " << sol.info.rank << "\n"
        << "training_seconds = " << csv::format_double(sol.info.seconds) << "\n";
}

int cmd_solve(const std::string& config_path, const std::string& data_path,
              const std::string& out_dir, const Overrides& over, const std::string& command) {
    config::RunSpec spec = config::load_problem(config_path);
    over.apply(spec);
    if (!data_path.empty()) spec.data = csv::read_data(data_path);
    spec.solver.validate();
    spec.data.validate(spec.problem);

    const TrainedSolution sol = solve(spec.problem, spec.solver, spec.data);
    const ResponseProfile profile =
        evaluate(sol, uniform_grid(spec.problem.pile.L, spec.fdm_segments));

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    csv::write_profile((dir / "profile.csv").string(), profile);
    write_summary(dir / "summary.txt", spec, sol);
    config::write_manifest((dir / "manifest.txt").string(), spec, command,
                           {"profile.csv", "summary.txt"});
    std::cout << "solve: Mc=" << spec.solver.elm.neurons
              << " Nc=" << spec.solver.collocation_points << " N_data=" << spec.data.count()
              << " rank=" << sol.info.rank << " train=" << sol.info.seconds << "s -> "
              << (dir / "profile.csv").string() << "\n";
    return kExitOk;
}

int cmd_fdm(const std::string& config_path, const std::string& out_dir, const Overrides& over,
            const std::string& command) {
    config::RunSpec spec = config::load_problem(config_path);
    over.apply(spec);
    FdmConfig fdm{spec.fdm_segments};
    fdm.validate();

    const FdmSolution sol = solve_fdm(spec.problem, fdm);
    ResponseProfile profile{sol.z, sol.w, sol.theta, sol.M, sol.Q};

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    csv::write_profile((dir / "fdm_profile.csv").string(), profile);
    config::write_manifest((dir / "manifest.txt").string(), spec, command, {"fdm_profile.csv"});
    std::cout << "fdm: Nf=" << spec.fdm_segments << " -> " << (dir / "fdm_profile.csv").string()
              << "\n";
    return kExitOk;
}

int cmd_compare(const std::string& path_a, const std::string& path_b) {
    const ResponseProfile a = csv::read_profile(path_a);
    const ResponseProfile b = csv::read_profile(path_b);
    if (a.z.size() != b.z.size() || (a.z - b.z).cwiseAbs().maxCoeff() != 0.0)
        throw std::invalid_argument("compare: depth grids of '" + path_a + "' and '" + path_b +
                                    "' do not match");
    std::cout << "L2_w = " << csv::format_double(relative_l2(a.w, b.w)) << "\n";
    std::cout << "L2_M = " << csv::format_double(relative_l2(a.M, b.M)) << "\n";
    std::cout << "L2_Q = " << csv::format_double(relative_l2(a.Q, b.Q)) << "\n";
    return kExitOk;
}

int cmd_study(const std::string& study_path, const std::string& out_dir,
              const std::string& command) {
    const StudyConfig study = config::load_study(study_path);
    const StudyReport report = run_study(study);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    csv::write_study_records((dir / "study_report.csv").string(), report);
    std::vector<std::string> outputs{"study_report.csv"};
    if (!report.profiles.empty()) {
        csv::write_error_profiles((dir / "study_error_profiles.csv").string(), report);
        outputs.push_back("study_error_profiles.csv");
    }
    config::RunSpec snapshot{study.problem, study.solver, study.fdm_segments, {}};
    config::write_manifest((dir / "manifest.txt").string(), snapshot, command, outputs);
    std::cout << "study: " << to_string(study.kind) << ", " << report.records.size()
              << " runs -> " << (dir / "study_report.csv").string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tunnelling-induced soil-pile interaction solver kit"};
    app.require_subcommand(1);

    std::string config_path, data_path, out_dir = ".", path_a, path_b;
    Overrides over;

    auto add_overrides = [&over](CLI::App* cmd) {
        cmd->add_option("--seed", over.seed, "random seed for the input layer");
        cmd->add_option("--mc", over.mc, "hidden-layer neuron count");
        cmd->add_option("--nc", over.nc, "collocation-point count");
        cmd->add_option("--nf", over.nf, "benchmark/evaluation segment count");
        cmd->add_option("--rcond", over.rcond, "pseudoinverse singular-value cutoff");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "train the network and write the profile");
    solve_cmd->add_option("--config", config_path, "problem definition file")->required();
    solve_cmd->add_option("--data", data_path, "monitored-deflection CSV");
    solve_cmd->add_option("--out", out_dir, "output directory");
    add_overrides(solve_cmd);

    CLI::App* fdm_cmd = app.add_subcommand("fdm", "run the finite-difference benchmark");
    fdm_cmd->add_option("--config", config_path, "problem definition file")->required();
    fdm_cmd->add_option("--out", out_dir, "output directory");
    add_overrides(fdm_cmd);

    CLI::App* compare_cmd = app.add_subcommand("compare", "relative L2 errors between profiles");
    compare_cmd->add_option("reference", path_a, "reference profile CSV")->required();
    compare_cmd->add_option("candidate", path_b, "candidate profile CSV")->required();

    CLI::App* study_cmd = app.add_subcommand("study", "run a parametric study");
    study_cmd->add_option("--config", config_path, "study definition file")->required();
    study_cmd->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        const std::string command = command_line(argc, argv);
        if (solve_cmd->parsed()) return cmd_solve(config_path, data_path, out_dir, over, command);
        if (fdm_cmd->parsed()) return cmd_fdm(config_path, out_dir, over, command);
        if (compare_cmd->parsed()) return cmd_compare(path_a, path_b);
        if (study_cmd->parsed()) return cmd_study(config_path, out_dir, command);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitInput;
}
