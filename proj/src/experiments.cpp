#include "pilekit/experiments.hpp"

#include <cmath>
#include <stdexcept>

namespace pilekit {

double relative_l2(const Eigen::VectorXd& reference, const Eigen::VectorXd& candidate) {
    if (reference.size() != candidate.size())
        throw std::invalid_argument("relative_l2: length mismatch");
    if (reference.size() == 0) throw std::invalid_argument("relative_l2: empty input");
    const double ref_norm = reference.norm();
    if (ref_norm == 0.0)
        throw std::domain_error("relative_l2: reference field is identically zero");
    return (reference - candidate).norm() / ref_norm;
}

std::string to_string(StudyKind kind) {
    switch (kind) {
        case StudyKind::Validation: return "validation";
        case StudyKind::Neurons: return "neurons";
        case StudyKind::Collocation: return "collocation";
        case StudyKind::Repeatability: return "repeatability";
        case StudyKind::DataLocations: return "data_locations";
        case StudyKind::DataCounts: return "data_counts";
    }
    return "validation";
}

StudyKind study_kind_from_string(const std::string& name) {
    if (name == "validation") return StudyKind::Validation;
    if (name == "neurons") return StudyKind::Neurons;
    if (name == "collocation") return StudyKind::Collocation;
    if (name == "repeatability") return StudyKind::Repeatability;
    if (name == "data_locations") return StudyKind::DataLocations;
    if (name == "data_counts") return StudyKind::DataCounts;
    throw std::invalid_argument("study.kind: unknown value '" + name + "'");
}

void StudyConfig::validate() const {
    problem.validate();
    solver.validate();
    FdmConfig{fdm_segments}.validate();
    if (repeats < 1) throw std::invalid_argument("study.repeats: must be >= 1");
    if ((kind == StudyKind::Neurons || kind == StudyKind::Collocation) && sweep_values.empty())
        throw std::invalid_argument("study.values: sweep values must be nonempty");
    if ((kind == StudyKind::DataLocations || kind == StudyKind::DataCounts) && series.empty())
        throw std::invalid_argument("study.series: at least one series required");
    for (const auto& s : series)
        for (double d : s.depths)
            if (!(d >= 0.0 && d <= problem.pile.L))
                throw std::invalid_argument("study.series " + s.name + ": depth outside [0, L]");
}

namespace {

StudyRecord run_case(const PileSoilProblem& problem, const SolverConfig& solver,
                     const FdmSolution& reference, const MonitoredDataset& data,
                     const std::string& label) {
    const TrainedSolution sol = solve(problem, solver, data);
    const ResponseProfile prof = evaluate(sol, reference.z);

    StudyRecord rec;
    rec.label = label;
    rec.bc = to_string(problem.bc);
    rec.epsilon = problem.tunnel.epsilon;
    rec.neurons = solver.elm.neurons;
    rec.collocation_points = solver.collocation_points;
    rec.data_points = data.count();
    rec.seed = solver.elm.seed;
    rec.l2_w = relative_l2(reference.w, prof.w);
    rec.l2_m = relative_l2(reference.M, prof.M);
    rec.l2_q = relative_l2(reference.Q, prof.Q);
    rec.train_seconds = sol.info.seconds;
    rec.residual_norm = sol.info.residual_norm;
    rec.rank = sol.info.rank;
    return rec;
}

ErrorProfile error_profile(const PileSoilProblem& problem, const SolverConfig& solver,
                           const FdmSolution& reference, const MonitoredDataset& data,
                           const std::string& label) {
    const TrainedSolution sol = solve(problem, solver, data);
    const ResponseProfile prof = evaluate(sol, reference.z);
    ErrorProfile ep;
    ep.label = label;
    ep.z = reference.z;
    ep.abs_err_w = (prof.w - reference.w).cwiseAbs();
    ep.abs_err_m = (prof.M - reference.M).cwiseAbs();
    return ep;
}

}  // namespace

StudyReport run_validation(const StudyConfig& config) {
    config.validate();
    StudyReport report;
    for (PileBc bc : {PileBc::FreeFree, PileBc::FixedFixed, PileBc::FreeTopFixedTip}) {
        for (double eps : config.epsilons) {
            PileSoilProblem p = config.problem;
            p.bc = bc;
            p.tunnel.epsilon = eps;
            const FdmSolution ref = solve_fdm(p, FdmConfig{config.fdm_segments});
            report.records.push_back(
                run_case(p, config.solver, ref, {}, to_string(bc)));
        }
    }
    return report;
}

StudyReport run_architecture_sweep(const StudyConfig& config) {
    config.validate();
    const FdmSolution ref = solve_fdm(config.problem, FdmConfig{config.fdm_segments});
    StudyReport report;
    for (int value : config.sweep_values) {
        SolverConfig solver = config.solver;
        std::string label;
        if (config.kind == StudyKind::Neurons) {
            solver.elm.neurons = value;
            label = "Mc=" + std::to_string(value);
        } else {
            solver.collocation_points = value;
            label = "Nc=" + std::to_string(value);
        }
        report.records.push_back(run_case(config.problem, solver, ref, {}, label));
    }
    return report;
}

StudyReport run_data_study(const StudyConfig& config) {
    config.validate();
    const FdmSolution ref = solve_fdm(config.problem, FdmConfig{config.fdm_segments});
    StudyReport report;
    for (const auto& series : config.series) {
        SolverConfig solver = config.solver;
        if (series.collocation_override) solver.collocation_points = *series.collocation_override;
        MonitoredDataset data;
        if (!series.depths.empty()) data = sample_pseudo_observations(ref, series.depths);
        report.records.push_back(run_case(config.problem, solver, ref, data, series.name));
        report.profiles.push_back(
            error_profile(config.problem, solver, ref, data, series.name));
    }
    return report;
}

StudyReport run_repeatability(const StudyConfig& config) {
    config.validate();
    const FdmSolution ref = solve_fdm(config.problem, FdmConfig{config.fdm_segments});
    StudyReport report;
    for (int i = 0; i < config.repeats; ++i) {
        SolverConfig solver = config.solver;
        solver.elm.seed = config.solver.elm.seed + static_cast<std::uint64_t>(i);
        report.records.push_back(
            run_case(config.problem, solver, ref, {}, "run" + std::to_string(i + 1)));
    }
    return report;
}

StudyReport run_study(const StudyConfig& config) {
    switch (config.kind) {
        case StudyKind::Validation: return run_validation(config);
        case StudyKind::Neurons:
        case StudyKind::Collocation: return run_architecture_sweep(config);
        case StudyKind::DataLocations:
        case StudyKind::DataCounts: return run_data_study(config);
        case StudyKind::Repeatability: return run_repeatability(config);
    }
    throw std::invalid_argument("run_study: unknown kind");
}

}  // namespace pilekit
