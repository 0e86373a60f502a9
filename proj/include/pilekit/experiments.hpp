#pragma once

#include "pilekit/fdm.hpp"
#include "pilekit/pielm.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pilekit {

/// Relative L2 discrepancy sqrt(sum (ref-cand)^2) / sqrt(sum ref^2).
/// Throws std::domain_error when the reference is identically zero.
double relative_l2(const Eigen::VectorXd& reference, const Eigen::VectorXd& candidate);

enum class StudyKind { Validation, Neurons, Collocation, Repeatability, DataLocations, DataCounts };

std::string to_string(StudyKind kind);
StudyKind study_kind_from_string(const std::string& name);

/// One data-study series: named depth set (empty = physics only) with an
/// optional collocation-count override (the control series).
struct DataSeries {
    std::string name;
    std::vector<double> depths;
    std::optional<int> collocation_override;
};

struct StudyConfig {
    PileSoilProblem problem;
    StudyKind kind = StudyKind::Validation;

    std::vector<int> sweep_values;      ///< Mc list (Neurons) or Nc list (Collocation)
    std::vector<DataSeries> series;     ///< DataLocations / DataCounts
    std::vector<double> epsilons = {0.01, 0.02, 0.03};  ///< Validation

    SolverConfig solver;        ///< fixed settings (study ops override Mc/Nc per spec)
    int fdm_segments = 2000;    ///< reference benchmark resolution
    int repeats = 5;            ///< Repeatability

    void validate() const;
};

/// One record per run: settings, errors against the FDM reference, timing.
struct StudyRecord {
    std::string label;
    std::string bc;
    double epsilon = 0;
    int neurons = 0;
    int collocation_points = 0;
    int data_points = 0;
    std::uint64_t seed = 0;
    double l2_w = 0;
    double l2_m = 0;
    double l2_q = 0;
    double train_seconds = 0;
    double residual_norm = 0;
    int rank = 0;
};

/// Per-depth absolute error profile (data studies; plot-ready).
struct ErrorProfile {
    std::string label;
    Eigen::VectorXd z;
    Eigen::VectorXd abs_err_w;
    Eigen::VectorXd abs_err_m;
};

struct StudyReport {
    std::vector<StudyRecord> records;
    std::vector<ErrorProfile> profiles;
};

/// Table-2 style cross-validation: three boundary cases x volume losses at
/// the fixed solver settings, errors measured at the FDM nodes.
StudyReport run_validation(const StudyConfig& config);

/// Neuron sweep (fixed Nc) or collocation sweep (fixed Mc).
StudyReport run_architecture_sweep(const StudyConfig& config);

/// Monitored-data location/count series with pseudo-observations sampled
/// from the benchmark; emits per-depth error profiles.
StudyReport run_data_study(const StudyConfig& config);

/// Repeated runs with distinct seeds at fixed settings.
StudyReport run_repeatability(const StudyConfig& config);

/// Dispatch on config.kind.
StudyReport run_study(const StudyConfig& config);

}  // namespace pilekit
