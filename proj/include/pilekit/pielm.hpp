#pragma once

#include "pilekit/elm.hpp"
#include "pilekit/physics.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace pilekit {

/// Monitored pile-deflection observations (depth in m, deflection in m).
struct MonitoredDataset {
    struct Observation {
        double depth = 0;
        double deflection = 0;
    };
    std::vector<Observation> entries;

    int count() const { return static_cast<int>(entries.size()); }
    void validate(const PileSoilProblem& problem) const;
};

/// Multipliers applied on top of the built-in dimensional row normalization
/// of each loss block. Defaults of 1 reproduce the reference formulation.
struct ResidualWeights {
    double kinematic_w = 1.0;   ///< dw/dz = theta rows
    double kinematic_t = 1.0;   ///< dtheta/dz = Mbar rows
    double kinematic_m = 1.0;   ///< dMbar/dz = Qbar rows
    double equilibrium = 1.0;   ///< force-balance rows
    double data = 1.0;          ///< monitored-deflection rows

    void validate() const;
};

struct SolverConfig {
    int collocation_points = 1000;  ///< Nc, uniform on [0,1] incl. endpoints
    ElmConfig elm;
    ResidualWeights weights;
    double rcond = 1e-12;  ///< relative singular-value cutoff of the pseudoinverse

    void validate() const;
};

/// Which loss block a system row encodes.
enum class LossRow { KinematicW, KinematicTheta, KinematicM, Equilibrium, Data };

/// Affine residual system L(beta_hat) = A * beta_hat - c.
///
/// The unknowns are the nondimensionalized output weights beta_hat; the
/// physical output weights are beta = column_scale .* beta_hat, and the four
/// Mc-blocks of beta produce w, theta, Mbar, Qbar through the hard-constraint
/// constructions. Rows are the governing-equation and data residuals, each
/// scaled by a fixed dimensional normalizer (recorded below) times its
/// configured weight, so that every block is O(1) for a physically sane
/// solution.
struct LossSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd c;
    std::vector<LossRow> row_labels;

    Eigen::VectorXd column_scale;  ///< diag(S): beta = S * beta_hat
    double deflection_scale = 1;   ///< s = max |u| over the pile (1 if zero)
    double char_length = 1;        ///< lambda = (EI / (k_max D))^(1/4)
    Eigen::VectorXd row_scale;     ///< dimensional normalizer per row

    int neurons = 0;
    int collocation_points = 0;
    int data_points = 0;

    /// Stacked feature/derivative values generating every block (used by the
    /// reduced training path).
    Eigen::MatrixXd generator;
};

struct TrainingInfo {
    double residual_norm = 0;  ///< ||A beta_hat - c|| of the weighted system
    int rank = 0;
    double seconds = 0;        ///< assemble + train wall time
};

/// Response fields at a set of depths.
struct ResponseProfile {
    Eigen::VectorXd z;      ///< m
    Eigen::VectorXd w;      ///< lateral deflection, m
    Eigen::VectorXd theta;  ///< rotation, rad
    Eigen::VectorXd M;      ///< bending moment, N m
    Eigen::VectorXd Q;      ///< shear force, N
};

/// Trained output weights plus everything needed to evaluate the fields.
struct TrainedSolution {
    PileSoilProblem problem;
    ElmBasis basis;
    Eigen::VectorXd beta;  ///< 4*Mc physical output weights (b1|b2|b3|b4)
    TrainingInfo info;
};

/// Hard-constraint construction: returns the coefficient row r over beta_h
/// such that the constrained field h (1=w, 2=theta, 3=Mbar, 4=Qbar) equals
/// r * beta_h. `h` is the raw feature row at zt, `h0`/`h1` the feature rows
/// at zt = 0 and 1.
Eigen::RowVectorXd constrained_row(int output_index, PileBc bc, const Eigen::RowVectorXd& h,
                                   const Eigen::RowVectorXd& h0, const Eigen::RowVectorXd& h1,
                                   double zt);

/// d/dzt of constrained_row; `hd` is the raw feature-derivative row at zt.
Eigen::RowVectorXd constrained_derivative_row(int output_index, PileBc bc,
                                              const Eigen::RowVectorXd& hd,
                                              const Eigen::RowVectorXd& h0,
                                              const Eigen::RowVectorXd& h1, double zt);

/// Assembles the weighted residual system from physics and monitored data.
LossSystem assemble_system(const PileSoilProblem& problem, const ElmBasis& basis,
                           const SolverConfig& config, const MonitoredDataset& data = {});

/// Moore-Penrose training: minimum-norm least-squares solution of the system
/// via SVD with singular values below rcond * sigma_max zeroed. Large systems
/// are first reduced onto the row space of the feature generator (exact to
/// working precision). Returns the physical beta.
Eigen::VectorXd train(const LossSystem& system, const SolverConfig& config, TrainingInfo* info);

/// Evaluates w, theta, M, Q at the given depths (0 <= z <= L).
ResponseProfile evaluate(const TrainedSolution& solution, const Eigen::VectorXd& z);

/// init_basis + assemble_system + train. The recorded training time covers
/// the assemble+train span.
TrainedSolution solve(const PileSoilProblem& problem, const SolverConfig& config,
                      const MonitoredDataset& data = {});

}  // namespace pilekit
