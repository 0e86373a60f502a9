#pragma once

#include "pilekit/linalg.hpp"
#include "pilekit/physics.hpp"
#include "pilekit/pielm.hpp"

#include <Eigen/Dense>

#include <functional>

namespace pilekit {

struct FdmConfig {
    int segments = 2000;  ///< Nf; nodes are 0..Nf with spacing l = L/Nf

    void validate() const;
};

/// Assembled banded system K w = f over the Nf+1 real nodes, with the four
/// virtual nodes eliminated through the boundary conditions.
struct FdmSystem {
    linalg::BandedMatrix K;
    Eigen::VectorXd rhs;
    Eigen::VectorXd z;         ///< node depths
    Eigen::VectorXd k_values;  ///< k(z_j)
    Eigen::VectorXd f_values;  ///< load at nodes (pre-elimination)
    double a = 0;              ///< (EI/D) / l^4
    double g = 0;              ///< G / l^2
    double l = 0;              ///< segment length
};

/// Benchmark solution: nodal deflections and derived internal forces.
struct FdmSolution {
    Eigen::VectorXd z;
    Eigen::VectorXd w;
    Eigen::VectorXd theta;
    Eigen::VectorXd M;
    Eigen::VectorXd Q;
    double l = 0;
};

using LoadFunction = std::function<double(double)>;

/// Builds the pentadiagonal system for the given load (default: the
/// tunnelling load from external_load).
FdmSystem assemble_fdm(const PileSoilProblem& problem, const FdmConfig& config);
FdmSystem assemble_fdm(const PileSoilProblem& problem, const FdmConfig& config,
                       const LoadFunction& load);

/// Direct banded solve plus recovery of theta, M, Q via central differences;
/// end values use the virtual-node values implied by the boundary handling.
FdmSolution solve_fdm(const PileSoilProblem& problem, const FdmConfig& config);
FdmSolution solve_fdm(const PileSoilProblem& problem, const FdmConfig& config,
                      const LoadFunction& load);

/// Linear interpolation of the benchmark deflection at the given depths.
MonitoredDataset sample_pseudo_observations(const FdmSolution& solution,
                                            const std::vector<double>& depths);

}  // namespace pilekit
