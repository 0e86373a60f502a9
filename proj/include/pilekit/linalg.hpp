#pragma once

#include <Eigen/Dense>
#include <vector>

namespace pilekit::linalg {

/// Result of a minimum-norm least-squares solve.
struct LstsqResult {
    Eigen::VectorXd x;
    int rank = 0;              ///< effective rank at the given rcond
    double residual_norm = 0;  ///< ||A x - b||_2 against the input matrix
};

/// Minimum-norm least-squares solution of A x ~= b via SVD (LAPACK dgelsd).
/// Singular values below rcond * sigma_max are treated as zero.
LstsqResult lstsq_svd(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double rcond);

/// Orthonormal basis of the row space of G: columns of the returned matrix
/// are the right singular vectors with sigma > tau * sigma_max.
/// Returns a G.cols() x r matrix (r = numerical rank at tau).
Eigen::MatrixXd row_space_basis(const Eigen::MatrixXd& G, double tau);

/// Square banded matrix in natural (diagonal-offset) storage.
/// bands.col(j) holds the coefficients of unknowns j-2..j+2 in row j;
/// out-of-range entries are zero.
class BandedMatrix {
public:
    explicit BandedMatrix(int n) : n_(n), bands_(Eigen::MatrixXd::Zero(5, n)) {}

    int size() const { return n_; }

    double& at(int row, int col) { return bands_(col - row + 2, row); }
    double at(int row, int col) const { return bands_(col - row + 2, row); }

    /// y = K x, accumulated in extended precision.
    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

    /// Dense copy (test/diagnostic use).
    Eigen::MatrixXd to_dense() const;

    const Eigen::MatrixXd& bands() const { return bands_; }

private:
    int n_;
    Eigen::MatrixXd bands_;  // 5 x n, row r = diagonal offset r-2
};

/// Direct solve of the pentadiagonal system K w = rhs (LAPACK dgbtrf/dgbtrs)
/// followed by `refine_steps` sweeps of iterative refinement with
/// extended-precision residuals.
Eigen::VectorXd solve_banded(const BandedMatrix& K, const Eigen::VectorXd& rhs,
                             int refine_steps = 2);

}  // namespace pilekit::linalg
