#include "pilekit/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pilekit::linalg {

LstsqResult lstsq_svd(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double rcond) {
    if (A.rows() != b.size())
        throw std::invalid_argument("lstsq_svd: A has " + std::to_string(A.rows()) +
                                    " rows but b has " + std::to_string(b.size()));
    if (A.rows() == 0 || A.cols() == 0)
        throw std::invalid_argument("lstsq_svd: empty system");

    const lapack_int m = static_cast<lapack_int>(A.rows());
    const lapack_int n = static_cast<lapack_int>(A.cols());
    Eigen::MatrixXd work = A;  // dgelsd destroys its input
    Eigen::VectorXd sol = Eigen::VectorXd::Zero(std::max(m, n));
    sol.head(m) = b;
    std::vector<double> sv(std::min(m, n));
    lapack_int rank = 0;

    lapack_int info = LAPACKE_dgelsd(LAPACK_COL_MAJOR, m, n, 1, work.data(), m,
                                     sol.data(), std::max(m, n), sv.data(), rcond, &rank);
    if (info != 0)
        throw std::runtime_error("lstsq_svd: dgelsd failed (info=" + std::to_string(info) +
                                 ", size " + std::to_string(m) + "x" + std::to_string(n) + ")");

    LstsqResult out;
    out.x = sol.head(n);
    out.rank = static_cast<int>(rank);
    out.residual_norm = (A * out.x - b).norm();
    return out;
}

Eigen::MatrixXd row_space_basis(const Eigen::MatrixXd& G, double tau) {
    const lapack_int m = static_cast<lapack_int>(G.rows());
    const lapack_int n = static_cast<lapack_int>(G.cols());
    const lapack_int k = std::min(m, n);
    Eigen::MatrixXd work = G;
    Eigen::MatrixXd u(m, k), vt(k, n);
    Eigen::VectorXd sv(k);

    lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m,
                                     sv.data(), u.data(), m, vt.data(), k);
    if (info != 0)
        throw std::runtime_error("row_space_basis: dgesdd failed (info=" + std::to_string(info) + ")");

    int r = 0;
    const double cut = tau * sv(0);
    while (r < k && sv(r) > cut) ++r;
    r = std::max(r, 1);
    return vt.topRows(r).transpose();
}

Eigen::VectorXd BandedMatrix::multiply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y(n_);
    for (int i = 0; i < n_; ++i) {
        long double acc = 0.0L;
        const int lo = std::max(0, i - 2), hi = std::min(n_ - 1, i + 2);
        for (int j = lo; j <= hi; ++j)
            acc += static_cast<long double>(bands_(j - i + 2, i)) * x(j);
        y(i) = static_cast<double>(acc);
    }
    return y;
}

Eigen::MatrixXd BandedMatrix::to_dense() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) {
        const int lo = std::max(0, i - 2), hi = std::min(n_ - 1, i + 2);
        for (int j = lo; j <= hi; ++j) d(i, j) = bands_(j - i + 2, i);
    }
    return d;
}

Eigen::VectorXd solve_banded(const BandedMatrix& K, const Eigen::VectorXd& rhs, int refine_steps) {
    const lapack_int n = K.size();
    if (rhs.size() != n) throw std::invalid_argument("solve_banded: size mismatch");
    const lapack_int kl = 2, ku = 2, ldab = 2 * kl + ku + 1;

    // LAPACK band storage: A(i,j) -> ab(kl+ku+i-j, j)
    Eigen::MatrixXd ab = Eigen::MatrixXd::Zero(ldab, n);
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - 2), hi = std::min(static_cast<int>(n) - 1, i + 2);
        for (int j = lo; j <= hi; ++j) ab(kl + ku + i - j, j) = K.at(i, j);
    }
    std::vector<lapack_int> ipiv(n);
    lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku, ab.data(), ldab, ipiv.data());
    if (info != 0)
        throw std::runtime_error("solve_banded: singular matrix (dgbtrf info=" +
                                 std::to_string(info) + ")");

    Eigen::VectorXd w = rhs;
    info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1, ab.data(), ldab, ipiv.data(),
                          w.data(), n);
    if (info != 0) throw std::runtime_error("solve_banded: dgbtrs failed");

    // Iterative refinement; residuals in extended precision. The stiffness
    // entries span ~1e15 at fine grids and a plain solve loses the last
    // couple of digits of w, which is visible in convergence studies.
    for (int it = 0; it < refine_steps; ++it) {
        Eigen::VectorXd r(n);
        for (int i = 0; i < n; ++i) {
            long double acc = rhs(i);
            const int lo = std::max(0, i - 2), hi = std::min(static_cast<int>(n) - 1, i + 2);
            for (int j = lo; j <= hi; ++j)
                acc -= static_cast<long double>(K.at(i, j)) * w(j);
            r(i) = static_cast<double>(acc);
        }
        info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1, ab.data(), ldab, ipiv.data(),
                              r.data(), n);
        if (info != 0) throw std::runtime_error("solve_banded: refinement dgbtrs failed");
        w += r;
    }
    return w;
}

}  // namespace pilekit::linalg
