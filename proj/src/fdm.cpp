#include "pilekit/fdm.hpp"

#include <cmath>
#include <stdexcept>

namespace pilekit {

void FdmConfig::validate() const {
    if (segments < 8) throw std::invalid_argument("fdm.segments: must be >= 8");
}

FdmSystem assemble_fdm(const PileSoilProblem& problem, const FdmConfig& config) {
    return assemble_fdm(problem, config,
                        [&problem](double z) { return external_load(problem, z); });
}

FdmSystem assemble_fdm(const PileSoilProblem& problem, const FdmConfig& config,
                       const LoadFunction& load) {
    problem.validate();
    config.validate();

    const int nf = config.segments;
    const int n = nf + 1;
    const double L = problem.pile.L;
    const double l = L / nf;
    const double a = problem.pile.EI() / problem.pile.D / (l * l * l * l);
    const double g = shear_layer_modulus(problem) / (l * l);

    FdmSystem sys{linalg::BandedMatrix(n), Eigen::VectorXd(n), Eigen::VectorXd(n),
                  Eigen::VectorXd(n),      Eigen::VectorXd(n), a,
                  g,                       l};
    for (int j = 0; j < n; ++j) {
        sys.z(j) = j * l;
        sys.k_values(j) = subgrade_modulus(problem, sys.z(j));
        sys.f_values(j) = load(sys.z(j));
    }
    sys.rhs = sys.f_values;

    for (int j = 2; j < n - 2; ++j) {
        sys.K.at(j, j - 2) = a;
        sys.K.at(j, j - 1) = -4 * a - g;
        sys.K.at(j, j) = 6 * a + 2 * g + sys.k_values(j);
        sys.K.at(j, j + 1) = -4 * a - g;
        sys.K.at(j, j + 2) = a;
    }

    const bool top_free = problem.bc != PileBc::FixedFixed;
    const bool tip_free = problem.bc == PileBc::FreeFree;
    const int N = nf;

    if (top_free) {
        // M(0) = Q(0) = 0 eliminate w_{-1} = 2 w0 - w1, w_{-2} = w2 - 4 w1 + 4 w0.
        sys.K.at(0, 0) = 2 * a + sys.k_values(0);
        sys.K.at(0, 1) = -4 * a;
        sys.K.at(0, 2) = 2 * a;
        sys.K.at(1, 0) = -2 * a - g;
        sys.K.at(1, 1) = 5 * a + 2 * g + sys.k_values(1);
        sys.K.at(1, 2) = -4 * a - g;
        sys.K.at(1, 3) = a;
    } else {
        // w(0) = 0 replaces the node-0 row; theta(0) = 0 gives w_{-1} = w1.
        sys.K.at(0, 0) = 1.0;
        sys.rhs(0) = 0.0;
        sys.K.at(1, 0) = -4 * a - g;
        sys.K.at(1, 1) = 7 * a + 2 * g + sys.k_values(1);
        sys.K.at(1, 2) = -4 * a - g;
        sys.K.at(1, 3) = a;
    }

    if (tip_free) {
        sys.K.at(N, N) = 2 * a + sys.k_values(N);
        sys.K.at(N, N - 1) = -4 * a;
        sys.K.at(N, N - 2) = 2 * a;
        sys.K.at(N - 1, N) = -2 * a - g;
        sys.K.at(N - 1, N - 1) = 5 * a + 2 * g + sys.k_values(N - 1);
        sys.K.at(N - 1, N - 2) = -4 * a - g;
        sys.K.at(N - 1, N - 3) = a;
    } else {
        sys.K.at(N, N) = 1.0;
        sys.rhs(N) = 0.0;
        sys.K.at(N - 1, N) = -4 * a - g;
        sys.K.at(N - 1, N - 1) = 7 * a + 2 * g + sys.k_values(N - 1);
        sys.K.at(N - 1, N - 2) = -4 * a - g;
        sys.K.at(N - 1, N - 3) = a;
    }
    return sys;
}

FdmSolution solve_fdm(const PileSoilProblem& problem, const FdmConfig& config) {
    return solve_fdm(problem, config,
                     [&problem](double z) { return external_load(problem, z); });
}

FdmSolution solve_fdm(const PileSoilProblem& problem, const FdmConfig& config,
                      const LoadFunction& load) {
    const FdmSystem sys = assemble_fdm(problem, config, load);
    const int n = sys.K.size();
    const int N = n - 1;
    const Eigen::VectorXd w = linalg::solve_banded(sys.K, sys.rhs);

    const bool top_free = problem.bc != PileBc::FixedFixed;
    const bool tip_free = problem.bc == PileBc::FreeFree;
    const double a = sys.a, g = sys.g;

    // Virtual-node values implied by the boundary handling; at a fixed end
    // w_{-2} is recovered from the governing-equation row at the end node.
    double wm1, wm2, wp1, wp2;
    if (top_free) {
        wm1 = 2 * w(0) - w(1);
        wm2 = w(2) - 4 * w(1) + 4 * w(0);
    } else {
        wm1 = w(1);
        wm2 = (sys.f_values(0) - a * (w(2) - 4 * w(1) + 6 * w(0) - 4 * wm1) +
               g * (w(1) - 2 * w(0) + wm1) - sys.k_values(0) * w(0)) /
              a;
    }
    if (tip_free) {
        wp1 = 2 * w(N) - w(N - 1);
        wp2 = w(N - 2) - 4 * w(N - 1) + 4 * w(N);
    } else {
        wp1 = w(N - 1);
        wp2 = (sys.f_values(N) - a * (-4 * wp1 + 6 * w(N) - 4 * w(N - 1) + w(N - 2)) +
               g * (wp1 - 2 * w(N) + w(N - 1)) - sys.k_values(N) * w(N)) /
              a;
    }

    // Extended array with two virtual nodes on each side (index shift +2).
    Eigen::VectorXd we(n + 4);
    we(0) = wm2;
    we(1) = wm1;
    we.segment(2, n) = w;
    we(n + 2) = wp1;
    we(n + 3) = wp2;

    const double EI = problem.pile.EI();
    const double l = sys.l;
    FdmSolution sol;
    sol.z = sys.z;
    sol.w = w;
    sol.l = l;
    sol.theta.resize(n);
    sol.M.resize(n);
    sol.Q.resize(n);
    for (int j = 0; j < n; ++j) {
        const int e = j + 2;
        sol.theta(j) = (we(e + 1) - we(e - 1)) / (2 * l);
        sol.M(j) = EI * (we(e + 1) - 2 * we(e) + we(e - 1)) / (l * l);
        sol.Q(j) = EI * (we(e + 2) - 2 * we(e + 1) + 2 * we(e - 1) - we(e - 2)) /
                   (2 * l * l * l);
    }
    // The eliminations make these identically zero; assign the exact values
    // rather than leaving cancellation residue.
    if (top_free) {
        sol.M(0) = 0.0;
        sol.Q(0) = 0.0;
    } else {
        sol.w(0) = 0.0;
        sol.theta(0) = 0.0;
    }
    if (tip_free) {
        sol.M(N) = 0.0;
        sol.Q(N) = 0.0;
    } else {
        sol.w(N) = 0.0;
        sol.theta(N) = 0.0;
    }
    return sol;
}

MonitoredDataset sample_pseudo_observations(const FdmSolution& solution,
                                            const std::vector<double>& depths) {
    const int n = static_cast<int>(solution.z.size());
    const double L = solution.z(n - 1);
    MonitoredDataset data;
    data.entries.reserve(depths.size());
    for (double depth : depths) {
        if (!(depth >= 0.0 && depth <= L))
            throw std::domain_error("sample_pseudo_observations: depth " +
                                    std::to_string(depth) + " outside [0, L]");
        const double pos = depth / solution.l;
        const int j = std::min(static_cast<int>(pos), n - 2);
        const double frac = pos - j;
        const double w = (1.0 - frac) * solution.w(j) + frac * solution.w(j + 1);
        data.entries.push_back({depth, w});
    }
    return data;
}

}  // namespace pilekit
