#include "pilekit/pielm.hpp"

#include "pilekit/linalg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace pilekit {

namespace {

enum class Construction { Identity, BothEnds, SubtractAtZero, SubtractAtOne };

// Eqs-of-record mapping: which embedding each output uses per boundary case.
Construction construction_for(int output_index, PileBc bc) {
    if (output_index < 1 || output_index > 4)
        throw std::invalid_argument("constrained_row: output index must be 1..4");
    switch (bc) {
        case PileBc::FreeFree:
            return output_index <= 2 ? Construction::Identity : Construction::BothEnds;
        case PileBc::FixedFixed:
            return output_index <= 2 ? Construction::BothEnds : Construction::Identity;
        case PileBc::FreeTopFixedTip:
            return output_index <= 2 ? Construction::SubtractAtOne : Construction::SubtractAtZero;
    }
    return Construction::Identity;
}

// Deflection scale for nondimensionalization: the greenfield soil movement
// sets the response magnitude. Sampled on a fixed grid so it does not depend
// on the collocation count.
double deflection_scale(const PileSoilProblem& p) {
    constexpr int kSamples = 201;
    double s = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double z = p.pile.L * i / (kSamples - 1);
        s = std::max(s, std::abs(soil_displacement(p, z)));
    }
    return s > 0.0 ? s : 1.0;
}

}  // namespace

void MonitoredDataset::validate(const PileSoilProblem& problem) const {
    for (const auto& obs : entries) {
        if (!std::isfinite(obs.depth) || obs.depth < 0.0 || obs.depth > problem.pile.L)
            throw std::invalid_argument("data: depth " + std::to_string(obs.depth) +
                                        " outside [0, L]");
        if (!std::isfinite(obs.deflection))
            throw std::invalid_argument("data: non-finite deflection at depth " +
                                        std::to_string(obs.depth));
    }
}

void ResidualWeights::validate() const {
    for (double v : {kinematic_w, kinematic_t, kinematic_m, equilibrium, data})
        if (!(v >= 0) || !std::isfinite(v))
            throw std::invalid_argument("weights: residual weights must be >= 0");
}

void SolverConfig::validate() const {
    if (collocation_points < 5)
        throw std::invalid_argument("solver.collocation_points: must be >= 5");
    if (!(rcond > 0 && rcond < 1))
        throw std::invalid_argument("solver.rcond: must lie in (0, 1)");
    elm.validate();
    weights.validate();
}

Eigen::RowVectorXd constrained_row(int output_index, PileBc bc, const Eigen::RowVectorXd& h,
                                   const Eigen::RowVectorXd& h0, const Eigen::RowVectorXd& h1,
                                   double zt) {
    switch (construction_for(output_index, bc)) {
        case Construction::Identity: return h;
        case Construction::BothEnds: return h + (zt - 1.0) * h0 - zt * h1;
        case Construction::SubtractAtZero: return h - h0;
        case Construction::SubtractAtOne: return h - h1;
    }
    return h;
}

Eigen::RowVectorXd constrained_derivative_row(int output_index, PileBc bc,
                                              const Eigen::RowVectorXd& hd,
                                              const Eigen::RowVectorXd& h0,
                                              const Eigen::RowVectorXd& h1, double /*zt*/) {
    switch (construction_for(output_index, bc)) {
        case Construction::Identity: return hd;
        case Construction::BothEnds: return hd + h0 - h1;
        // Subtracting a constant leaves the derivative untouched.
        case Construction::SubtractAtZero:
        case Construction::SubtractAtOne: return hd;
    }
    return hd;
}

LossSystem assemble_system(const PileSoilProblem& problem, const ElmBasis& basis,
                           const SolverConfig& config, const MonitoredDataset& data) {
    problem.validate();
    config.validate();
    data.validate(problem);
    if (basis.size() != config.elm.neurons)
        throw std::invalid_argument("assemble_system: basis has " + std::to_string(basis.size()) +
                                    " neurons but config expects " +
                                    std::to_string(config.elm.neurons));

    const int mc = basis.size();
    const int nc = config.collocation_points;
    const int nd = data.count();
    const double L = problem.pile.L;
    const double D = problem.pile.D;
    const double EI = problem.pile.EI();
    const double G = shear_layer_modulus(problem);

    Eigen::VectorXd zt(nc);
    for (int i = 0; i < nc; ++i) zt(i) = static_cast<double>(i) / (nc - 1);

    Eigen::VectorXd kv(nc), fv(nc);
    for (int i = 0; i < nc; ++i) {
        kv(i) = subgrade_modulus(problem, L * zt(i));
        fv(i) = external_load(problem, L * zt(i));
    }
    const double k_max = kv.maxCoeff();
    const double lambda = std::pow(EI / (k_max * D), 0.25);
    const double rho = lambda / L;
    const double s = deflection_scale(problem);

    const Eigen::MatrixXd H = features(basis, zt);
    const Eigen::MatrixXd Hd = feature_derivatives(basis, zt);
    const Eigen::VectorXd ends = (Eigen::VectorXd(2) << 0.0, 1.0).finished();
    const Eigen::MatrixXd Hends = features(basis, ends);
    const Eigen::RowVectorXd h0 = Hends.row(0);
    const Eigen::RowVectorXd h1 = Hends.row(1);

    LossSystem sys;
    sys.neurons = mc;
    sys.collocation_points = nc;
    sys.data_points = nd;
    sys.deflection_scale = s;
    sys.char_length = lambda;
    sys.A = Eigen::MatrixXd::Zero(4 * nc + nd, 4 * mc);
    sys.c = Eigen::VectorXd::Zero(4 * nc + nd);
    sys.row_labels.assign(4 * nc + nd, LossRow::KinematicW);
    sys.row_scale.resize(4 * nc + nd);

    // beta = S * beta_hat: each output block carries its field scale.
    sys.column_scale.resize(4 * mc);
    const double block_scale[4] = {s, s / lambda, s / (lambda * lambda),
                                   s / (lambda * lambda * lambda)};
    for (int b = 0; b < 4; ++b)
        sys.column_scale.segment(b * mc, mc).setConstant(block_scale[b]);

    // Dimensional normalizers per block: lambda^h / s for the kinematic
    // chain, 1/(k_max D s) for force balance, 10/s for data rows. They turn
    // the residuals of Eqs. (29)-(33) into O(1) dimensionless quantities.
    const double r_kin[3] = {lambda / s, lambda * lambda / s, lambda * lambda * lambda / s};
    const double r_equib = 1.0 / (k_max * D * s);
    const double r_data = 10.0 / s;
    const double wmul[3] = {config.weights.kinematic_w, config.weights.kinematic_t,
                            config.weights.kinematic_m};

    // Kinematic chain: (1/L) d<field_h>/dzt - <field_{h+1}> = 0.
    for (int h = 0; h < 3; ++h) {
        const LossRow label = h == 0   ? LossRow::KinematicW
                              : h == 1 ? LossRow::KinematicTheta
                                       : LossRow::KinematicM;
        for (int i = 0; i < nc; ++i) {
            const int row = h * nc + i;
            const double wgt = wmul[h] * r_kin[h];
            sys.A.row(row).segment(h * mc, mc) =
                wmul[h] * r_kin[h] / L * block_scale[h] *
                constrained_derivative_row(h + 1, problem.bc, Hd.row(i), h0, h1, zt(i));
            sys.A.row(row).segment((h + 1) * mc, mc) =
                -wmul[h] * r_kin[h] * block_scale[h + 1] *
                constrained_row(h + 2, problem.bc, H.row(i), h0, h1, zt(i));
            sys.row_labels[row] = label;
            sys.row_scale(row) = wgt;
        }
    }

    // Force balance: (EI/L) dQbar/dzt - G D Mbar + k D w = D f.
    for (int i = 0; i < nc; ++i) {
        const int row = 3 * nc + i;
        const double wgt = config.weights.equilibrium * r_equib;
        sys.A.row(row).segment(0, mc) =
            wgt * kv(i) * D * block_scale[0] *
            constrained_row(1, problem.bc, H.row(i), h0, h1, zt(i));
        sys.A.row(row).segment(2 * mc, mc) =
            -wgt * G * D * block_scale[2] *
            constrained_row(3, problem.bc, H.row(i), h0, h1, zt(i));
        sys.A.row(row).segment(3 * mc, mc) =
            wgt * EI / L * block_scale[3] *
            constrained_derivative_row(4, problem.bc, Hd.row(i), h0, h1, zt(i));
        sys.c(row) = wgt * D * fv(i);
        sys.row_labels[row] = LossRow::Equilibrium;
        sys.row_scale(row) = wgt;
    }

    // Monitored deflections: w(zt_j) = w_data_j.
    Eigen::MatrixXd Hdata;
    if (nd > 0) {
        Eigen::VectorXd ztd(nd);
        for (int j = 0; j < nd; ++j) ztd(j) = data.entries[j].depth / L;
        Hdata = features(basis, ztd);
        for (int j = 0; j < nd; ++j) {
            const int row = 4 * nc + j;
            const double wgt = config.weights.data * r_data;
            sys.A.row(row).segment(0, mc) =
                wgt * block_scale[0] *
                constrained_row(1, problem.bc, Hdata.row(j), h0, h1, ztd(j));
            sys.c(row) = wgt * data.entries[j].deflection;
            sys.row_labels[row] = LossRow::Data;
            sys.row_scale(row) = wgt;
        }
    }

    sys.generator.resize(2 * nc + nd, mc);
    sys.generator.topRows(nc) = H;
    sys.generator.middleRows(nc, nc) = Hd;
    if (nd > 0) sys.generator.bottomRows(nd) = Hdata;
    return sys;
}

Eigen::VectorXd train(const LossSystem& system, const SolverConfig& config, TrainingInfo* info) {
    if (system.A.rows() < 1) throw std::invalid_argument("train: empty system");
    const int mc = system.neurons;

    // Above this width the SVD cost dominates; projecting each block onto the
    // row space of the feature generator shrinks the solve without changing
    // the minimum-norm solution (discarded directions sit below the rcond
    // cutoff).
    const bool reduce = 4 * mc >= 600;

    linalg::LstsqResult ls;
    Eigen::VectorXd beta_hat;
    if (reduce) {
        const Eigen::MatrixXd P0 = linalg::row_space_basis(system.generator, 1e-14);
        const int r = static_cast<int>(P0.cols());
        Eigen::MatrixXd ap(system.A.rows(), 4 * r);
        for (int b = 0; b < 4; ++b)
            ap.middleCols(b * r, r) = system.A.middleCols(b * mc, mc) * P0;
        ls = linalg::lstsq_svd(ap, system.c, config.rcond);
        beta_hat.resize(4 * mc);
        for (int b = 0; b < 4; ++b)
            beta_hat.segment(b * mc, mc) = P0 * ls.x.segment(b * r, r);
    } else {
        ls = linalg::lstsq_svd(system.A, system.c, config.rcond);
        beta_hat = ls.x;
    }

    if (info) {
        info->rank = ls.rank;
        info->residual_norm = (system.A * beta_hat - system.c).norm();
    }
    return system.column_scale.cwiseProduct(beta_hat);
}

ResponseProfile evaluate(const TrainedSolution& solution, const Eigen::VectorXd& z) {
    const double L = solution.problem.pile.L;
    const double EI = solution.problem.pile.EI();
    const int mc = solution.basis.size();

    Eigen::VectorXd zt(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        if (!(z(i) >= -1e-9 && z(i) <= L * (1.0 + 1e-12)))
            throw std::domain_error("evaluate: depth " + std::to_string(z(i)) +
                                    " outside [0, L]");
        zt(i) = std::clamp(z(i) / L, 0.0, 1.0);
    }

    const Eigen::MatrixXd H = features(solution.basis, zt);
    const Eigen::VectorXd ends = (Eigen::VectorXd(2) << 0.0, 1.0).finished();
    const Eigen::MatrixXd Hends = features(solution.basis, ends);
    const Eigen::RowVectorXd h0 = Hends.row(0);
    const Eigen::RowVectorXd h1 = Hends.row(1);

    ResponseProfile out;
    out.z = z;
    out.w.resize(z.size());
    out.theta.resize(z.size());
    out.M.resize(z.size());
    out.Q.resize(z.size());
    const PileBc bc = solution.problem.bc;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        out.w(i) = constrained_row(1, bc, H.row(i), h0, h1, zt(i)).dot(
            solution.beta.segment(0, mc));
        out.theta(i) = constrained_row(2, bc, H.row(i), h0, h1, zt(i)).dot(
            solution.beta.segment(mc, mc));
        out.M(i) = EI * constrained_row(3, bc, H.row(i), h0, h1, zt(i)).dot(
                            solution.beta.segment(2 * mc, mc));
        out.Q(i) = EI * constrained_row(4, bc, H.row(i), h0, h1, zt(i)).dot(
                            solution.beta.segment(3 * mc, mc));
    }
    return out;
}

TrainedSolution solve(const PileSoilProblem& problem, const SolverConfig& config,
                      const MonitoredDataset& data) {
    problem.validate();
    config.validate();

    TrainedSolution sol;
    sol.problem = problem;
    sol.basis = init_basis(config.elm);

    const auto t0 = std::chrono::steady_clock::now();
    const LossSystem system = assemble_system(problem, sol.basis, config, data);
    sol.beta = train(system, config, &sol.info);
    const auto t1 = std::chrono::steady_clock::now();
    sol.info.seconds = std::chrono::duration<double>(t1 - t0).count();
    return sol;
}

}  // namespace pilekit
