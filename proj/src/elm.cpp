#include "pilekit/elm.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace pilekit {

namespace {

void check_domain(const Eigen::VectorXd& zt) {
    for (Eigen::Index i = 0; i < zt.size(); ++i) {
        if (!(zt(i) >= -1e-12 && zt(i) <= 1.0 + 1e-12))
            throw std::domain_error("features: normalized coordinate " + std::to_string(zt(i)) +
                                    " outside [0, 1]");
    }
}

}  // namespace

std::string to_string(Activation a) {
    switch (a) {
        case Activation::Tanh: return "tanh";
    }
    return "tanh";
}

Activation activation_from_string(const std::string& name) {
    if (name == "tanh") return Activation::Tanh;
    throw std::invalid_argument("activation: unknown value '" + name + "'");
}

void ElmConfig::validate() const {
    if (neurons < 1) throw std::invalid_argument("elm.neurons: must be >= 1");
    if (!(weight_range > 0)) throw std::invalid_argument("elm.weight_range: must be > 0");
    if (!(bias_range >= 0)) throw std::invalid_argument("elm.bias_range: must be >= 0");
}

ElmBasis init_basis(const ElmConfig& config) {
    config.validate();
    std::mt19937_64 gen(config.seed);
    // 53-bit mantissa uniforms straight from the generator words; avoids
    // std::uniform_real_distribution, whose stream is not portable.
    auto uniform = [&gen](double lo, double hi) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    };

    ElmBasis basis;
    basis.activation = config.activation;
    basis.seed = config.seed;
    basis.weight_range = config.weight_range;
    basis.bias_range = config.bias_range;
    basis.weights.resize(config.neurons);
    basis.biases.resize(config.neurons);
    for (int i = 0; i < config.neurons; ++i)
        basis.weights(i) = uniform(-config.weight_range, config.weight_range);
    for (int i = 0; i < config.neurons; ++i)
        basis.biases(i) = uniform(-config.bias_range, config.bias_range);
    return basis;
}

Eigen::MatrixXd features(const ElmBasis& basis, const Eigen::VectorXd& zt) {
    check_domain(zt);
    Eigen::MatrixXd h(zt.size(), basis.size());
    for (Eigen::Index i = 0; i < zt.size(); ++i)
        for (int k = 0; k < basis.size(); ++k)
            h(i, k) = std::tanh(basis.weights(k) * zt(i) + basis.biases(k));
    return h;
}

Eigen::MatrixXd feature_derivatives(const ElmBasis& basis, const Eigen::VectorXd& zt) {
    check_domain(zt);
    Eigen::MatrixXd d(zt.size(), basis.size());
    for (Eigen::Index i = 0; i < zt.size(); ++i)
        for (int k = 0; k < basis.size(); ++k) {
            const double t = std::tanh(basis.weights(k) * zt(i) + basis.biases(k));
            d(i, k) = basis.weights(k) * (1.0 - t * t);
        }
    return d;
}

}  // namespace pilekit
