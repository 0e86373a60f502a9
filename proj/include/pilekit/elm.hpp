#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace pilekit {

enum class Activation { Tanh };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& name);

/// Configuration of the random single-hidden-layer feature map.
struct ElmConfig {
    int neurons = 500;          ///< hidden-layer width Mc
    Activation activation = Activation::Tanh;
    double weight_range = 18.0;  ///< W_i ~ U(-weight_range, +weight_range)
    double bias_range = 18.0;    ///< b_i ~ U(-bias_range, +bias_range)
    std::uint64_t seed = 42;

    void validate() const;
};

/// Frozen random input layer: never mutated after construction.
/// Identical (seed, config) reproduce the basis bit-for-bit on any platform
/// (mt19937_64 stream, 53-bit uniforms, W drawn before b).
struct ElmBasis {
    Eigen::VectorXd weights;  ///< length Mc
    Eigen::VectorXd biases;   ///< length Mc
    Activation activation = Activation::Tanh;
    std::uint64_t seed = 0;
    double weight_range = 0;
    double bias_range = 0;

    int size() const { return static_cast<int>(weights.size()); }
    /// RNG algorithm identifier recorded in run metadata.
    static const char* rng_name() { return "mt19937_64"; }
};

ElmBasis init_basis(const ElmConfig& config);

/// Feature matrix: entry (i,k) = sigma(W_k * zt_i + b_k), zt in [0,1].
Eigen::MatrixXd features(const ElmBasis& basis, const Eigen::VectorXd& zt);

/// Exact derivative of `features` w.r.t. zt:
/// entry (i,k) = W_k * sigma'(W_k * zt_i + b_k).
Eigen::MatrixXd feature_derivatives(const ElmBasis& basis, const Eigen::VectorXd& zt);

}  // namespace pilekit
