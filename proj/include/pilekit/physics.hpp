#pragma once

#include <stdexcept>
#include <string>

namespace pilekit {

/// Elastic pile treated as an Euler-Bernoulli beam of circular section.
struct PileProperties {
    double E = 0;  ///< elastic modulus [Pa]
    double D = 0;  ///< diameter [m]
    double L = 0;  ///< embedded length [m]

    /// Second moment of area, pi D^4 / 64 [m^4].
    double I() const;
    /// Bending stiffness E*I [N m^2].
    double EI() const { return E * I(); }
};

/// Pasternak-foundation soil description.
struct SoilProperties {
    double Es = 0;    ///< elastic modulus [Pa]
    double nu_s = 0;  ///< Poisson's ratio
    double t = 0;     ///< shear-layer thickness [m]; conventionally 11*D
};

struct TunnelGeometry {
    double H = 0;        ///< tunnel-axis depth below surface [m]
    double R = 0;        ///< tunnel radius [m]
    double x0 = 0;       ///< horizontal tunnel-to-pile distance [m]
    double epsilon = 0;  ///< ground volume loss (fraction; 0.01 = 1%)
};

/// End restraint of the pile.
enum class PileBc {
    FreeFree,         ///< M = Q = 0 at both ends
    FixedFixed,       ///< w = theta = 0 at both ends
    FreeTopFixedTip,  ///< M(0) = Q(0) = 0, w(L) = theta(L) = 0
};

std::string to_string(PileBc bc);
PileBc bc_from_string(const std::string& name);

/// Full physical scenario. Immutable after construction; all member
/// operations are pure and thread-safe.
struct PileSoilProblem {
    PileProperties pile;
    SoilProperties soil;
    TunnelGeometry tunnel;
    PileBc bc = PileBc::FreeFree;

    /// Throws std::invalid_argument naming the offending field if any
    /// invariant is violated.
    void validate() const;
};

/// Depth-dependent subgrade reaction modulus k(z) [Pa].
/// The empirical depth factor switches branch at z/D = 0.5.
double subgrade_modulus(const PileSoilProblem& p, double z);

/// Shear-layer modulus G = Es t / (6 (1 + nu_s)) [Pa m].
double shear_layer_modulus(const PileSoilProblem& p);

/// Lateral greenfield soil displacement u(z) [m] at the pile axis,
/// Loganathan-style closed form evaluated at x = x0.
double soil_displacement(const PileSoilProblem& p, double z);

/// d^2u/dz^2 [1/m], numerical: fourth-order central differences with one
/// Richardson extrapolation level, step 1e-4 * H.
double soil_displacement_curvature(const PileSoilProblem& p, double z);

/// External load f(z) = k(z) u(z) - G u''(z) transferred to the pile.
double external_load(const PileSoilProblem& p, double z);

}  // namespace pilekit
