#include "pilekit/physics.hpp"

#include <cmath>

namespace pilekit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& field, const std::string& rule) {
    if (!ok) throw std::invalid_argument(field + ": " + rule);
}

}  // namespace

double PileProperties::I() const { return kPi * D * D * D * D / 64.0; }

std::string to_string(PileBc bc) {
    switch (bc) {
        case PileBc::FreeFree: return "free_free";
        case PileBc::FixedFixed: return "fixed_fixed";
        case PileBc::FreeTopFixedTip: return "free_top_fixed_tip";
    }
    return "free_free";
}

PileBc bc_from_string(const std::string& name) {
    if (name == "free_free") return PileBc::FreeFree;
    if (name == "fixed_fixed") return PileBc::FixedFixed;
    if (name == "free_top_fixed_tip") return PileBc::FreeTopFixedTip;
    throw std::invalid_argument("bc: unknown value '" + name +
                                "' (expected free_free, fixed_fixed or free_top_fixed_tip)");
}

void PileSoilProblem::validate() const {
    require(std::isfinite(pile.E) && pile.E > 0, "pile.E", "must be > 0");
    require(std::isfinite(pile.D) && pile.D > 0, "pile.D", "must be > 0");
    require(std::isfinite(pile.L) && pile.L > 0, "pile.L", "must be > 0");
    require(pile.L > pile.D, "pile.L", "must exceed the diameter");
    require(std::isfinite(soil.Es) && soil.Es > 0, "soil.Es", "must be > 0");
    require(std::isfinite(soil.nu_s) && soil.nu_s >= 0 && soil.nu_s <= 0.5, "soil.nu_s",
            "must lie in [0, 0.5]");
    require(std::isfinite(soil.t) && soil.t > 0, "soil.t", "must be > 0");
    require(std::isfinite(tunnel.R) && tunnel.R > 0, "tunnel.R", "must be > 0");
    require(std::isfinite(tunnel.H) && tunnel.H > tunnel.R, "tunnel.H",
            "must exceed the tunnel radius");
    require(std::isfinite(tunnel.x0), "tunnel.x0", "must be finite");
    require(std::isfinite(tunnel.epsilon) && tunnel.epsilon >= 0, "tunnel.epsilon",
            "must be >= 0");
}

double subgrade_modulus(const PileSoilProblem& p, double z) {
    if (z < 0.0 || z > p.pile.L)
        throw std::domain_error("subgrade_modulus: depth " + std::to_string(z) +
                                " outside [0, L]");
    const double zd = z / p.pile.D;
    const double eta = (zd <= 0.5) ? 2.18 : 1.0 + 1.0 / (1.7 * zd);
    const double moduli = p.soil.Es / (1.0 - p.soil.nu_s * p.soil.nu_s);
    const double stiffness_ratio =
        p.soil.Es * std::pow(p.pile.D, 4) / (p.pile.E * p.pile.I());
    return 3.08 / eta * moduli * std::pow(stiffness_ratio, 0.125);
}

double shear_layer_modulus(const PileSoilProblem& p) {
    return p.soil.Es * p.soil.t / (6.0 * (1.0 + p.soil.nu_s));
}

double soil_displacement(const PileSoilProblem& p, double z) {
    const double x = p.tunnel.x0, H = p.tunnel.H, R = p.tunnel.R;
    const double nu = p.soil.nu_s, eps = p.tunnel.epsilon;
    if (x == 0.0 || eps == 0.0) return 0.0;
    const double dm = H - z, dp = H + z;
    const double geom = 1.0 / (x * x + dm * dm) + (3.0 - 4.0 * nu) / (x * x + dp * dp);
    const double decay =
        std::exp(-(1.38 * x * x / ((H + R) * (H + R)) + 0.69 * z * z / (H * H)));
    return -eps * R * R * x * geom * decay;
}

double soil_displacement_curvature(const PileSoilProblem& p, double z) {
    const double h = 1e-4 * p.tunnel.H;
    auto d2 = [&](double s) {
        return (-soil_displacement(p, z + 2 * s) + 16.0 * soil_displacement(p, z + s) -
                30.0 * soil_displacement(p, z) + 16.0 * soil_displacement(p, z - s) -
                soil_displacement(p, z - 2 * s)) /
               (12.0 * s * s);
    };
    return (16.0 * d2(h / 2) - d2(h)) / 15.0;
}

double external_load(const PileSoilProblem& p, double z) {
    return subgrade_modulus(p, z) * soil_displacement(p, z) -
           shear_layer_modulus(p) * soil_displacement_curvature(p, z);
}

}  // namespace pilekit
