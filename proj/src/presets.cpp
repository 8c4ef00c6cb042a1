#include "aqrm/scan.hpp"

namespace aqrm {

namespace {

Preset make(std::string name, std::string description, double omega, Axis lambda, Axis g, std::string quantity,
            bool compute_nz) {
    ScanConfig cfg;
    cfg.omega = omega;
    cfg.Omega = 1.0;
    cfg.lambda = lambda;
    cfg.g_over_gs = g;
    cfg.compute_nz = compute_nz;
    cfg.name = name;
    cfg.quantity = std::move(quantity);
    return Preset{std::move(name), std::move(description), std::move(cfg)};
}

} // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = {
        make("fig1a", "A = <a†a†>/A_0 of the ground state over (lambda, g), omega = 0.01", 0.01, {-1.0, 1.0, 201},
             {0.0, 3.0, 201}, "a_norm", false),
        make("fig1b", "<sigma_x> over (lambda, g), omega = 2", 2.0, {-1.0, 1.0, 201}, {0.0, 8.0, 201}, "sigma_x",
             false),
        make("fig1c", "first excitation gap over (lambda, g), omega = 0.1", 0.1, {-1.0, 1.0, 201},
             {0.0, 3.0, 201}, "gap", false),
        make("fig1d", "first excitation gap over (lambda, g), omega = 0.5", 0.5, {-1.0, 1.0, 201},
             {0.0, 6.0, 201}, "gap", false),
        make("fig1e", "A times parity over (lambda, g), omega = 0.1", 0.1, {-1.0, 1.0, 201}, {0.0, 3.0, 201},
             "AP", false),
        make("fig1f", "A times parity over (lambda, g), omega = 0.5", 0.5, {-1.0, 1.0, 201}, {0.0, 6.0, 201},
             "AP", false),
        make("fig2", "P_x and P_sigma across the conventional transition, lambda = 0.5, omega = 0.01", 0.01,
             {0.5, 0.5, 1}, {0.0, 2.0, 81}, "p_x", false),
        make("fig3", "parity and zero number n_z over (lambda >= 0, g), omega = 0.5", 0.5, {0.0, 1.0, 101},
             {0.0, 6.0, 121}, "n_z", true),
        make("fig4", "parity, excitation number and duality versus lambda, g = 5 g_s, omega = 0.5", 0.5,
             {-1.0, 1.0, 201}, {5.0, 5.0, 1}, "duality_mod", true),
    };
    return all;
}

std::optional<Preset> find_preset(const std::string& name) {
    const std::string key = name == "fig3c" ? "fig3" : name;
    for (const Preset& p : presets()) {
        if (p.name == key) return p;
    }
    return std::nullopt;
}

} // namespace aqrm
