// observables.hpp: scalar diagnostics of a state in the (n, s) basis.

#pragma once

#include "aqrm/model.hpp"

#include <Eigen/Core>

#include <complex>
#include <optional>

namespace aqrm {

struct ObservableSet {
    double a_dag_a_dag{};           // <a† a†> (real for real states)
    std::optional<double> a_norm;   // <a† a†> / A_0, empty when g = 0
    double sigma_x{};
    double parity{};
    double p_x{};                   // <(-1)^{a†a}>
    double p_sigma{};               // <sigma_x>, same operator as sigma_x
    double excitation{};            // <a†a + sigma_x / 2>
    double excitation_variance{};   // variance of a†a + sigma_x / 2
    std::complex<double> duality;   // <U_D>
    double x2{};
    double p2{};
    double photon_number{};

    double duality_modulus() const { return std::abs(duality); }
    double duality_phase() const { return std::arg(duality); }
};

/// A_0 = [(1 + |lambda|) g / (2 omega)]^2.
double a_norm_scale(const ModelParams& p);

/// Throws ConfigError if |1 - ||state||| > 1e-8 or the length does not
/// match a 2(n_max+1) basis.
ObservableSet evaluate(const Eigen::VectorXd& state, const ModelParams& p);

/// <a†a†>/A_0, or nullopt when A_0 vanishes (g = 0).
std::optional<double> a_norm(const Eigen::VectorXd& state, const ModelParams& p);

/// <psi| U_D |psi> with U_D = (-i)^{a†a + (sigma_x + 1)/2}: the x-p exchange
/// combined with the spin rotation {sx, sy, sz} -> {sx, -sz, sy}, phased so
/// that the decoupled Jaynes-Cummings vacuum |0, -x> has D = 1.
std::complex<double> duality_expectation(const Eigen::VectorXd& state);

/// Phase (-i)^m that U_D assigns to basis state (n, s), m = n + (1+s)/2.
std::complex<double> duality_phase(std::size_t n, int s);

} // namespace aqrm
