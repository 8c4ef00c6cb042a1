// realspace.hpp: spinor wavefunctions on a grid, node counting, the parity
// product and the x-p duality transform.
//
// Spinor components are the sigma_z = ±1 amplitudes, obtained from the
// sigma_x basis as c_{n,z+} = (c_{n,+x} + c_{n,-x}) / √2 and
// c_{n,z-} = (c_{n,-x} - c_{n,+x}) / √2. The phase of |z-> is chosen so that a
// parity eigenstate obeys psi_-(x) = -P psi_+(-x).

#pragma once

#include "aqrm/model.hpp"

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

namespace aqrm {

enum class Space { Position, Momentum };
enum class Component { Plus, Minus };

const char* to_string(Space s);
const char* to_string(Component c);

struct GridConfig {
    double half_width{0.0};  // <= 0 selects the default for the model
    double step{0.02};       // upper bound on the grid spacing
};

/// Half-width max(gz_prime, gy_prime) + 8 covering both displaced packets.
GridConfig default_grid(const ModelParams& p, double step = 0.02);

struct SpinorWave {
    std::vector<double> x;  // symmetric: x[N-1-i] == -x[i]
    std::vector<double> psi_plus;
    std::vector<double> psi_minus;
    double step{};
    Space space{Space::Position};

    std::size_t size() const { return x.size(); }
    const std::vector<double>& component(Component c) const {
        return c == Component::Plus ? psi_plus : psi_minus;
    }
    /// h * sum(psi_+^2 + psi_-^2)
    double norm() const;
};

/// phi_0 .. phi_{n_max} evaluated at x with the scaled upward recurrence.
std::vector<double> hermite_functions(double x, std::size_t n_max);

/// Position-space spinor of a real state. Throws ConfigError when the grid
/// cannot resolve phi_{n_max} (step > pi / sqrt(2 n_max)).
SpinorWave spinor_wavefunction(const Eigen::VectorXd& state, const GridConfig& grid);

/// Position-space spinor of a complex state after removing its global phase.
/// imag_residual receives the largest imaginary part left over.
SpinorWave spinor_wavefunction(const Eigen::VectorXcd& state, const GridConfig& grid,
                               double* imag_residual = nullptr);

/// Momentum-space spinor via c_n -> (-i)^n c_n, global phase removed.
SpinorWave momentum_wavefunction(const Eigen::VectorXd& state, const GridConfig& grid,
                                 double* imag_residual = nullptr);

/// Applies U_D = (-i)^{a†a + (sigma_x+1)/2}. Maps eigenstates at lambda onto
/// eigenstates at -lambda; applying it twice gives -P.
Eigen::VectorXcd dual_transform(const Eigen::VectorXcd& state);
Eigen::VectorXcd dual_transform(const Eigen::VectorXd& state);

/// Divides out the phase of the largest-magnitude coefficient and returns the
/// real part.
Eigen::VectorXd align_real(const Eigen::VectorXcd& state, double* imag_residual = nullptr);

struct ZeroCount {
    int n_z{};
    std::vector<double> zero_locations;
    Component component{Component::Minus};
    /// A counted crossing was bracketed by samples within 10x the threshold.
    bool ambiguous{};
};

/// Sign changes of one component among samples with |psi| > rel_threshold * max|psi|.
ZeroCount count_zeros(const SpinorWave& wave, Component component = Component::Minus,
                      double rel_threshold = 1e-6);

/// psi_P(x) = psi_+(x) psi_-(-x) on the wave's grid.
std::vector<double> parity_product(const SpinorWave& wave);

/// <psi|H|psi> from the x-space form of the Hamiltonian (harmonic wells at
/// -gz' sigma_z, Omega spin flip, g_y spin-orbit term) with fourth-order
/// finite differences.
double energy_functional(const SpinorWave& wave, const ModelParams& p);

using Metadata = std::map<std::string, std::string>;

/// CSV with `# key=value` header lines then columns x, psi_plus, psi_minus.
void write_wave_csv(const std::string& path, const SpinorWave& wave, const Metadata& meta);

} // namespace aqrm
