// model.hpp: anisotropic Rabi model parameters, truncated spin-Fock basis,
// Hamiltonian construction and the parity symmetry.
//
// Basis convention: |n, s> with n the boson occupation and s = ±1 the sigma_x
// eigenvalue, flattened as index(n, s) = 2n + (1 - s)/2. In this basis the
// Hamiltonian is real symmetric:
//
//   <n,s|H|n,s>       = omega*n + s*Omega/2
//   <n+1,-x|H|n,+x>   = g * sqrt(n+1)            (rotating)
//   <n+1,+x|H|n,-x>   = g * lambda * sqrt(n+1)   (counter-rotating)

#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstddef>
#include <vector>

namespace aqrm {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct ModelParams {
    double omega{};   // boson frequency
    double Omega{};   // qubit splitting
    double g{};       // coupling
    double lambda{};  // anisotropy; 1 = Rabi, 0 = Jaynes-Cummings

    // derived
    double g_y{};        // (1 - lambda) g / 2, momentum (spin-orbit) coupling
    double g_z{};        // (1 + lambda) g / 2, displacement coupling
    double g_s{};        // sqrt(omega Omega) / 2
    double gz_prime{};   // sqrt(2) g_z / omega, packet displacement in x
    double gy_prime{};   // sqrt(2) g_y / omega, packet displacement in p
    double eps0_y{};     // -(gy_prime^2 + 1) omega / 2
    double potential_offset{};  // -(gz_prime^2 + 1) omega / 2, constant of the x-space potential

    double g_over_gs() const { return g / g_s; }
};

/// Validates inputs and fills every derived field. Throws ConfigError for
/// non-finite or non-positive frequencies, negative g, or |lambda| > 1 unless
/// allow_any_lambda is set.
ModelParams build_params(double omega, double Omega, double g, double lambda,
                         bool allow_any_lambda = false);

/// Same, with g given in units of g_s.
ModelParams build_params_gs(double omega, double Omega, double g_over_gs, double lambda,
                            bool allow_any_lambda = false);

enum class TruncationPolicy { Fixed, Adaptive };

struct Truncation {
    std::size_t n_max{64};
    TruncationPolicy policy{TruncationPolicy::Adaptive};
    /// Permit a fixed n_max below the adaptive floor.
    bool allow_below_floor{false};

    std::size_t dim() const { return 2 * (n_max + 1); }
};

/// max(64, ceil(8 d^2) + 40) with d the larger of gz_prime and gy_prime.
std::size_t adaptive_floor(const ModelParams& p);

/// Resolves a truncation request into the n_max actually used. Adaptive
/// policies return max(requested, floor); fixed policies return the request,
/// or throw ConfigError when below the floor without allow_below_floor.
std::size_t resolve_n_max(const ModelParams& p, const Truncation& t);

Truncation adaptive_truncation(const ModelParams& p);
Truncation fixed_truncation(std::size_t n_max, bool allow_below_floor = true);

inline constexpr Index basis_index(std::size_t n, int s) {
    return static_cast<Index>(2 * n + (s > 0 ? 0 : 1));
}
inline constexpr std::size_t basis_n(Index i) { return static_cast<std::size_t>(i / 2); }
inline constexpr int basis_s(Index i) { return (i % 2 == 0) ? +1 : -1; }

struct SpinFockMatrix {
    std::size_t n_max{};
    SparseMatrix matrix;  // dim x dim, both triangles stored

    Index dim() const { return matrix.rows(); }
};

SpinFockMatrix build_hamiltonian(const ModelParams& p, const Truncation& t);

/// Diagonal of P = sigma_x (-1)^{a†a} and of its two factors.
struct ParityOperator {
    Eigen::VectorXd total;    // s (-1)^n
    Eigen::VectorXd spatial;  // P_x = (-1)^n
    Eigen::VectorXd spin;     // P_sigma = s
};

ParityOperator parity_operator(std::size_t n_max);

inline constexpr int parity_of(std::size_t n, int s) { return (n % 2 == 0) ? s : -s; }

/// One parity block. Ordered by n; every n contributes exactly one state
/// (n, s_n) with s_n = parity * (-1)^n, so the block is tridiagonal.
struct SectorBlock {
    int parity{};                 // +1 even, -1 odd
    std::size_t n_max{};
    SparseMatrix matrix;
    std::vector<Index> to_full;   // block row -> full basis index

    Eigen::VectorXd embed(const Eigen::VectorXd& block_vector) const;
};

struct ParitySectors {
    SectorBlock even;
    SectorBlock odd;
};

/// Splits an assembled Hamiltonian into its two parity blocks.
ParitySectors parity_sectors(const SpinFockMatrix& h);

/// Builds one parity block directly, without assembling the full matrix.
SectorBlock build_sector(const ModelParams& p, std::size_t n_max, int parity);

/// Diagonal and first off-diagonal of a sector block.
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // size diag.size() - 1
};

Tridiagonal sector_tridiagonal(const ModelParams& p, std::size_t n_max, int parity);

} // namespace aqrm
