// eigensolver.hpp: low-lying eigenpairs of the full Hamiltonian and of its
// parity blocks.

#pragma once

#include "aqrm/model.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace aqrm {

enum class SectorTag { Full, Even, Odd };

const char* to_string(SectorTag tag);

struct EigenSolution {
    std::vector<double> energies;  // ascending
    Eigen::MatrixXd vectors;       // columns in the full (n, s) basis
    std::vector<double> residuals; // ||Hv - Ev|| per pair
    SectorTag sector{SectorTag::Full};
    std::optional<ModelParams> params;
    std::size_t n_max{};

    std::size_t size() const { return energies.size(); }
    Eigen::VectorXd vector(std::size_t i) const { return vectors.col(static_cast<Index>(i)); }
};

struct SolverOptions {
    /// Dense solve up to this dimension, Lanczos above.
    Index dense_limit{512};
    /// Krylov dimension cap for Lanczos.
    Index max_krylov{1500};
    /// Residual target, relative to max(1, |E|).
    double tolerance{1e-9};
};

/// k lowest eigenpairs of a symmetric matrix. Vectors are normalized with the
/// largest-magnitude coefficient made positive. Throws SolverError when the
/// iterative path cannot reach the residual target within max_krylov.
EigenSolution lowest_k(const SparseMatrix& h, std::size_t k, const SolverOptions& opts = {});

EigenSolution lowest_k(const SpinFockMatrix& h, std::size_t k, const SolverOptions& opts = {});

/// k lowest eigenpairs of a symmetric tridiagonal matrix (block-local vectors).
EigenSolution lowest_k_tridiagonal(const Tridiagonal& t, std::size_t k);

/// k lowest eigenpairs of a parity block, vectors embedded in the full basis.
EigenSolution solve_sector(const ModelParams& p, std::size_t n_max, int parity, std::size_t k);

struct SectorGround {
    double energy{};
    Eigen::VectorXd vector;  // full basis
    int parity{};
};

SectorGround sector_ground(const ModelParams& p, const Truncation& t, SectorTag sector);

enum class Precision { Double, Quad };

const char* to_string(Precision p);

/// E0(even) - E0(odd). Deep in the two-packet regime this splitting is far
/// below double rounding, so it is recomputed in quad precision whenever the
/// double value is under its noise floor.
struct SectorSplitting {
    double value{};
    double noise_floor{};
    Precision precision{Precision::Double};
    /// |value| exceeds the noise floor of the precision used.
    bool resolved{};
};

/// Splitting from double estimates of both sector grounds, refined if needed.
SectorSplitting sector_splitting(const ModelParams& p, std::size_t n_max, double even_e0, double odd_e0);
SectorSplitting sector_splitting(const ModelParams& p, std::size_t n_max);

/// Offset to add to `guess` to obtain the lowest eigenvalue of the sector
/// block, computed in quad precision by safeguarded Newton on the LDL^T
/// pivots. `guess` must be within ~1e-6 relative of the answer.
long double refine_sector_ground_offset(const ModelParams& p, std::size_t n_max, int parity, double guess);

/// The two lowest levels of each parity block and the merged low spectrum.
struct LowSpectrum {
    double even_e0{}, even_e1{};
    double odd_e0{}, odd_e1{};
    double e0{}, e1{};
    SectorSplitting splitting;
    int ground_parity{};        // sector holding the ground state
    bool degenerate{};          // splitting unresolved even in quad precision
    Eigen::VectorXd ground;     // full basis, sign-fixed
    std::size_t n_max{};
    double gap_value{};

    /// E1 - E0; equals |splitting| when the two sector grounds are the lowest pair.
    double gap() const { return gap_value; }
};

LowSpectrum low_spectrum(const ModelParams& p, const Truncation& t);
LowSpectrum low_spectrum(const ModelParams& p, std::size_t n_max);

/// First excitation gap E1 - E0.
double gap(const ModelParams& p, const Truncation& t);

/// Makes the largest-magnitude coefficient positive (first index on ties).
void fix_sign(Eigen::Ref<Eigen::VectorXd> v);

} // namespace aqrm
