// boundaries.hpp: analytic transition lines, two-packet channel energies and
// numerical boundary detection by parity-sector level crossings.

#pragma once

#include "aqrm/model.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace aqrm {

/// Conventional (low-frequency) transition 2 g_s / (1 + |lambda|).
double g_c(double lambda, const ModelParams& p);

/// Primary topological boundary 2 g_s / sqrt(1 - lambda^2); +inf at |lambda| = 1.
double g_T1(double lambda, const ModelParams& p);

/// Inverse of g_T1: sqrt(1 - 4 g_s^2 / g^2). Empty for g < 2 g_s.
std::optional<double> lambda_T1(double g, const ModelParams& p);

/// psi_+(x) = alpha phi_alpha + beta phi_beta with unit-normalized Gaussians
/// phi_alpha centered at -displacement (the spin-up well) and phi_beta at +displacement.
struct TwoPacketAnsatz {
    double alpha{1.0};
    double beta{0.0};
    double displacement{};  // gz_prime when built from params
    double packet_width{1.0};
};

TwoPacketAnsatz default_ansatz(const ModelParams& p, double alpha = 1.0, double beta = 0.0);

enum class Braiding { Before, After };

/// Tunneling and spin-orbit channels indexed [gamma][gamma'] with 0 = alpha,
/// 1 = beta:
///   tunneling[g][g']  = -(Omega/2) w_g w_g' <phi_g(x)|phi_g'(-x)>
///   spin_orbit[g][g'] = sqrt(2) g_y w_g w_g' <phi_g(x)|d/dx phi_g'(-x)>
struct ChannelEnergies {
    std::array<std::array<double, 2>, 2> tunneling{};
    std::array<std::array<double, 2>, 2> spin_orbit{};
    /// Opposite-side sum tunneling[0][0] + spin_orbit[0][0], sign-flipped after braiding.
    double e_omega_y{};
};

ChannelEnergies channel_energies(const ModelParams& p, const TwoPacketAnsatz& a,
                                 Braiding braiding = Braiding::Before);

/// <phi_a | phi_b> for normalized Gaussians of equal width centered at a, b.
double gaussian_overlap(double center_a, double center_b, double width);
/// <phi_a | d/dx phi_b>.
double gaussian_derivative_overlap(double center_a, double center_b, double width);

/// g > 0 where the before-braiding opposite-side energy changes sign, found
/// by bracketing and bisection on the channel energy alone. Empty when no
/// sign change exists (lambda = ±1).
std::optional<double> e_omega_y_root(double lambda, double omega, double Omega);

struct Crossing {
    double g{};         // absolute coupling
    double residual{};  // |E_even - E_odd| at g
};

struct CrossingOptions {
    std::size_t coarse_steps{240};
    double tol_gs{1e-6};  // bisection tolerance in units of g_s
    /// 0 = adaptive floor at g_hi, held fixed over the slice.
    std::size_t n_max{0};
};

/// Every g in [g_lo, g_hi] (absolute units) where the even and odd sector
/// ground energies cross, ascending. Empty when none.
std::vector<Crossing> detect_crossings(double omega, double Omega, double lambda, double g_lo, double g_hi,
                                       const CrossingOptions& opts = {});

/// Smallest g in [g_lo, g_hi] where the ground-state variance of
/// a†a + sigma_x/2 exceeds threshold. Heuristic marker of U(1) breaking.
std::optional<double> detect_u1_breaking(double omega, double Omega, double lambda, double g_lo, double g_hi,
                                         double threshold = 1e-3, std::size_t coarse_steps = 120);

enum class BoundaryKind { Conventional, Topological, U1Breaking };
enum class BoundaryMethod { Analytic, Bisection };

const char* to_string(BoundaryKind k);
const char* to_string(BoundaryMethod m);

struct BoundaryPoint {
    double lambda{};
    double g_over_gs{};
    double residual{};
    int order{1};  // 1 for g_T1, 2 for g_T2, ...
};

struct BoundaryCurve {
    BoundaryKind kind{};
    BoundaryMethod method{};
    std::vector<BoundaryPoint> points;
};

BoundaryCurve analytic_g_c(const std::vector<double>& lambdas, const ModelParams& p);
BoundaryCurve analytic_g_T1(const std::vector<double>& lambdas, const ModelParams& p);

/// Numerical crossings per lambda slice over g in [g_lo_gs, g_hi_gs] (g_s
/// units); slices are independent and merged by lambda then g.
BoundaryCurve numerical_topological(double omega, double Omega, const std::vector<double>& lambdas,
                                    double g_lo_gs, double g_hi_gs, const CrossingOptions& opts = {});

/// CSV columns: kind, lambda, g_over_gs, method, residual.
void write_boundary_csv(const std::string& path, const std::vector<BoundaryCurve>& curves);

} // namespace aqrm
