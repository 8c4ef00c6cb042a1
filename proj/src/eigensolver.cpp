#include "aqrm/eigensolver.hpp"

#include "aqrm/error.hpp"

#include <Eigen/Eigenvalues>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace aqrm {

const char* to_string(SectorTag tag) {
    switch (tag) {
    case SectorTag::Full: return "full";
    case SectorTag::Even: return "even";
    case SectorTag::Odd: return "odd";
    }
    return "?";
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    Index best = 0;
    double best_abs = -1.0;
    for (Index i = 0; i < v.size(); ++i) {
        // strict comparison with a relative margin keeps the pick stable
        // against last-bit noise between otherwise equal magnitudes
        if (std::abs(v[i]) > best_abs * (1.0 + 1e-12)) {
            best_abs = std::abs(v[i]);
            best = i;
        }
    }
    if (v.size() > 0 && v[best] < 0.0) {
        v = -v;
    }
}

namespace {

double residual_norm(const SparseMatrix& h, const Eigen::VectorXd& v, double e) {
    return (h * v - e * v).norm();
}

double tridiagonal_residual(const Tridiagonal& t, const Eigen::VectorXd& v, double e) {
    const auto n = static_cast<Index>(t.diag.size());
    double acc = 0.0;
    for (Index i = 0; i < n; ++i) {
        double r = (t.diag[static_cast<std::size_t>(i)] - e) * v[i];
        if (i > 0) r += t.off[static_cast<std::size_t>(i - 1)] * v[i - 1];
        if (i + 1 < n) r += t.off[static_cast<std::size_t>(i)] * v[i + 1];
        acc += r * r;
    }
    return std::sqrt(acc);
}

EigenSolution dense_lowest(const SparseMatrix& h, std::size_t k) {
    const Eigen::MatrixXd dense(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success) {
        throw SolverError("dense symmetric eigensolver failed", std::nan(""));
    }
    EigenSolution sol;
    sol.vectors.resize(h.rows(), static_cast<Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
        const auto c = static_cast<Index>(i);
        sol.energies.push_back(es.eigenvalues()[c]);
        sol.vectors.col(c) = es.eigenvectors().col(c);
    }
    return sol;
}

// Lanczos with full reorthogonalization against every stored basis vector.
EigenSolution lanczos_lowest(const SparseMatrix& h, std::size_t k, const SolverOptions& opts) {
    const Index n = h.rows();
    const Index cap = std::min(n, opts.max_krylov);
    const auto kk = static_cast<Index>(k);

    Eigen::MatrixXd basis(n, cap);
    std::vector<double> alpha;
    std::vector<double> beta;

    Eigen::VectorXd v(n);
    for (Index i = 0; i < n; ++i) {
        v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
    }
    v.normalize();

    double worst_estimate = std::numeric_limits<double>::infinity();
    EigenSolution ritz;
    Index m = 0;
    bool converged = false;

    for (Index j = 0; j < cap; ++j) {
        basis.col(j) = v;
        Eigen::VectorXd w = h * v;
        const double a = v.dot(w);
        alpha.push_back(a);
        w -= a * v;
        if (j > 0) w -= beta.back() * basis.col(j - 1);
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXd proj = basis.leftCols(j + 1).transpose() * w;
            w -= basis.leftCols(j + 1) * proj;
        }
        const double b = w.norm();
        m = j + 1;

        const bool invariant = b <= 1e-14 * std::max(1.0, std::abs(a));
        const bool check = m >= kk && (m % 10 == 0 || invariant || m == cap);
        if (check) {
            Tridiagonal t;
            t.diag = alpha;
            t.off.assign(beta.begin(), beta.end());
            ritz = lowest_k_tridiagonal(t, k);
            worst_estimate = 0.0;
            bool ok = true;
            for (Index i = 0; i < kk; ++i) {
                const double est = b * std::abs(ritz.vectors(m - 1, i));
                const double scale = std::max(1.0, std::abs(ritz.energies[static_cast<std::size_t>(i)]));
                worst_estimate = std::max(worst_estimate, est / scale);
                ok = ok && est <= 0.1 * opts.tolerance * scale;
            }
            if (ok || invariant) {
                converged = ok || invariant;
                break;
            }
        }
        if (invariant) {
            break;
        }
        beta.push_back(b);
        v = w / b;
    }

    if (!converged) {
        throw SolverError("Lanczos did not converge within " + std::to_string(cap) +
                              " iterations; achieved relative residual " + std::to_string(worst_estimate),
                          worst_estimate);
    }

    EigenSolution sol;
    sol.energies = ritz.energies;
    sol.vectors = basis.leftCols(m) * ritz.vectors;
    for (Index i = 0; i < kk; ++i) {
        sol.vectors.col(i).normalize();
    }
    return sol;
}

void finalize(EigenSolution& sol, const SparseMatrix& h, const SolverOptions& opts) {
    sol.residuals.clear();
    for (std::size_t i = 0; i < sol.size(); ++i) {
        auto col = sol.vectors.col(static_cast<Index>(i));
        fix_sign(col);
        const double r = residual_norm(h, col, sol.energies[i]);
        sol.residuals.push_back(r);
        if (r > opts.tolerance * std::max(1.0, std::abs(sol.energies[i]))) {
            throw SolverError("eigenpair " + std::to_string(i) + " residual " + std::to_string(r) +
                                  " exceeds target",
                              r);
        }
    }
}

} // namespace

EigenSolution lowest_k(const SparseMatrix& h, std::size_t k, const SolverOptions& opts) {
    if (h.rows() != h.cols()) {
        throw ConfigError("lowest_k needs a square matrix");
    }
    if (k == 0 || static_cast<Index>(k) > h.rows()) {
        throw ConfigError("lowest_k: k must be in [1, dim], got " + std::to_string(k));
    }
    EigenSolution sol = h.rows() <= opts.dense_limit ? dense_lowest(h, k) : lanczos_lowest(h, k, opts);
    finalize(sol, h, opts);
    return sol;
}

EigenSolution lowest_k(const SpinFockMatrix& h, std::size_t k, const SolverOptions& opts) {
    EigenSolution sol = lowest_k(h.matrix, k, opts);
    sol.n_max = h.n_max;
    return sol;
}

EigenSolution lowest_k_tridiagonal(const Tridiagonal& t, std::size_t k) {
    const auto n = static_cast<lapack_int>(t.diag.size());
    if (k == 0 || static_cast<lapack_int>(k) > n) {
        throw ConfigError("lowest_k_tridiagonal: k must be in [1, n]");
    }
    std::vector<double> d = t.diag;
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    std::copy(t.off.begin(), t.off.end(), e.begin());

    const auto kk = static_cast<lapack_int>(k);
    std::vector<double> w(static_cast<std::size_t>(n));
    Eigen::MatrixXd z(n, kk);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(kk));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, kk,
                                           0.0, &found, w.data(), z.data(), n, support.data());
    if (info != 0 || found != kk) {
        throw SolverError("dstevr failed with info " + std::to_string(info), std::nan(""));
    }

    EigenSolution sol;
    sol.energies.assign(w.begin(), w.begin() + kk);
    sol.vectors = std::move(z);
    for (lapack_int i = 0; i < kk; ++i) {
        auto col = sol.vectors.col(i);
        fix_sign(col);
        sol.residuals.push_back(tridiagonal_residual(t, col, sol.energies[static_cast<std::size_t>(i)]));
    }
    return sol;
}

EigenSolution solve_sector(const ModelParams& p, std::size_t n_max, int parity, std::size_t k) {
    const Tridiagonal t = sector_tridiagonal(p, n_max, parity);
    EigenSolution block = lowest_k_tridiagonal(t, k);

    EigenSolution sol;
    sol.energies = block.energies;
    sol.residuals = block.residuals;
    sol.sector = parity > 0 ? SectorTag::Even : SectorTag::Odd;
    sol.params = p;
    sol.n_max = n_max;
    sol.vectors = Eigen::MatrixXd::Zero(static_cast<Index>(2 * (n_max + 1)), static_cast<Index>(k));
    for (std::size_t n = 0; n <= n_max; ++n) {
        const int s = (n % 2 == 0) ? parity : -parity;
        sol.vectors.row(basis_index(n, s)) = block.vectors.row(static_cast<Index>(n));
    }
    return sol;
}

SectorGround sector_ground(const ModelParams& p, const Truncation& t, SectorTag sector) {
    if (sector == SectorTag::Full) {
        throw ConfigError("sector_ground needs the even or odd sector");
    }
    const int parity = sector == SectorTag::Even ? +1 : -1;
    const EigenSolution sol = solve_sector(p, resolve_n_max(p, t), parity, 1);
    return SectorGround{sol.energies[0], sol.vector(0), parity};
}

const char* to_string(Precision p) { return p == Precision::Double ? "double" : "quad"; }

namespace {

using quad = __float128;

constexpr double kDoubleEps = 2.220446049250313e-16;
constexpr double kQuadEps = 1.925929944387236e-34;  // 2^-112

quad qabs(quad v) { return v < 0 ? -v : v; }

struct QuadTridiagonal {
    std::vector<quad> diag;
    std::vector<quad> off_sq;  // squared couplings
    double norm{};             // max |diag| + 2 max |off|
};

QuadTridiagonal quad_sector(const ModelParams& p, std::size_t n_max, int parity) {
    QuadTridiagonal t;
    t.diag.resize(n_max + 1);
    t.off_sq.resize(n_max);
    double max_diag = 0.0, max_off = 0.0;
    const quad omega = p.omega, half_Omega = quad(p.Omega) / 2, g = p.g, lambda = p.lambda;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const int s = (n % 2 == 0) ? parity : -parity;
        t.diag[n] = omega * quad(static_cast<double>(n)) + (s > 0 ? half_Omega : -half_Omega);
        max_diag = std::max(max_diag, std::abs(static_cast<double>(t.diag[n])));
        if (n < n_max) {
            const quad c = s > 0 ? g : g * lambda;
            t.off_sq[n] = c * c * quad(static_cast<double>(n + 1));
            max_off = std::max(max_off, std::sqrt(static_cast<double>(t.off_sq[n])));
        }
    }
    t.norm = max_diag + 2.0 * max_off;
    return t;
}

struct PivotScan {
    std::size_t negatives{};
    bool only_last_negative{};
    quad last{};
    quad last_derivative{};
};

// LDL^T pivots of (T - x I); the number of negative pivots counts the
// eigenvalues below x.
PivotScan scan_pivots(const QuadTridiagonal& t, quad x) {
    PivotScan r;
    const std::size_t n = t.diag.size();
    quad q = t.diag[0] - x;
    quad dq = -1;
    const quad tiny = quad(1e-300);
    for (std::size_t i = 1; i < n; ++i) {
        if (q < 0) ++r.negatives;
        const quad qs = q == 0 ? tiny : q;
        const quad ratio = t.off_sq[i - 1] / qs;
        const quad dnext = -1 + ratio * dq / qs;
        q = t.diag[i] - x - ratio;
        dq = dnext;
    }
    r.only_last_negative = r.negatives == 0;
    if (q < 0) ++r.negatives;
    r.last = q;
    r.last_derivative = dq;
    return r;
}

quad refine_lowest(const QuadTridiagonal& t, double guess) {
    const quad scale = quad(std::max(1.0, t.norm));
    quad delta = quad(1e-9) * quad(std::max(1.0, std::abs(guess)));
    quad lo = quad(guess) - delta, hi = quad(guess) + delta;
    for (int i = 0; i < 40 && scan_pivots(t, lo).negatives != 0; ++i) {
        delta *= 10;
        lo = quad(guess) - delta;
    }
    for (int i = 0; i < 40 && scan_pivots(t, hi).negatives == 0; ++i) {
        delta *= 10;
        hi = quad(guess) + delta;
    }

    const quad stop = 4 * quad(kQuadEps) * scale;
    quad x = quad(guess);
    if (x <= lo || x >= hi) x = (lo + hi) / 2;
    for (int iter = 0; iter < 200 && hi - lo > stop; ++iter) {
        const PivotScan s = scan_pivots(t, x);
        if (s.negatives == 0) {
            lo = x;
        } else {
            hi = x;
        }
        quad next = (lo + hi) / 2;
        if ((s.negatives == 0 || (s.negatives == 1 && s.only_last_negative)) && s.last_derivative != 0) {
            const quad newton = x - s.last / s.last_derivative;
            if (newton > lo && newton < hi) {
                if (qabs(newton - x) <= stop) return newton;
                next = newton;
            }
        }
        x = next;
    }
    return x;
}

} // namespace

long double refine_sector_ground_offset(const ModelParams& p, std::size_t n_max, int parity, double guess) {
    const QuadTridiagonal t = quad_sector(p, n_max, parity);
    return static_cast<long double>(refine_lowest(t, guess) - quad(guess));
}

SectorSplitting sector_splitting(const ModelParams& p, std::size_t n_max, double even_e0, double odd_e0) {
    SectorSplitting out;

    const QuadTridiagonal even = quad_sector(p, n_max, +1);
    const QuadTridiagonal odd = quad_sector(p, n_max, -1);
    const double scale = std::max({1.0, even.norm, odd.norm});

    out.value = even_e0 - odd_e0;
    out.noise_floor = 256.0 * kDoubleEps * scale;
    out.precision = Precision::Double;
    out.resolved = std::abs(out.value) > out.noise_floor;
    if (out.resolved) return out;

    // Two-packet tunneling estimate. Far below the quad floor the refinement
    // cannot resolve anything and is skipped.
    const double d = std::max(p.gz_prime, p.gy_prime);
    const double estimate = (0.5 * p.Omega + 2.0 * p.g_y * p.g_z / p.omega + 1.0) * std::exp(-d * d);
    if (estimate < 1e-60 * scale) {
        out.noise_floor = 256.0 * kQuadEps * scale;
        out.precision = Precision::Quad;
        return out;
    }

    const quad refined = refine_lowest(even, even_e0) - refine_lowest(odd, odd_e0);
    out.value = static_cast<double>(refined);
    out.noise_floor = 256.0 * kQuadEps * scale;
    out.precision = Precision::Quad;
    out.resolved = std::abs(out.value) > out.noise_floor;
    return out;
}

SectorSplitting sector_splitting(const ModelParams& p, std::size_t n_max) {
    const double even = solve_sector(p, n_max, +1, 1).energies[0];
    const double odd = solve_sector(p, n_max, -1, 1).energies[0];
    return sector_splitting(p, n_max, even, odd);
}

LowSpectrum low_spectrum(const ModelParams& p, std::size_t n_max) {
    const std::size_t k = n_max >= 1 ? 2 : 1;
    const EigenSolution even = solve_sector(p, n_max, +1, k);
    const EigenSolution odd = solve_sector(p, n_max, -1, k);

    LowSpectrum ls;
    ls.n_max = n_max;
    ls.even_e0 = even.energies[0];
    ls.odd_e0 = odd.energies[0];
    ls.even_e1 = k > 1 ? even.energies[1] : std::numeric_limits<double>::infinity();
    ls.odd_e1 = k > 1 ? odd.energies[1] : std::numeric_limits<double>::infinity();
    ls.splitting = sector_splitting(p, n_max, ls.even_e0, ls.odd_e0);

    // Parity follows the precise splitting; an unresolved tie goes to odd.
    ls.degenerate = !ls.splitting.resolved;
    ls.ground_parity = ls.splitting.resolved && ls.splitting.value < 0.0 ? +1 : -1;
    ls.ground = ls.ground_parity > 0 ? even.vector(0) : odd.vector(0);

    const double ground_e = ls.ground_parity > 0 ? ls.even_e0 : ls.odd_e0;
    const double other_ground = ls.ground_parity > 0 ? ls.odd_e0 : ls.even_e0;
    const double same_excited = ls.ground_parity > 0 ? ls.even_e1 : ls.odd_e1;
    ls.e0 = ground_e;
    if (other_ground <= same_excited) {
        ls.e1 = other_ground;
        ls.gap_value = std::abs(ls.splitting.value);
    } else {
        ls.e1 = same_excited;
        ls.gap_value = same_excited - ground_e;
    }
    return ls;
}

LowSpectrum low_spectrum(const ModelParams& p, const Truncation& t) {
    return low_spectrum(p, resolve_n_max(p, t));
}

double gap(const ModelParams& p, const Truncation& t) { return low_spectrum(p, t).gap(); }

} // namespace aqrm
