#include "aqrm/model.hpp"

#include "aqrm/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aqrm {

namespace {

void require_frequency(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw ConfigError(std::string(name) + " must be finite and > 0, got " + std::to_string(v));
    }
}

double coupling_below(const ModelParams& p, int s_lower, std::size_t n_lower) {
    // Couples (n, s) to (n+1, -s).
    const double amp = std::sqrt(static_cast<double>(n_lower + 1));
    return (s_lower > 0 ? p.g : p.g * p.lambda) * amp;
}

} // namespace

ModelParams build_params(double omega, double Omega, double g, double lambda, bool allow_any_lambda) {
    require_frequency(omega, "omega");
    require_frequency(Omega, "Omega");
    if (!std::isfinite(g) || g < 0.0) {
        throw ConfigError("g must be finite and >= 0, got " + std::to_string(g));
    }
    if (!std::isfinite(lambda)) {
        throw ConfigError("lambda must be finite");
    }
    if (!allow_any_lambda && std::abs(lambda) > 1.0) {
        throw ConfigError("|lambda| > 1 is outside the supported range, got " + std::to_string(lambda));
    }

    ModelParams p;
    p.omega = omega;
    p.Omega = Omega;
    p.g = g;
    p.lambda = lambda;
    p.g_y = 0.5 * (1.0 - lambda) * g;
    p.g_z = 0.5 * (1.0 + lambda) * g;
    p.g_s = 0.5 * std::sqrt(omega * Omega);
    p.gz_prime = std::sqrt(2.0) * p.g_z / omega;
    p.gy_prime = std::sqrt(2.0) * p.g_y / omega;
    p.eps0_y = -0.5 * (p.gy_prime * p.gy_prime + 1.0) * omega;
    p.potential_offset = -0.5 * (p.gz_prime * p.gz_prime + 1.0) * omega;
    return p;
}

ModelParams build_params_gs(double omega, double Omega, double g_over_gs, double lambda,
                            bool allow_any_lambda) {
    require_frequency(omega, "omega");
    require_frequency(Omega, "Omega");
    return build_params(omega, Omega, g_over_gs * 0.5 * std::sqrt(omega * Omega), lambda,
                        allow_any_lambda);
}

std::size_t adaptive_floor(const ModelParams& p) {
    const double d = std::max(std::abs(p.gz_prime), std::abs(p.gy_prime));
    const auto tail = static_cast<std::size_t>(std::ceil(8.0 * d * d)) + 40;
    return std::max<std::size_t>(64, tail);
}

std::size_t resolve_n_max(const ModelParams& p, const Truncation& t) {
    const std::size_t floor = adaptive_floor(p);
    if (t.policy == TruncationPolicy::Adaptive) {
        return std::max(t.n_max, floor);
    }
    if (t.n_max == 0) throw ConfigError("n_max must be >= 1");
    if (t.n_max < floor && !t.allow_below_floor) {
        throw ConfigError("n_max " + std::to_string(t.n_max) + " is below the adaptive floor " +
                          std::to_string(floor) + "; pass an explicit override to force it");
    }
    return t.n_max;
}

Truncation adaptive_truncation(const ModelParams& p) {
    return Truncation{adaptive_floor(p), TruncationPolicy::Adaptive, false};
}

Truncation fixed_truncation(std::size_t n_max, bool allow_below_floor) {
    return Truncation{n_max, TruncationPolicy::Fixed, allow_below_floor};
}

SpinFockMatrix build_hamiltonian(const ModelParams& p, const Truncation& t) {
    const std::size_t n_max = resolve_n_max(p, t);
    const auto dim = static_cast<Index>(2 * (n_max + 1));

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(dim) * 3);
    for (std::size_t n = 0; n <= n_max; ++n) {
        for (int s : {+1, -1}) {
            const Index i = basis_index(n, s);
            entries.emplace_back(i, i, p.omega * static_cast<double>(n) + 0.5 * s * p.Omega);
            if (n < n_max) {
                const double v = coupling_below(p, s, n);
                if (v != 0.0) {
                    const Index j = basis_index(n + 1, -s);
                    entries.emplace_back(i, j, v);
                    entries.emplace_back(j, i, v);
                }
            }
        }
    }

    SpinFockMatrix h;
    h.n_max = n_max;
    h.matrix.resize(dim, dim);
    h.matrix.setFromTriplets(entries.begin(), entries.end());
    h.matrix.makeCompressed();
    return h;
}

ParityOperator parity_operator(std::size_t n_max) {
    const auto dim = static_cast<Index>(2 * (n_max + 1));
    ParityOperator op{Eigen::VectorXd(dim), Eigen::VectorXd(dim), Eigen::VectorXd(dim)};
    for (Index i = 0; i < dim; ++i) {
        const std::size_t n = basis_n(i);
        const int s = basis_s(i);
        op.spatial[i] = (n % 2 == 0) ? 1.0 : -1.0;
        op.spin[i] = s;
        op.total[i] = parity_of(n, s);
    }
    return op;
}

Eigen::VectorXd SectorBlock::embed(const Eigen::VectorXd& block_vector) const {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Index>(2 * (n_max + 1)));
    for (std::size_t k = 0; k < to_full.size(); ++k) {
        full[to_full[k]] = block_vector[static_cast<Index>(k)];
    }
    return full;
}

namespace {

SectorBlock extract_sector(const SpinFockMatrix& h, int parity) {
    SectorBlock block;
    block.parity = parity;
    block.n_max = h.n_max;

    std::vector<Index> to_block(static_cast<std::size_t>(h.dim()), -1);
    for (Index i = 0; i < h.dim(); ++i) {
        if (parity_of(basis_n(i), basis_s(i)) == parity) {
            to_block[static_cast<std::size_t>(i)] = static_cast<Index>(block.to_full.size());
            block.to_full.push_back(i);
        }
    }

    std::vector<Eigen::Triplet<double>> entries;
    for (Index i : block.to_full) {
        for (SparseMatrix::InnerIterator it(h.matrix, i); it; ++it) {
            const Index j = to_block[static_cast<std::size_t>(it.col())];
            if (j >= 0) {
                entries.emplace_back(to_block[static_cast<std::size_t>(i)], j, it.value());
            }
        }
    }
    const auto m = static_cast<Index>(block.to_full.size());
    block.matrix.resize(m, m);
    block.matrix.setFromTriplets(entries.begin(), entries.end());
    block.matrix.makeCompressed();
    return block;
}

} // namespace

ParitySectors parity_sectors(const SpinFockMatrix& h) {
    return ParitySectors{extract_sector(h, +1), extract_sector(h, -1)};
}

Tridiagonal sector_tridiagonal(const ModelParams& p, std::size_t n_max, int parity) {
    if (parity != 1 && parity != -1) throw ConfigError("parity must be +1 or -1");
    Tridiagonal t;
    t.diag.resize(n_max + 1);
    t.off.resize(n_max);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const int s = (n % 2 == 0) ? parity : -parity;
        t.diag[n] = p.omega * static_cast<double>(n) + 0.5 * s * p.Omega;
        if (n < n_max) {
            t.off[n] = coupling_below(p, s, n);
        }
    }
    return t;
}

SectorBlock build_sector(const ModelParams& p, std::size_t n_max, int parity) {
    const Tridiagonal t = sector_tridiagonal(p, n_max, parity);
    SectorBlock block;
    block.parity = parity;
    block.n_max = n_max;
    block.to_full.resize(n_max + 1);

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(3 * (n_max + 1));
    for (std::size_t n = 0; n <= n_max; ++n) {
        const int s = (n % 2 == 0) ? parity : -parity;
        block.to_full[n] = basis_index(n, s);
        const auto k = static_cast<Index>(n);
        entries.emplace_back(k, k, t.diag[n]);
        if (n < n_max && t.off[n] != 0.0) {
            entries.emplace_back(k, k + 1, t.off[n]);
            entries.emplace_back(k + 1, k, t.off[n]);
        }
    }
    const auto m = static_cast<Index>(n_max + 1);
    block.matrix.resize(m, m);
    block.matrix.setFromTriplets(entries.begin(), entries.end());
    block.matrix.makeCompressed();
    return block;
}

} // namespace aqrm
