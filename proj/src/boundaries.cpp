#include "aqrm/boundaries.hpp"

#include "aqrm/eigensolver.hpp"
#include "aqrm/error.hpp"
#include "aqrm/observables.hpp"
#include "aqrm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace aqrm {

double g_c(double lambda, const ModelParams& p) { return 2.0 * p.g_s / (1.0 + std::abs(lambda)); }

double g_T1(double lambda, const ModelParams& p) {
    const double d = 1.0 - lambda * lambda;
    if (d <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * p.g_s / std::sqrt(d);
}

std::optional<double> lambda_T1(double g, const ModelParams& p) {
    if (g < 2.0 * p.g_s) return std::nullopt;
    const double r = 2.0 * p.g_s / g;
    return std::sqrt(std::max(0.0, 1.0 - r * r));
}

TwoPacketAnsatz default_ansatz(const ModelParams& p, double alpha, double beta) {
    return TwoPacketAnsatz{alpha, beta, p.gz_prime, 1.0};
}

double gaussian_overlap(double center_a, double center_b, double width) {
    const double d = center_a - center_b;
    return std::exp(-d * d / (4.0 * width * width));
}

double gaussian_derivative_overlap(double center_a, double center_b, double width) {
    return -(center_a - center_b) / (2.0 * width * width) * gaussian_overlap(center_a, center_b, width);
}

ChannelEnergies channel_energies(const ModelParams& p, const TwoPacketAnsatz& a, Braiding braiding) {
    const std::array<double, 2> weight{a.alpha, a.beta};
    const std::array<double, 2> center{-a.displacement, +a.displacement};

    ChannelEnergies ch;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            // phi_j(-x) is the same Gaussian mirrored to -center[j]
            const double w = weight[i] * weight[j];
            ch.tunneling[i][j] = -0.5 * p.Omega * w * gaussian_overlap(center[i], -center[j], a.packet_width);
            ch.spin_orbit[i][j] = std::sqrt(2.0) * p.g_y * w *
                                  gaussian_derivative_overlap(center[i], -center[j], a.packet_width);
        }
    }
    const double opposite = ch.tunneling[0][0] + ch.spin_orbit[0][0];
    ch.e_omega_y = braiding == Braiding::Before ? opposite : -opposite;
    return ch;
}

std::optional<double> e_omega_y_root(double lambda, double omega, double Omega) {
    auto f = [&](double g) {
        const ModelParams p = build_params(omega, Omega, g, lambda);
        return channel_energies(p, default_ansatz(p)).e_omega_y;
    };
    const double g_s = 0.5 * std::sqrt(omega * Omega);
    double lo = 1e-9 * g_s;
    if (!(f(lo) < 0.0)) return std::nullopt;

    double hi = g_s;
    double fhi = f(hi);
    for (int i = 0; i < 80 && fhi < 0.0; ++i) {
        lo = hi;
        hi *= 1.5;
        fhi = f(hi);
    }
    if (!(fhi > 0.0)) return std::nullopt;  // no sign change, or the overlap underflowed

    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        (fm < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<Crossing> detect_crossings(double omega, double Omega, double lambda, double g_lo, double g_hi,
                                       const CrossingOptions& opts) {
    if (!(g_hi > g_lo) || g_lo < 0.0) {
        throw ConfigError("detect_crossings needs 0 <= g_lo < g_hi");
    }
    if (opts.coarse_steps < 2) {
        throw ConfigError("detect_crossings needs at least 2 coarse steps");
    }
    const ModelParams top = build_params(omega, Omega, g_hi, lambda);
    const std::size_t n_max = opts.n_max > 0 ? opts.n_max : adaptive_floor(top);
    const double tol = opts.tol_gs * top.g_s;

    // NaN marks a splitting that stays below the noise floor even in quad
    // precision; such points carry no sign information.
    auto splitting = [&](double g) {
        const ModelParams p = build_params(omega, Omega, g, lambda);
        const SectorSplitting s = sector_splitting(p, n_max);
        return s.resolved ? s.value : std::numeric_limits<double>::quiet_NaN();
    };

    std::vector<double> grid(opts.coarse_steps + 1);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = g_lo + (g_hi - g_lo) * static_cast<double>(i) / static_cast<double>(opts.coarse_steps);
        values[i] = splitting(grid[i]);
    }

    std::vector<Crossing> out;
    std::size_t last = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::isnan(values[i])) continue;
        if (last == grid.size() || (values[i] < 0.0) == (values[last] < 0.0)) {
            last = i;
            continue;
        }
        double lo = grid[last], hi = grid[i];
        const bool lo_negative = values[last] < 0.0;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            const double fm = splitting(mid);
            if (std::isnan(fm)) break;  // cannot resolve further
            ((fm < 0.0) == lo_negative ? lo : hi) = mid;
        }
        const double g = 0.5 * (lo + hi);
        const double r = splitting(g);
        out.push_back({g, std::isnan(r) ? 0.0 : std::abs(r)});
        last = i;
    }
    return out;
}

std::optional<double> detect_u1_breaking(double omega, double Omega, double lambda, double g_lo, double g_hi,
                                         double threshold, std::size_t coarse_steps) {
    if (!(g_hi > g_lo) || coarse_steps < 2) {
        throw ConfigError("detect_u1_breaking needs g_lo < g_hi and >= 2 steps");
    }
    const std::size_t n_max = adaptive_floor(build_params(omega, Omega, g_hi, lambda));
    auto excess = [&](double g) {
        const ModelParams p = build_params(omega, Omega, g, lambda);
        return evaluate(low_spectrum(p, n_max).ground, p).excitation_variance - threshold;
    };
    double prev_g = g_lo;
    if (excess(g_lo) > 0.0) return g_lo;
    for (std::size_t i = 1; i <= coarse_steps; ++i) {
        const double g = g_lo + (g_hi - g_lo) * static_cast<double>(i) / static_cast<double>(coarse_steps);
        const double v = excess(g);
        if (v > 0.0) {
            double lo = prev_g, hi = g;
            for (int k = 0; k < 60; ++k) {
                const double mid = 0.5 * (lo + hi);
                (excess(mid) > 0.0 ? hi : lo) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev_g = g;
    }
    return std::nullopt;
}

const char* to_string(BoundaryKind k) {
    switch (k) {
    case BoundaryKind::Conventional: return "conventional";
    case BoundaryKind::Topological: return "topological";
    case BoundaryKind::U1Breaking: return "u1_breaking";
    }
    return "?";
}

const char* to_string(BoundaryMethod m) { return m == BoundaryMethod::Analytic ? "analytic" : "bisection"; }

BoundaryCurve analytic_g_c(const std::vector<double>& lambdas, const ModelParams& p) {
    BoundaryCurve c{BoundaryKind::Conventional, BoundaryMethod::Analytic, {}};
    for (double l : lambdas) c.points.push_back({l, g_c(l, p) / p.g_s, 0.0, 1});
    return c;
}

BoundaryCurve analytic_g_T1(const std::vector<double>& lambdas, const ModelParams& p) {
    BoundaryCurve c{BoundaryKind::Topological, BoundaryMethod::Analytic, {}};
    // the line diverges at |lambda| = 1 and has no point there
    for (double l : lambdas) {
        const double g = g_T1(l, p);
        if (std::isfinite(g)) c.points.push_back({l, g / p.g_s, 0.0, 1});
    }
    return c;
}

BoundaryCurve numerical_topological(double omega, double Omega, const std::vector<double>& lambdas,
                                    double g_lo_gs, double g_hi_gs, const CrossingOptions& opts) {
    const double g_s = 0.5 * std::sqrt(omega * Omega);
    std::vector<std::vector<Crossing>> slices(lambdas.size());
    parallel_for(lambdas.size(), default_workers(), [&](std::size_t i) {
        slices[i] = detect_crossings(omega, Omega, lambdas[i], g_lo_gs * g_s, g_hi_gs * g_s, opts);
    });

    BoundaryCurve c{BoundaryKind::Topological, BoundaryMethod::Bisection, {}};
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        int order = 1;
        for (const Crossing& x : slices[i]) {
            c.points.push_back({lambdas[i], x.g / g_s, x.residual, order++});
        }
    }
    return c;
}

void write_boundary_csv(const std::string& path, const std::vector<BoundaryCurve>& curves) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "kind,lambda,g_over_gs,method,residual\n";
    char buf[160];
    for (const BoundaryCurve& c : curves) {
        for (const BoundaryPoint& pt : c.points) {
            std::string kind;
            switch (c.kind) {
            case BoundaryKind::Conventional: kind = "g_c"; break;
            case BoundaryKind::Topological: kind = "g_T" + std::to_string(pt.order); break;
            case BoundaryKind::U1Breaking: kind = "u1_breaking"; break;
            }
            std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%s,%.6e\n", kind.c_str(), pt.lambda, pt.g_over_gs,
                          to_string(c.method), pt.residual);
            out << buf;
        }
    }
    if (!out) throw IoError("write failed for " + path);
}

} // namespace aqrm
