// Acceptance checks: one PASS/FAIL line per criterion. Tolerances are fixed
// here and never read from the environment.

#include "aqrm/boundaries.hpp"
#include "aqrm/eigensolver.hpp"
#include "aqrm/observables.hpp"
#include "aqrm/realspace.hpp"
#include "aqrm/scan.hpp"

#include "oracles.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

using namespace aqrm;

namespace {

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void decoupled_limit() {
    constexpr double tol = 1e-12;
    const ModelParams p = build_params(0.1, 1.0, 0.0, 0.0);
    const LowSpectrum ls = low_spectrum(p, adaptive_truncation(p));
    const double de = std::abs(ls.e0 + 0.5);
    const double dg = std::abs(ls.gap() - 0.1);
    report(de <= tol && dg <= tol, "decoupled-limit", fmt("|E0+0.5|=%.2e |gap-0.1|=%.2e (tol %.0e)", de, dg, tol));
}

void jcm_oracle() {
    constexpr double tol = 1e-10;
    constexpr double time_limit = 1.0;
    bool ok = true;
    std::string detail;
    for (double ggs : {0.5, 1.0, 2.0}) {
        const auto t0 = std::chrono::steady_clock::now();
        const ModelParams p = build_params_gs(0.5, 1.0, ggs, 0.0);
        const EigenSolution s = lowest_k(build_hamiltonian(p, adaptive_truncation(p)), 10);
        const double dt = seconds_since(t0);
        const auto ref = oracle::jcm_levels(0.5, 1.0, p.g, 10);
        double worst = 0.0;
        for (std::size_t i = 0; i < 10; ++i) worst = std::max(worst, std::abs(s.energies[i] - ref[i]));
        ok = ok && worst <= tol && dt < time_limit;
        detail += fmt("g=%.1fg_s max|dE|=%.1e %.3fs; ", ggs, worst, dt);
    }
    report(ok, "jcm-oracle", detail + fmt("(tol %.0e, <%.0fs)", tol, time_limit));
}

void topological_boundary() {
    constexpr double rel_tol = 0.05;
    constexpr double time_limit = 30.0;
    constexpr double g_lo_gs = 0.5, g_hi_gs = 6.0;
    bool ok = true;
    std::string detail;
    for (double lambda : {0.3, 0.6, 0.8}) {
        const double expected = 2.0 / std::sqrt(1.0 - lambda * lambda);
        double first[2] = {NAN, NAN};
        int k = 0;
        for (double omega : {0.1, 0.5}) {
            const double g_s = 0.5 * std::sqrt(omega);
            const auto t0 = std::chrono::steady_clock::now();
            const auto found = detect_crossings(omega, 1.0, lambda, g_lo_gs * g_s, g_hi_gs * g_s);
            const double dt = seconds_since(t0);
            if (!found.empty()) first[k] = found[0].g / g_s;
            const bool hit = !found.empty() && std::abs(first[k] - expected) / expected <= rel_tol;
            ok = ok && hit && dt < time_limit;
            detail += fmt("l=%.1f w=%.1f g*=%.4f (g_T1 %.4f) %.1fs; ", lambda, omega, first[k], expected, dt);
            ++k;
        }
        const bool agree = std::abs(first[0] - first[1]) / first[1] <= rel_tol;
        ok = ok && agree;
    }
    report(ok, "topological-boundary", detail + fmt("(tol %.0f%%, freq agreement %.0f%%, <%.0fs/slice)",
                                                    100 * rel_tol, 100 * rel_tol, time_limit));
}

void zero_staircase() {
    constexpr std::size_t points = 100;
    std::vector<int> nz, parity;
    int ambiguous = 0;
    for (std::size_t i = 0; i < points; ++i) {
        const double lambda = 1.0 - static_cast<double>(i) / static_cast<double>(points - 1);
        const ModelParams p = build_params_gs(0.5, 1.0, 5.2, lambda);
        const LowSpectrum ls = low_spectrum(p, adaptive_truncation(p));
        const ZeroCount z = count_zeros(spinor_wavefunction(ls.ground, default_grid(p)), Component::Minus);
        nz.push_back(z.n_z);
        parity.push_back(ls.ground_parity);
        ambiguous += z.ambiguous;
    }
    // collapse into blocks of equal n_z
    std::vector<int> block_nz, block_parity;
    bool parity_constant = true;
    for (std::size_t i = 0; i < points; ++i) {
        if (block_nz.empty() || nz[i] != block_nz.back()) {
            block_nz.push_back(nz[i]);
            block_parity.push_back(parity[i]);
        } else if (parity[i] != block_parity.back()) {
            parity_constant = false;
        }
    }
    const bool ok = block_nz == std::vector<int>{0, 1, 2, 3} && block_parity == std::vector<int>{-1, 1, -1, 1} &&
                    parity_constant;
    std::string seq;
    for (std::size_t b = 0; b < block_nz.size(); ++b) seq += fmt("%d(%c) ", block_nz[b], block_parity[b] > 0 ? '+' : '-');
    report(ok, "zero-staircase", fmt("blocks: %s; transitions=%zu, ambiguous samples=%d", seq.c_str(),
                                     block_nz.size() - 1, ambiguous));
}

void hidden_symmetry() {
    constexpr double before_min = 0.999, after_max = 0.99;
    auto factors = [](double ggs) {
        const ModelParams p = build_params_gs(0.01, 1.0, ggs, 0.5);
        const ObservableSet o = evaluate(low_spectrum(p, adaptive_truncation(p)).ground, p);
        return std::pair{std::abs(o.p_x), std::abs(o.p_sigma)};
    };
    const auto [bx, bs] = factors(0.5);
    const auto [ax, as] = factors(1.45);
    const bool ok = bx >= before_min && bs >= before_min && ax <= after_max && as <= after_max;
    report(ok, "hidden-symmetry",
           fmt("g=0.5g_s |Px|=%.6f |Ps|=%.6f (>=%.3f); g=1.45g_s |Px|=%.6f |Ps|=%.6f (<=%.2f)", bx, bs, before_min,
               ax, as, after_max));
}

void duality() {
    constexpr double fidelity_min = 0.999, modulus_tol = 1e-8;
    const ModelParams minus = build_params_gs(0.5, 1.0, 5.0, -0.1);
    const ModelParams plus = build_params_gs(0.5, 1.0, 5.0, 0.1);
    const std::size_t n = std::max(adaptive_floor(minus), adaptive_floor(plus));
    const Eigen::VectorXcd d = dual_transform(low_spectrum(minus, n).ground);
    const Eigen::VectorXd g = low_spectrum(plus, n).ground;
    const double f = std::abs(d.dot(g.cast<std::complex<double>>()));

    const ModelParams jcm = build_params_gs(0.5, 1.0, 5.0, 0.0);
    const double mod = std::abs(duality_expectation(low_spectrum(jcm, adaptive_truncation(jcm)).ground));
    report(f >= fidelity_min && mod >= 1.0 - modulus_tol, "duality",
           fmt("fidelity=%.12f (>=%.3f); JCM |D|=%.12f (>=1-%.0e)", f, fidelity_min, mod, modulus_tol));
}

void variational_identity() {
    constexpr double rel_tol = 1e-12;
    bool ok = true;
    std::string detail;
    for (double omega : {0.1, 0.5}) {
        const ModelParams p = build_params(omega, 1.0, 0.0, 0.0);
        for (double lambda : {0.0, 0.3, 0.7}) {
            const auto root = e_omega_y_root(lambda, omega, 1.0);
            const double ref = g_T1(lambda, p);
            const double err = root ? std::abs(*root - ref) / ref : INFINITY;
            ok = ok && err <= rel_tol;
            detail += fmt("w=%.1f l=%.1f rel=%.1e; ", omega, lambda, err);
        }
    }
    report(ok, "variational-identity", detail + fmt("(tol %.0e)", rel_tol));
}

void symmetry_suite() {
    constexpr double union_tol = 1e-10, mirror_tol = 1e-9;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> omega_d(0.2, 2.0), g_d(0.0, 4.0), l_d(-1.0, 1.0);
    double comm = 0.0, union_err = 0.0, mirror_err = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double omega = omega_d(rng);
        for (int j = 0; j < 5; ++j) {
            const double ggs = g_d(rng), lambda = l_d(rng);
            const ModelParams p = build_params_gs(omega, 1.0, ggs, lambda);
            const ModelParams q = build_params_gs(omega, 1.0, ggs, -lambda);
            const std::size_t n = std::max(adaptive_floor(p), adaptive_floor(q));
            const Eigen::MatrixXd h(build_hamiltonian(p, fixed_truncation(n)).matrix);
            const Eigen::VectorXd par = parity_operator(n).total;
            comm = std::max(comm, (h * par.asDiagonal() - par.asDiagonal() * h).cwiseAbs().maxCoeff());

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(h, Eigen::EigenvaluesOnly);
            std::vector<double> merged = solve_sector(p, n, +1, n + 1).energies;
            const auto odd = solve_sector(p, n, -1, n + 1).energies;
            merged.insert(merged.end(), odd.begin(), odd.end());
            std::sort(merged.begin(), merged.end());
            for (std::size_t k = 0; k < merged.size(); ++k) {
                union_err = std::max(union_err, std::abs(merged[k] - full.eigenvalues()[static_cast<Index>(k)]) /
                                                    std::max(1.0, std::abs(merged[k])));
            }
            mirror_err = std::max(mirror_err, std::abs(low_spectrum(p, n).e0 - low_spectrum(q, n).e0));
        }
    }
    report(comm == 0.0 && union_err <= union_tol && mirror_err <= mirror_tol, "symmetry-suite",
           fmt("max|[H,P]|=%.1e (=0); sector union err=%.1e (tol %.0e); |E0(l)-E0(-l)|=%.1e (tol %.0e); 25 samples",
               comm, union_err, union_tol, mirror_err, mirror_tol));
}

void convergence() {
    constexpr double tol = 1e-8;
    const ModelParams p = build_params_gs(0.5, 1.0, 5.2, 0.9);
    const std::size_t n = resolve_n_max(p, adaptive_truncation(p));
    const double a = low_spectrum(p, n).e0;
    const double b = low_spectrum(p, 2 * n).e0;
    report(std::abs(a - b) < tol, "truncation-convergence",
           fmt("n_max=%zu |E0(n)-E0(2n)|=%.2e (tol %.0e)", n, std::abs(a - b), tol));
}

void multicritical() {
    const auto preset = find_preset("fig1e");
    const ScanConfig& c = preset->config;
    // grid cells within two steps of (lambda = 0, g = 2 g_s) on the preset grid
    const double dl = (c.lambda.max - c.lambda.min) / static_cast<double>(c.lambda.steps - 1);
    const double dg = (c.g_over_gs.max - c.g_over_gs.min) / static_cast<double>(c.g_over_gs.steps - 1);
    std::set<std::pair<int, int>> labels, signed_labels;
    std::size_t cells = 0;
    for (std::size_t i = 0; i < c.lambda.steps; ++i) {
        const double lambda = c.lambda.at(i);
        if (std::abs(lambda) > 2.0 * dl + 1e-12) continue;
        for (std::size_t j = 0; j < c.g_over_gs.steps; ++j) {
            const double ggs = c.g_over_gs.at(j);
            if (std::abs(ggs - 2.0) > 2.0 * dg + 1e-12) continue;
            const ScanRecord r = evaluate_point(c.omega, c.Omega, lambda, ggs, c);
            if (r.status == PointStatus::Failed) continue;
            ++cells;
            const int sign = r.a_norm > 0.0 ? 1 : (r.a_norm < 0.0 ? -1 : 0);
            labels.insert({sign, r.parity});
            if (sign != 0) signed_labels.insert({sign, r.parity});
        }
    }
    std::string list;
    for (auto [s, p] : labels) list += fmt("(%c,%c) ", s > 0 ? '+' : (s < 0 ? '-' : '0'), p > 0 ? '+' : '-');
    report(signed_labels.size() >= 4, "multicritical-point",
           fmt("%zu cells near (0, 2g_s): labels %s-> %zu with nonzero A (need >= 4)", cells, list.c_str(),
               signed_labels.size()));
}

} // namespace

int main() {
    decoupled_limit();
    jcm_oracle();
    topological_boundary();
    zero_staircase();
    hidden_symmetry();
    duality();
    variational_identity();
    symmetry_suite();
    convergence();
    multicritical();
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
