// Randomized invariants over the parameter space.

#include "aqrm/eigensolver.hpp"
#include "aqrm/observables.hpp"
#include "aqrm/realspace.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <random>

using namespace aqrm;

namespace {

struct Sample {
    double omega, ggs, lambda;
};

std::vector<Sample> draw(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_omega(std::log(0.05), std::log(2.0));
    std::uniform_real_distribution<double> ggs(0.0, 4.0);
    std::uniform_real_distribution<double> lambda(-1.0, 1.0);
    std::vector<Sample> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({std::exp(log_omega(rng)), ggs(rng), lambda(rng)});
    return out;
}

} // namespace

TEST_CASE("hamiltonian structure") {
    for (const Sample& s : draw(25, 11)) {
        const ModelParams p = build_params_gs(s.omega, 1.0, s.ggs, s.lambda);
        const SpinFockMatrix h = build_hamiltonian(p, fixed_truncation(40));
        const Eigen::MatrixXd m(h.matrix);
        CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
        const Eigen::MatrixXd par = parity_operator(40).total.asDiagonal();
        CHECK((m * par - par * m).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("sector spectra union equals the full spectrum") {
    for (const Sample& s : draw(25, 12)) {
        const ModelParams p = build_params_gs(s.omega, 1.0, s.ggs, s.lambda);
        const std::size_t n = std::min<std::size_t>(adaptive_floor(p), 240);
        const Eigen::MatrixXd m(build_hamiltonian(p, fixed_truncation(n)).matrix);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(m, Eigen::EigenvaluesOnly);
        std::vector<double> merged = solve_sector(p, n, +1, n + 1).energies;
        const auto odd = solve_sector(p, n, -1, n + 1).energies;
        merged.insert(merged.end(), odd.begin(), odd.end());
        std::sort(merged.begin(), merged.end());
        REQUIRE(merged.size() == static_cast<std::size_t>(full.eigenvalues().size()));
        double worst = 0.0;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            worst = std::max(worst, std::abs(merged[i] - full.eigenvalues()[static_cast<Index>(i)]) /
                                        std::max(1.0, std::abs(merged[i])));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("mirror symmetry in lambda") {
    for (const Sample& s : draw(25, 13)) {
        const ModelParams a = build_params_gs(s.omega, 1.0, s.ggs, s.lambda);
        const ModelParams b = build_params_gs(s.omega, 1.0, s.ggs, -s.lambda);
        const std::size_t n = std::max(adaptive_floor(a), adaptive_floor(b));
        const LowSpectrum la = low_spectrum(a, n);
        const LowSpectrum lb = low_spectrum(b, n);
        CHECK(std::abs(la.e0 - lb.e0) < 1e-9);
        CHECK(std::abs(la.e1 - lb.e1) < 1e-9);
        if (s.ggs > 0.0 && !la.degenerate) {
            const ObservableSet oa = evaluate(la.ground, a);
            const ObservableSet ob = evaluate(lb.ground, b);
            CHECK(std::abs(*oa.a_norm + *ob.a_norm) < 1e-6);
            CHECK(la.ground_parity == lb.ground_parity);
            // the dual transform carries one ground state onto the other
            const double f = std::abs(dual_transform(la.ground).dot(lb.ground.cast<std::complex<double>>()));
            if (la.gap() > 1e-6) CHECK(f > 1.0 - 1e-8);
        }
    }
}

TEST_CASE("observable identities on random ground states") {
    for (const Sample& s : draw(25, 14)) {
        const ModelParams p = build_params_gs(s.omega, 1.0, s.ggs, s.lambda);
        const LowSpectrum ls = low_spectrum(p, adaptive_truncation(p));
        const ObservableSet o = evaluate(ls.ground, p);
        CHECK(std::abs(std::abs(o.parity) - 1.0) < 1e-8);
        CHECK(std::abs(o.a_dag_a_dag - 0.5 * (o.x2 - o.p2)) < 1e-9 * std::max(1.0, o.x2));
        CHECK(std::abs(o.p_x) <= 1.0 + 1e-12);
        CHECK(std::abs(o.sigma_x) <= 1.0 + 1e-12);
        CHECK(o.duality_modulus() <= 1.0 + 1e-12);
        CHECK(o.excitation_variance >= -1e-12);
        CHECK(ls.gap() >= 0.0);
    }
}

TEST_CASE("spinor quadrature matches the coefficient norm") {
    for (const Sample& s : draw(10, 15)) {
        const ModelParams p = build_params_gs(std::max(s.omega, 0.2), 1.0, s.ggs, s.lambda);
        const LowSpectrum ls = low_spectrum(p, adaptive_truncation(p));
        const SpinorWave w = spinor_wavefunction(ls.ground, default_grid(p));
        CHECK(std::abs(w.norm() - 1.0) < 1e-6);
        CHECK(count_zeros(w, Component::Plus).n_z == count_zeros(w, Component::Minus).n_z);
    }
}
