#include "aqrm/observables.hpp"

#include "aqrm/error.hpp"

#include <cmath>
#include <string>

namespace aqrm {

namespace {

std::size_t checked_n_max(const Eigen::VectorXd& state) {
    if (state.size() < 2 || state.size() % 2 != 0) {
        throw ConfigError("state length " + std::to_string(state.size()) + " is not a 2(n_max+1) basis");
    }
    const double drift = std::abs(state.norm() - 1.0);
    if (drift > 1e-8) {
        throw ConfigError("state normalization drift " + std::to_string(drift) + " exceeds 1e-8");
    }
    return static_cast<std::size_t>(state.size() / 2 - 1);
}

} // namespace

double a_norm_scale(const ModelParams& p) {
    const double r = (1.0 + std::abs(p.lambda)) * p.g / (2.0 * p.omega);
    return r * r;
}

std::complex<double> duality_phase(std::size_t n, int s) {
    static const std::complex<double> powers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    const std::size_t m = n + (s > 0 ? 1 : 0);
    return powers[m % 4];
}

std::complex<double> duality_expectation(const Eigen::VectorXd& state) {
    const std::size_t n_max = checked_n_max(state);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t n = 0; n <= n_max; ++n) {
        for (int s : {+1, -1}) {
            const double c = state[basis_index(n, s)];
            acc += duality_phase(n, s) * (c * c);
        }
    }
    return acc;
}

ObservableSet evaluate(const Eigen::VectorXd& state, const ModelParams& p) {
    const std::size_t n_max = checked_n_max(state);
    ObservableSet o;

    double exc2 = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const double nd = static_cast<double>(n);
        for (int s : {+1, -1}) {
            const double c = state[basis_index(n, s)];
            const double w = c * c;
            o.sigma_x += s * w;
            o.p_x += ((n % 2 == 0) ? 1.0 : -1.0) * w;
            o.parity += parity_of(n, s) * w;
            o.photon_number += nd * w;
            const double e = nd + 0.5 * s;
            o.excitation += e * w;
            exc2 += e * e * w;
            if (n + 2 <= n_max) {
                // <n+2, s| a†a† |n, s> = sqrt((n+1)(n+2))
                o.a_dag_a_dag += std::sqrt((nd + 1.0) * (nd + 2.0)) * state[basis_index(n + 2, s)] * c;
            }
        }
    }
    o.p_sigma = o.sigma_x;
    o.excitation_variance = std::max(0.0, exc2 - o.excitation * o.excitation);
    // x^2 = (a^2 + a†^2 + 2a†a + 1)/2, p^2 = (-a^2 - a†^2 + 2a†a + 1)/2
    o.x2 = o.a_dag_a_dag + o.photon_number + 0.5;
    o.p2 = -o.a_dag_a_dag + o.photon_number + 0.5;
    o.duality = duality_expectation(state);

    const double scale = a_norm_scale(p);
    if (scale > 0.0) {
        o.a_norm = o.a_dag_a_dag / scale;
    }
    return o;
}

std::optional<double> a_norm(const Eigen::VectorXd& state, const ModelParams& p) {
    return evaluate(state, p).a_norm;
}

} // namespace aqrm
