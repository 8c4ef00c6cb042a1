#include "aqrm/realspace.hpp"

#include "aqrm/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

namespace aqrm {

const char* to_string(Space s) { return s == Space::Position ? "position" : "momentum"; }
const char* to_string(Component c) { return c == Component::Plus ? "plus" : "minus"; }

GridConfig default_grid(const ModelParams& p, double step) {
    return GridConfig{std::max(p.gz_prime, p.gy_prime) + 8.0, step};
}

double SpinorWave::norm() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += psi_plus[i] * psi_plus[i] + psi_minus[i] * psi_minus[i];
    }
    return step * acc;
}

std::vector<double> hermite_functions(double x, std::size_t n_max) {
    std::vector<double> out(n_max + 1);
    // phi_n = u_n * exp(log_scale); u is rescaled whenever it grows large so
    // that high orders survive when exp(-x^2/2) alone would underflow.
    double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
    double scale = std::exp(log_scale);
    double prev = 0.0;
    double cur = 1.0;
    out[0] = cur * scale;
    for (std::size_t n = 0; n < n_max; ++n) {
        const double nd = static_cast<double>(n);
        const double next = std::sqrt(2.0 / (nd + 1.0)) * x * cur - std::sqrt(nd / (nd + 1.0)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > 1e200) {
            cur *= 1e-200;
            prev *= 1e-200;
            log_scale += 200.0 * std::log(10.0);
            scale = std::exp(log_scale);
        }
        out[n + 1] = cur * scale;
    }
    return out;
}

namespace {

struct ZComponents {
    std::vector<double> plus;
    std::vector<double> minus;
    std::size_t n_eff{};
};

ZComponents to_sigma_z(const Eigen::VectorXd& state) {
    if (state.size() < 2 || state.size() % 2 != 0) {
        throw ConfigError("state length is not a 2(n_max+1) basis");
    }
    const auto n_max = static_cast<std::size_t>(state.size() / 2 - 1);
    ZComponents z;
    z.plus.resize(n_max + 1);
    z.minus.resize(n_max + 1);
    const double r = 1.0 / std::sqrt(2.0);
    double biggest = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const double cp = state[basis_index(n, +1)];
        const double cm = state[basis_index(n, -1)];
        z.plus[n] = r * (cp + cm);
        z.minus[n] = r * (cm - cp);
        biggest = std::max({biggest, std::abs(z.plus[n]), std::abs(z.minus[n])});
    }
    // drop the negligible high-n tail from the synthesis
    z.n_eff = 0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (std::abs(z.plus[n]) > 1e-17 * biggest || std::abs(z.minus[n]) > 1e-17 * biggest) {
            z.n_eff = n;
        }
    }
    return z;
}

std::vector<double> make_grid(const GridConfig& grid, double& step_out) {
    if (!(grid.half_width > 0.0) || !(grid.step > 0.0)) {
        throw ConfigError("grid needs positive half-width and step");
    }
    const auto intervals = static_cast<std::size_t>(std::ceil(2.0 * grid.half_width / grid.step));
    step_out = 2.0 * grid.half_width / static_cast<double>(intervals);
    std::vector<double> x(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) {
        x[i] = -grid.half_width + static_cast<double>(i) * step_out;
    }
    // exact mirror symmetry of the sample points
    for (std::size_t i = 0; i < x.size() / 2; ++i) {
        x[x.size() - 1 - i] = -x[i];
    }
    if (x.size() % 2 == 1) x[x.size() / 2] = 0.0;
    return x;
}

SpinorWave synthesize(const Eigen::VectorXd& state, const GridConfig& grid, Space space) {
    const auto n_max = static_cast<std::size_t>(state.size() / 2 - 1);
    if (n_max > 0 && grid.step > std::numbers::pi / std::sqrt(2.0 * static_cast<double>(n_max))) {
        throw ConfigError("grid step " + std::to_string(grid.step) + " cannot resolve phi_" +
                          std::to_string(n_max));
    }
    const ZComponents z = to_sigma_z(state);

    SpinorWave w;
    w.space = space;
    w.x = make_grid(grid, w.step);
    w.psi_plus.resize(w.x.size());
    w.psi_minus.resize(w.x.size());
    for (std::size_t i = 0; i < w.x.size(); ++i) {
        const std::vector<double> phi = hermite_functions(w.x[i], z.n_eff);
        double ap = 0.0;
        double am = 0.0;
        for (std::size_t n = 0; n <= z.n_eff; ++n) {
            ap += z.plus[n] * phi[n];
            am += z.minus[n] * phi[n];
        }
        w.psi_plus[i] = ap;
        w.psi_minus[i] = am;
    }
    return w;
}

GridConfig resolve_grid(const GridConfig& grid) {
    if (grid.half_width > 0.0) return grid;
    return GridConfig{8.0, grid.step};
}

} // namespace

Eigen::VectorXd align_real(const Eigen::VectorXcd& state, double* imag_residual) {
    Index best = 0;
    for (Index i = 1; i < state.size(); ++i) {
        if (std::abs(state[i]) > std::abs(state[best]) * (1.0 + 1e-12)) best = i;
    }
    const std::complex<double> phase =
        state.size() > 0 && std::abs(state[best]) > 0.0 ? std::conj(state[best]) / std::abs(state[best])
                                                        : std::complex<double>{1.0, 0.0};
    Eigen::VectorXd out(state.size());
    double worst = 0.0;
    for (Index i = 0; i < state.size(); ++i) {
        const std::complex<double> v = state[i] * phase;
        out[i] = v.real();
        worst = std::max(worst, std::abs(v.imag()));
    }
    if (imag_residual) *imag_residual = worst;
    return out;
}

SpinorWave spinor_wavefunction(const Eigen::VectorXd& state, const GridConfig& grid) {
    return synthesize(state, resolve_grid(grid), Space::Position);
}

SpinorWave spinor_wavefunction(const Eigen::VectorXcd& state, const GridConfig& grid, double* imag_residual) {
    return synthesize(align_real(state, imag_residual), resolve_grid(grid), Space::Position);
}

SpinorWave momentum_wavefunction(const Eigen::VectorXd& state, const GridConfig& grid, double* imag_residual) {
    static const std::complex<double> powers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    Eigen::VectorXcd rotated(state.size());
    for (Index i = 0; i < state.size(); ++i) {
        rotated[i] = powers[basis_n(i) % 4] * state[i];
    }
    return synthesize(align_real(rotated, imag_residual), resolve_grid(grid), Space::Momentum);
}

Eigen::VectorXcd dual_transform(const Eigen::VectorXcd& state) {
    static const std::complex<double> powers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    Eigen::VectorXcd out(state.size());
    for (Index i = 0; i < state.size(); ++i) {
        const std::size_t m = basis_n(i) + (basis_s(i) > 0 ? 1 : 0);
        out[i] = powers[m % 4] * state[i];
    }
    return out;
}

Eigen::VectorXcd dual_transform(const Eigen::VectorXd& state) {
    return dual_transform(Eigen::VectorXcd(state.cast<std::complex<double>>()));
}

ZeroCount count_zeros(const SpinorWave& wave, Component component, double rel_threshold) {
    const std::vector<double>& psi = wave.component(component);
    ZeroCount zc;
    zc.component = component;

    double biggest = 0.0;
    for (double v : psi) biggest = std::max(biggest, std::abs(v));
    if (biggest == 0.0) return zc;
    const double threshold = rel_threshold * biggest;

    std::size_t last = psi.size();
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (std::abs(psi[i]) <= threshold) continue;
        if (last != psi.size() && (psi[i] > 0.0) != (psi[last] > 0.0)) {
            const double a = psi[last];
            const double b = psi[i];
            zc.zero_locations.push_back(wave.x[last] + (wave.x[i] - wave.x[last]) * a / (a - b));
            if (std::min(std::abs(a), std::abs(b)) < 10.0 * threshold) {
                zc.ambiguous = true;
            }
        }
        last = i;
    }
    zc.n_z = static_cast<int>(zc.zero_locations.size());
    return zc;
}

std::vector<double> parity_product(const SpinorWave& wave) {
    const std::size_t n = wave.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = wave.psi_plus[i] * wave.psi_minus[n - 1 - i];
    }
    return out;
}

namespace {

std::vector<double> derivative(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    auto at = [&](std::ptrdiff_t i) {
        return (i < 0 || i >= static_cast<std::ptrdiff_t>(n)) ? 0.0 : f[static_cast<std::size_t>(i)];
    };
    for (std::size_t k = 0; k < n; ++k) {
        const auto i = static_cast<std::ptrdiff_t>(k);
        d[k] = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
    }
    return d;
}

} // namespace

double energy_functional(const SpinorWave& wave, const ModelParams& p) {
    if (wave.space != Space::Position) {
        throw ConfigError("energy_functional needs a position-space wave");
    }
    const std::vector<double> dp = derivative(wave.psi_plus, wave.step);
    const std::vector<double> dm = derivative(wave.psi_minus, wave.step);
    const double soc = std::sqrt(2.0) * p.g_y;

    double kinetic = 0.0, potential = 0.0, flip = 0.0, spin_orbit = 0.0;
    for (std::size_t i = 0; i < wave.size(); ++i) {
        const double x = wave.x[i];
        const double up = wave.psi_plus[i];
        const double dn = wave.psi_minus[i];
        kinetic += 0.5 * p.omega * (dp[i] * dp[i] + dm[i] * dm[i]);
        const double vu = 0.5 * p.omega * (x + p.gz_prime) * (x + p.gz_prime) + p.potential_offset;
        const double vd = 0.5 * p.omega * (x - p.gz_prime) * (x - p.gz_prime) + p.potential_offset;
        potential += vu * up * up + vd * dn * dn;
        flip -= p.Omega * up * dn;
        spin_orbit += soc * (up * dm[i] - dn * dp[i]);
    }
    return wave.step * (kinetic + potential + flip + spin_orbit) / wave.norm();
}

void write_wave_csv(const std::string& path, const SpinorWave& wave, const Metadata& meta) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out << "# space=" << to_string(wave.space) << '\n';
    for (const auto& [k, v] : meta) {
        out << "# " << k << '=' << v << '\n';
    }
    out << (wave.space == Space::Position ? "x" : "p") << ",psi_plus,psi_minus\n";
    char buf[128];
    for (std::size_t i = 0; i < wave.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.17g,%.17g\n", wave.x[i], wave.psi_plus[i], wave.psi_minus[i]);
        out << buf;
    }
    if (!out) {
        throw IoError("write failed for " + path);
    }
}

} // namespace aqrm
