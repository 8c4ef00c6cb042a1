// Independent reference values used by the tests. Nothing here calls into the
// library under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

// Rotating-wave (lambda = 0) ladder. The excitation m = n + (1+s)/2 is
// conserved; m = 0 is the lone state |0,-x>, every m >= 1 a 2x2 block over
// {|m-1,+x>, |m,-x>}. Returns the lowest `count` levels.
inline std::vector<double> jcm_levels(double omega, double Omega, double g, std::size_t count) {
    std::vector<double> levels{-Omega / 2.0};
    for (std::size_t m = 1; levels.size() < 4 * count + 8; ++m) {
        const double a = omega * static_cast<double>(m - 1) + Omega / 2.0;
        const double d = omega * static_cast<double>(m) - Omega / 2.0;
        const double b = g * std::sqrt(static_cast<double>(m));
        const double mean = 0.5 * (a + d);
        const double radius = std::hypot(0.5 * (a - d), b);
        levels.push_back(mean - radius);
        levels.push_back(mean + radius);
    }
    std::sort(levels.begin(), levels.end());
    levels.resize(count);
    return levels;
}

// Composite Simpson on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels = 20000) {
    if (panels % 2) ++panels;
    const double h = (b - a) / static_cast<double>(panels);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Unit-normalized Gaussian of width w centred at c, and its derivative.
inline double packet(double x, double c, double w) {
    return std::pow(M_PI * w * w, -0.25) * std::exp(-(x - c) * (x - c) / (2.0 * w * w));
}
inline double packet_dx(double x, double c, double w) { return -(x - c) / (w * w) * packet(x, c, w); }

// Harmonic-oscillator eigenfunction from the explicit Hermite polynomial.
inline double ho_function(std::size_t n, double x) {
    double h0 = 1.0, h1 = 2.0 * x;
    double hn = n == 0 ? h0 : h1;
    for (std::size_t k = 2; k <= n; ++k) {
        hn = 2.0 * x * h1 - 2.0 * static_cast<double>(k - 1) * h0;
        h0 = h1;
        h1 = hn;
    }
    const double norm = 1.0 / std::sqrt(std::pow(2.0, static_cast<double>(n)) * std::tgamma(n + 1.0) * std::sqrt(M_PI));
    return norm * hn * std::exp(-x * x / 2.0);
}

// Deep-coupling Rabi limit: ground state of two displaced oscillators,
// E0 ~ -g^2/omega. The spin flip adds a second-order shift -(Omega/2)^2 / (4 g^2/omega)
// from the opposite well, which is 6% of the total at omega = 0.01, g = 0.1.
inline double displaced_oscillator_energy(double omega, double g) { return -g * g / omega; }
inline double displaced_oscillator_energy_2nd(double omega, double Omega, double g) {
    return -g * g / omega - Omega * Omega * omega / (16.0 * g * g);
}

} // namespace oracle
