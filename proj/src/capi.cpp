// capi.cpp: extern "C" surface over the aqrm core.

#include "aqrm/aqrm.h"

#include "aqrm/boundaries.hpp"
#include "aqrm/eigensolver.hpp"
#include "aqrm/error.hpp"
#include "aqrm/observables.hpp"
#include "aqrm/realspace.hpp"
#include "aqrm/scan.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <string>

struct aqrm_model {
    aqrm::ModelParams params;
    aqrm::Truncation truncation;
};

struct aqrm_solution {
    aqrm::EigenSolution solution;
};

struct aqrm_wave {
    aqrm::SpinorWave wave;
    aqrm::Metadata metadata;
};

struct aqrm_dataset {
    aqrm::ScanDataset data;
};

namespace {

thread_local std::string g_last_error;

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BufferError : std::length_error {
    using std::length_error::length_error;
};

template <typename Fn>
aqrm_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return AQRM_OK;
    } catch (const ArgumentError& e) {
        g_last_error = e.what();
        return AQRM_ERR_INVALID_ARGUMENT;
    } catch (const BufferError& e) {
        g_last_error = e.what();
        return AQRM_ERR_BUFFER_TOO_SMALL;
    } catch (const aqrm::ConfigError& e) {
        g_last_error = e.what();
        return AQRM_ERR_CONFIG;
    } catch (const aqrm::SolverError& e) {
        g_last_error = e.what();
        return AQRM_ERR_SOLVER;
    } catch (const aqrm::IoError& e) {
        g_last_error = e.what();
        return AQRM_ERR_IO;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return AQRM_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return AQRM_ERR_INTERNAL;
    }
}

template <typename T>
void require(const T* p, const char* what) {
    if (p == nullptr) throw ArgumentError(std::string("null ") + what);
}

std::size_t n_max_of(const aqrm_model* m) { return aqrm::resolve_n_max(m->params, m->truncation); }

aqrm_observables to_c(const aqrm::ObservableSet& o) {
    aqrm_observables out{};
    out.a_dag_a_dag = o.a_dag_a_dag;
    out.a_norm_valid = o.a_norm.has_value() ? 1 : 0;
    out.a_norm = o.a_norm.value_or(std::numeric_limits<double>::quiet_NaN());
    out.sigma_x = o.sigma_x;
    out.parity = o.parity;
    out.p_x = o.p_x;
    out.p_sigma = o.p_sigma;
    out.excitation = o.excitation;
    out.excitation_variance = o.excitation_variance;
    out.duality_re = o.duality.real();
    out.duality_im = o.duality.imag();
    out.duality_mod = o.duality_modulus();
    out.x2 = o.x2;
    out.p2 = o.p2;
    out.photon_number = o.photon_number;
    return out;
}

aqrm::ScanConfig from_c(const aqrm_scan_config& c) {
    aqrm::ScanConfig cfg;
    cfg.omega = c.omega;
    cfg.Omega = c.Omega;
    cfg.lambda = {c.lambda_min, c.lambda_max, c.lambda_steps};
    cfg.g_over_gs = {c.g_min_gs, c.g_max_gs, c.g_steps};
    cfg.truncation.n_max = c.n_max;
    cfg.truncation.policy = c.fixed_truncation ? aqrm::TruncationPolicy::Fixed : aqrm::TruncationPolicy::Adaptive;
    cfg.truncation.allow_below_floor = c.allow_below_floor != 0;
    cfg.compute_nz = c.compute_nz != 0;
    cfg.nz_threshold = c.nz_threshold;
    cfg.grid_step = c.grid_step;
    cfg.workers = c.workers;
    return cfg;
}

aqrm_scan_config to_c(const aqrm::ScanConfig& cfg) {
    aqrm_scan_config c{};
    c.omega = cfg.omega;
    c.Omega = cfg.Omega;
    c.lambda_min = cfg.lambda.min;
    c.lambda_max = cfg.lambda.max;
    c.lambda_steps = cfg.lambda.steps;
    c.g_min_gs = cfg.g_over_gs.min;
    c.g_max_gs = cfg.g_over_gs.max;
    c.g_steps = cfg.g_over_gs.steps;
    c.n_max = cfg.truncation.n_max;
    c.fixed_truncation = cfg.truncation.policy == aqrm::TruncationPolicy::Fixed;
    c.allow_below_floor = cfg.truncation.allow_below_floor;
    c.compute_nz = cfg.compute_nz;
    c.nz_threshold = cfg.nz_threshold;
    c.grid_step = cfg.grid_step;
    c.workers = cfg.workers;
    return c;
}

aqrm_record to_c(const aqrm::ScanRecord& r) {
    aqrm_record out{};
    out.lambda = r.lambda;
    out.g_over_gs = r.g_over_gs;
    out.omega = r.omega;
    out.E0 = r.E0;
    out.E1 = r.E1;
    out.gap = r.gap;
    out.parity = r.parity;
    out.sigma_x = r.sigma_x;
    out.a_norm = r.a_norm;
    out.AP = r.AP;
    out.n_z = r.n_z;
    out.p_x = r.p_x;
    out.p_sigma = r.p_sigma;
    out.excitation = r.excitation;
    out.duality_mod = r.duality_mod;
    out.n_max_used = r.n_max_used;
    out.status = static_cast<aqrm_point_status>(r.status);
    return out;
}

aqrm::ScanRecord from_c(const aqrm_record& r) {
    aqrm::ScanRecord out;
    out.lambda = r.lambda;
    out.g_over_gs = r.g_over_gs;
    out.omega = r.omega;
    out.E0 = r.E0;
    out.E1 = r.E1;
    out.gap = r.gap;
    out.parity = r.parity;
    out.sigma_x = r.sigma_x;
    out.a_norm = r.a_norm;
    out.AP = r.AP;
    out.n_z = r.n_z;
    out.p_x = r.p_x;
    out.p_sigma = r.p_sigma;
    out.excitation = r.excitation;
    out.duality_mod = r.duality_mod;
    out.n_max_used = r.n_max_used;
    out.status = static_cast<aqrm::PointStatus>(r.status);
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

extern "C" {

const char* aqrm_version(void) { return AQRM_VERSION; }

const char* aqrm_status_string(aqrm_status status) {
    switch (status) {
    case AQRM_OK: return "ok";
    case AQRM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case AQRM_ERR_CONFIG: return "configuration error";
    case AQRM_ERR_SOLVER: return "solver error";
    case AQRM_ERR_IO: return "i/o error";
    case AQRM_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case AQRM_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* aqrm_last_error(void) { return g_last_error.c_str(); }

aqrm_status aqrm_model_create(double omega, double Omega, double g, double lambda, int allow_any_lambda,
                              aqrm_model** out) {
    return guarded([&] {
        require(out, "output handle");
        *out = nullptr;
        auto m = std::make_unique<aqrm_model>();
        m->params = aqrm::build_params(omega, Omega, g, lambda, allow_any_lambda != 0);
        m->truncation = aqrm::adaptive_truncation(m->params);
        *out = m.release();
    });
}

aqrm_status aqrm_model_create_gs(double omega, double Omega, double g_over_gs, double lambda, int allow_any_lambda,
                                 aqrm_model** out) {
    return guarded([&] {
        require(out, "output handle");
        *out = nullptr;
        auto m = std::make_unique<aqrm_model>();
        m->params = aqrm::build_params_gs(omega, Omega, g_over_gs, lambda, allow_any_lambda != 0);
        m->truncation = aqrm::adaptive_truncation(m->params);
        *out = m.release();
    });
}

void aqrm_model_destroy(aqrm_model* model) { delete model; }

aqrm_status aqrm_model_params(const aqrm_model* model, aqrm_params* out) {
    return guarded([&] {
        require(model, "model");
        require(out, "output");
        const aqrm::ModelParams& p = model->params;
        *out = aqrm_params{p.omega,    p.Omega,    p.g,      p.lambda, p.g_y,           p.g_z,
                           p.g_s,      p.gz_prime, p.gy_prime, p.eps0_y, p.potential_offset};
    });
}

aqrm_status aqrm_model_set_truncation(aqrm_model* model, size_t n_max, aqrm_truncation_policy policy,
                                      int allow_below_floor) {
    return guarded([&] {
        require(model, "model");
        if (policy != AQRM_TRUNCATION_ADAPTIVE && policy != AQRM_TRUNCATION_FIXED) {
            throw ArgumentError("unknown truncation policy");
        }
        aqrm::Truncation t{n_max,
                           policy == AQRM_TRUNCATION_FIXED ? aqrm::TruncationPolicy::Fixed
                                                           : aqrm::TruncationPolicy::Adaptive,
                           allow_below_floor != 0};
        aqrm::resolve_n_max(model->params, t);  // validates
        model->truncation = t;
    });
}

aqrm_status aqrm_model_n_max(const aqrm_model* model, size_t* out) {
    return guarded([&] {
        require(model, "model");
        require(out, "output");
        *out = n_max_of(model);
    });
}

aqrm_status aqrm_model_dim(const aqrm_model* model, size_t* out) {
    return guarded([&] {
        require(model, "model");
        require(out, "output");
        *out = 2 * (n_max_of(model) + 1);
    });
}

aqrm_status aqrm_model_hamiltonian_element(const aqrm_model* model, size_t row, size_t col, double* out) {
    return guarded([&] {
        require(model, "model");
        require(out, "output");
        const std::size_t dim = 2 * (n_max_of(model) + 1);
        if (row >= dim || col >= dim) throw ArgumentError("index outside the basis");
        const std::size_t n_r = row / 2, n_c = col / 2;
        const int s_r = row % 2 == 0 ? 1 : -1, s_c = col % 2 == 0 ? 1 : -1;
        const aqrm::ModelParams& p = model->params;
        double v = 0.0;
        if (row == col) {
            v = p.omega * static_cast<double>(n_r) + 0.5 * s_r * p.Omega;
        } else if (s_r == -s_c && (n_r == n_c + 1 || n_c == n_r + 1)) {
            const std::size_t lower = std::min(n_r, n_c);
            const int s_lower = n_r < n_c ? s_r : s_c;
            v = (s_lower > 0 ? p.g : p.g * p.lambda) * std::sqrt(static_cast<double>(lower + 1));
        }
        *out = v;
    });
}

aqrm_status aqrm_solve(const aqrm_model* model, size_t k, aqrm_sector sector, aqrm_solution** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "output handle");
        *out = nullptr;
        auto s = std::make_unique<aqrm_solution>();
        const std::size_t n_max = n_max_of(model);
        switch (sector) {
        case AQRM_SECTOR_FULL:
            s->solution = aqrm::lowest_k(aqrm::build_hamiltonian(model->params, model->truncation), k);
            s->solution.params = model->params;
            break;
        case AQRM_SECTOR_EVEN:
        case AQRM_SECTOR_ODD:
            if (k == 0 || k > n_max + 1) throw aqrm::ConfigError("k outside [1, n_max+1]");
            s->solution = aqrm::solve_sector(model->params, n_max, sector == AQRM_SECTOR_EVEN ? +1 : -1, k);
            break;
        default: throw ArgumentError("unknown sector");
        }
        *out = s.release();
    });
}

void aqrm_solution_destroy(aqrm_solution* solution) { delete solution; }

aqrm_status aqrm_solution_count(const aqrm_solution* solution, size_t* out) {
    return guarded([&] {
        require(solution, "solution");
        require(out, "output");
        *out = solution->solution.size();
    });
}

aqrm_status aqrm_solution_dim(const aqrm_solution* solution, size_t* out) {
    return guarded([&] {
        require(solution, "solution");
        require(out, "output");
        *out = static_cast<size_t>(solution->solution.vectors.rows());
    });
}

aqrm_status aqrm_solution_energy(const aqrm_solution* solution, size_t i, double* out) {
    return guarded([&] {
        require(solution, "solution");
        require(out, "output");
        if (i >= solution->solution.size()) throw ArgumentError("eigenpair index out of range");
        *out = solution->solution.energies[i];
    });
}

aqrm_status aqrm_solution_residual(const aqrm_solution* solution, size_t i, double* out) {
    return guarded([&] {
        require(solution, "solution");
        require(out, "output");
        if (i >= solution->solution.residuals.size()) throw ArgumentError("eigenpair index out of range");
        *out = solution->solution.residuals[i];
    });
}

aqrm_status aqrm_solution_vector(const aqrm_solution* solution, size_t i, double* buffer, size_t length) {
    return guarded([&] {
        require(solution, "solution");
        require(buffer, "buffer");
        if (i >= solution->solution.size()) throw ArgumentError("eigenpair index out of range");
        const auto dim = static_cast<size_t>(solution->solution.vectors.rows());
        if (length < dim) throw BufferError("buffer holds " + std::to_string(length) + ", need " + std::to_string(dim));
        const Eigen::VectorXd v = solution->solution.vector(i);
        std::memcpy(buffer, v.data(), dim * sizeof(double));
    });
}

aqrm_status aqrm_low_spectrum_compute(const aqrm_model* model, aqrm_low_spectrum* out) {
    return guarded([&] {
        require(model, "model");
        require(out, "output");
        const aqrm::LowSpectrum ls = aqrm::low_spectrum(model->params, model->truncation);
        *out = aqrm_low_spectrum{ls.e0,
                                 ls.e1,
                                 ls.gap(),
                                 ls.even_e0,
                                 ls.even_e1,
                                 ls.odd_e0,
                                 ls.odd_e1,
                                 ls.splitting.value,
                                 ls.ground_parity,
                                 ls.degenerate ? 1 : 0,
                                 ls.splitting.precision == aqrm::Precision::Quad ? 1 : 0,
                                 ls.n_max};
    });
}

aqrm_status aqrm_ground_observables(const aqrm_model* model, aqrm_observables* out) {
    return guarded([&] {
        require(model, "model");
        require(out, "output");
        const aqrm::LowSpectrum ls = aqrm::low_spectrum(model->params, model->truncation);
        *out = to_c(aqrm::evaluate(ls.ground, model->params));
    });
}

aqrm_status aqrm_solution_observables(const aqrm_solution* solution, size_t i, aqrm_observables* out) {
    return guarded([&] {
        require(solution, "solution");
        require(out, "output");
        if (i >= solution->solution.size()) throw ArgumentError("eigenpair index out of range");
        if (!solution->solution.params) throw ArgumentError("solution carries no model parameters");
        *out = to_c(aqrm::evaluate(solution->solution.vector(i), *solution->solution.params));
    });
}

aqrm_status aqrm_ground_wave(const aqrm_model* model, double half_width, double step, int dual, aqrm_wave** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "output handle");
        *out = nullptr;
        const aqrm::ModelParams& p = model->params;
        const aqrm::LowSpectrum ls = aqrm::low_spectrum(p, model->truncation);
        aqrm::GridConfig grid = aqrm::default_grid(p, step > 0.0 ? step : 0.02);
        if (half_width > 0.0) grid.half_width = half_width;

        auto w = std::make_unique<aqrm_wave>();
        w->wave = dual ? aqrm::spinor_wavefunction(aqrm::dual_transform(ls.ground), grid)
                       : aqrm::spinor_wavefunction(ls.ground, grid);
        w->metadata["omega"] = fmt(p.omega);
        w->metadata["Omega"] = fmt(p.Omega);
        w->metadata["g"] = fmt(p.g);
        w->metadata["g_over_gs"] = fmt(p.g_over_gs());
        w->metadata["lambda"] = fmt(p.lambda);
        w->metadata["n_max"] = std::to_string(ls.n_max);
        w->metadata["parity"] = std::to_string(ls.ground_parity);
        w->metadata["dual_transformed"] = dual ? "true" : "false";
        w->metadata["E0"] = fmt(ls.e0);
        *out = w.release();
    });
}

void aqrm_wave_destroy(aqrm_wave* wave) { delete wave; }

aqrm_status aqrm_wave_size(const aqrm_wave* wave, size_t* out) {
    return guarded([&] {
        require(wave, "wave");
        require(out, "output");
        *out = wave->wave.size();
    });
}

aqrm_status aqrm_wave_data(const aqrm_wave* wave, const double** x, const double** psi_plus,
                           const double** psi_minus) {
    return guarded([&] {
        require(wave, "wave");
        if (x) *x = wave->wave.x.data();
        if (psi_plus) *psi_plus = wave->wave.psi_plus.data();
        if (psi_minus) *psi_minus = wave->wave.psi_minus.data();
    });
}

aqrm_status aqrm_wave_norm(const aqrm_wave* wave, double* out) {
    return guarded([&] {
        require(wave, "wave");
        require(out, "output");
        *out = wave->wave.norm();
    });
}

aqrm_status aqrm_wave_count_zeros(const aqrm_wave* wave, aqrm_component component, double rel_threshold, int* n_z,
                                  int* ambiguous) {
    return guarded([&] {
        require(wave, "wave");
        require(n_z, "output");
        if (component != AQRM_COMPONENT_PLUS && component != AQRM_COMPONENT_MINUS) {
            throw ArgumentError("unknown component");
        }
        const aqrm::ZeroCount zc = aqrm::count_zeros(
            wave->wave, component == AQRM_COMPONENT_PLUS ? aqrm::Component::Plus : aqrm::Component::Minus,
            rel_threshold > 0.0 ? rel_threshold : 1e-6);
        *n_z = zc.n_z;
        if (ambiguous) *ambiguous = zc.ambiguous ? 1 : 0;
    });
}

aqrm_status aqrm_wave_write_csv(const aqrm_wave* wave, const char* path) {
    return guarded([&] {
        require(wave, "wave");
        require(path, "path");
        aqrm::write_wave_csv(path, wave->wave, wave->metadata);
    });
}

aqrm_status aqrm_dual_fidelity(const aqrm_model* a, const aqrm_model* b, double* out) {
    return guarded([&] {
        require(a, "model a");
        require(b, "model b");
        require(out, "output");
        const std::size_t n_max = std::max(n_max_of(a), n_max_of(b));
        const Eigen::VectorXcd da = aqrm::dual_transform(aqrm::low_spectrum(a->params, n_max).ground);
        const Eigen::VectorXd gb = aqrm::low_spectrum(b->params, n_max).ground;
        *out = std::abs(da.dot(gb.cast<std::complex<double>>()));
    });
}

double aqrm_g_c_over_gs(double lambda) { return 2.0 / (1.0 + std::abs(lambda)); }

double aqrm_g_t1_over_gs(double lambda) {
    const double d = 1.0 - lambda * lambda;
    return d > 0.0 ? 2.0 / std::sqrt(d) : std::numeric_limits<double>::infinity();
}

aqrm_status aqrm_lambda_t1(double g_over_gs, double* out) {
    return guarded([&] {
        require(out, "output");
        // any frequency works in g_s units
        const aqrm::ModelParams p = aqrm::build_params(1.0, 1.0, 0.0, 0.0);
        const auto l = aqrm::lambda_T1(g_over_gs * p.g_s, p);
        if (!l) throw aqrm::ConfigError("lambda_T1 needs g >= 2 g_s");
        *out = *l;
    });
}

aqrm_status aqrm_e_omega_y_root_over_gs(double lambda, double omega, double Omega, double* out) {
    return guarded([&] {
        require(out, "output");
        const auto root = aqrm::e_omega_y_root(lambda, omega, Omega);
        if (!root) throw aqrm::ConfigError("channel energy has no sign change at this anisotropy");
        *out = *root / (0.5 * std::sqrt(omega * Omega));
    });
}

aqrm_status aqrm_detect_crossings(double omega, double Omega, double lambda, double g_lo_gs, double g_hi_gs,
                                  size_t coarse_steps, double* out_g_over_gs, size_t capacity, size_t* count) {
    return guarded([&] {
        require(count, "count");
        const double g_s = aqrm::build_params(omega, Omega, 0.0, lambda).g_s;
        aqrm::CrossingOptions opts;
        if (coarse_steps > 0) opts.coarse_steps = coarse_steps;
        const auto found = aqrm::detect_crossings(omega, Omega, lambda, g_lo_gs * g_s, g_hi_gs * g_s, opts);
        *count = found.size();
        if (found.size() > capacity) throw BufferError("crossing buffer too small");
        if (!found.empty()) require(out_g_over_gs, "output buffer");
        for (std::size_t i = 0; i < found.size(); ++i) out_g_over_gs[i] = found[i].g / g_s;
    });
}

void aqrm_boundary_request_default(aqrm_boundary_request* out) {
    if (!out) return;
    *out = aqrm_boundary_request{0.5, 1.0, 0.0, 0.95, 20, 0.5, 6.0, 240, 1, 0};
}

aqrm_status aqrm_boundary_export(const aqrm_boundary_request* r, const char* path, size_t* n_points) {
    return guarded([&] {
        require(r, "request");
        require(path, "path");
        if (r->lambda_steps == 0) throw aqrm::ConfigError("lambda_steps must be >= 1");
        std::vector<double> lambdas;
        for (std::size_t i = 0; i < r->lambda_steps; ++i) {
            lambdas.push_back(r->lambda_steps == 1 ? r->lambda_min
                                                   : r->lambda_min + (r->lambda_max - r->lambda_min) *
                                                                         static_cast<double>(i) /
                                                                         static_cast<double>(r->lambda_steps - 1));
        }
        const aqrm::ModelParams p = aqrm::build_params(r->omega, r->Omega, 0.0, 0.0);
        aqrm::CrossingOptions opts;
        if (r->coarse_steps > 0) opts.coarse_steps = r->coarse_steps;

        std::vector<aqrm::BoundaryCurve> curves;
        if (r->include_analytic) {
            curves.push_back(aqrm::analytic_g_c(lambdas, p));
            curves.push_back(aqrm::analytic_g_T1(lambdas, p));
        }
        curves.push_back(aqrm::numerical_topological(r->omega, r->Omega, lambdas, r->g_lo_gs, r->g_hi_gs, opts));
        if (r->include_u1) {
            aqrm::BoundaryCurve u1{aqrm::BoundaryKind::U1Breaking, aqrm::BoundaryMethod::Bisection, {}};
            for (double l : lambdas) {
                const auto g = aqrm::detect_u1_breaking(r->omega, r->Omega, l, r->g_lo_gs * p.g_s, r->g_hi_gs * p.g_s);
                if (g) u1.points.push_back({l, *g / p.g_s, 0.0, 1});
            }
            curves.push_back(std::move(u1));
        }
        aqrm::write_boundary_csv(path, curves);
        if (n_points) {
            std::size_t n = 0;
            for (const auto& c : curves) n += c.points.size();
            *n_points = n;
        }
    });
}

void aqrm_scan_config_default(aqrm_scan_config* out) {
    if (out) *out = to_c(aqrm::ScanConfig{});
}

size_t aqrm_preset_count(void) { return aqrm::presets().size(); }

const char* aqrm_preset_name(size_t i) {
    return i < aqrm::presets().size() ? aqrm::presets()[i].name.c_str() : nullptr;
}

const char* aqrm_preset_description(size_t i) {
    return i < aqrm::presets().size() ? aqrm::presets()[i].description.c_str() : nullptr;
}

const char* aqrm_preset_quantity(size_t i) {
    return i < aqrm::presets().size() ? aqrm::presets()[i].config.quantity.c_str() : nullptr;
}

aqrm_status aqrm_preset_config(const char* name, aqrm_scan_config* out) {
    return guarded([&] {
        require(name, "name");
        require(out, "output");
        const auto preset = aqrm::find_preset(name);
        if (!preset) throw aqrm::ConfigError(std::string("unknown preset '") + name + "'");
        *out = to_c(preset->config);
    });
}

aqrm_status aqrm_scan_run(const aqrm_scan_config* config, const char* label, aqrm_dataset** out) {
    return guarded([&] {
        require(config, "config");
        require(out, "output handle");
        *out = nullptr;
        aqrm::ScanConfig cfg = from_c(*config);
        if (label) {
            cfg.name = label;
            if (const auto preset = aqrm::find_preset(label)) cfg.quantity = preset->config.quantity;
        }
        auto d = std::make_unique<aqrm_dataset>();
        d->data = aqrm::scan2d(cfg);
        *out = d.release();
    });
}

aqrm_status aqrm_dataset_read_csv(const char* path, aqrm_dataset** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "output handle");
        *out = nullptr;
        auto d = std::make_unique<aqrm_dataset>();
        d->data = aqrm::read_csv(path);
        *out = d.release();
    });
}

void aqrm_dataset_destroy(aqrm_dataset* data) { delete data; }

aqrm_status aqrm_dataset_size(const aqrm_dataset* data, size_t* rows, size_t* failed) {
    return guarded([&] {
        require(data, "dataset");
        if (rows) *rows = data->data.records.size();
        if (failed) *failed = data->data.failed_count();
    });
}

aqrm_status aqrm_dataset_record(const aqrm_dataset* data, size_t i, aqrm_record* out) {
    return guarded([&] {
        require(data, "dataset");
        require(out, "output");
        if (i >= data->data.records.size()) throw ArgumentError("record index out of range");
        *out = to_c(data->data.records[i]);
    });
}

aqrm_status aqrm_dataset_wall_time(const aqrm_dataset* data, double* seconds) {
    return guarded([&] {
        require(data, "dataset");
        require(seconds, "output");
        *seconds = data->data.wall_time_s;
    });
}

aqrm_status aqrm_dataset_write(const aqrm_dataset* data, const char* path, const char* format) {
    return guarded([&] {
        require(data, "dataset");
        require(path, "path");
        const auto f = aqrm::parse_format(format ? format : "csv");
        if (!f) throw ArgumentError(std::string("unknown format '") + format + "'");
        aqrm::emit(data->data, path, *f);
    });
}

aqrm_status aqrm_classify(const aqrm_record* record, aqrm_phase_label* out) {
    return guarded([&] {
        require(record, "record");
        require(out, "output");
        const aqrm::PhaseLabel l = aqrm::classify_phase(from_c(*record));
        *out = aqrm_phase_label{static_cast<aqrm_regime>(l.regime), l.parity, l.n_z, l.ambiguous ? 1 : 0};
    });
}

const char* aqrm_regime_string(aqrm_regime regime) { return aqrm::to_string(static_cast<aqrm::Regime>(regime)); }

} // extern "C"
