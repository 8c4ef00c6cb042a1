#include "aqrm/scan.hpp"

#include "aqrm/eigensolver.hpp"
#include "aqrm/error.hpp"
#include "aqrm/observables.hpp"
#include "aqrm/parallel.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace aqrm {

double Axis::at(std::size_t i) const {
    if (steps <= 1) return min;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

namespace {

void validate_axis(const Axis& a, const char* name) {
    if (!std::isfinite(a.min) || !std::isfinite(a.max)) {
        throw ConfigError(std::string(name) + " range must be finite");
    }
    if (a.steps == 0) {
        throw ConfigError(std::string(name) + " needs at least one step");
    }
    if (a.min != a.max && a.steps < 2) {
        throw ConfigError(std::string(name) + " is swept and needs >= 2 steps");
    }
    if (a.max < a.min) {
        throw ConfigError(std::string(name) + " range has max < min");
    }
}

} // namespace

void ScanConfig::validate() const {
    build_params(omega, Omega, 0.0, 0.0);
    validate_axis(lambda, "lambda");
    validate_axis(g_over_gs, "g");
    if (std::abs(lambda.min) > 1.0 || std::abs(lambda.max) > 1.0) {
        throw ConfigError("lambda range must lie in [-1, 1]");
    }
    if (g_over_gs.min < 0.0) {
        throw ConfigError("g range must be >= 0");
    }
    if (!(grid_step > 0.0) || !(nz_threshold > 0.0)) {
        throw ConfigError("grid step and zero threshold must be > 0");
    }
}

const char* to_string(PointStatus s) {
    switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::Degenerate: return "degenerate";
    case PointStatus::Failed: return "failed";
    }
    return "?";
}

std::optional<PointStatus> parse_status(const std::string& s) {
    if (s == "ok") return PointStatus::Ok;
    if (s == "degenerate") return PointStatus::Degenerate;
    if (s == "failed") return PointStatus::Failed;
    return std::nullopt;
}

std::size_t ScanDataset::failed_count() const {
    std::size_t n = 0;
    for (const ScanRecord& r : records) n += r.status == PointStatus::Failed ? 1 : 0;
    return n;
}

ScanRecord evaluate_point(double omega, double Omega, double lambda, double g_over_gs, const ScanConfig& cfg) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    ScanRecord r;
    r.lambda = lambda;
    r.g_over_gs = g_over_gs;
    r.omega = omega;
    try {
        const ModelParams p = build_params_gs(omega, Omega, g_over_gs, lambda);
        r.n_max_used = resolve_n_max(p, cfg.truncation);
        const LowSpectrum ls = low_spectrum(p, r.n_max_used);
        const ObservableSet o = evaluate(ls.ground, p);

        r.E0 = ls.e0;
        r.E1 = ls.e1;
        r.gap = ls.gap();
        r.parity = ls.ground_parity;
        r.sigma_x = o.sigma_x;
        r.a_norm = o.a_norm.value_or(nan);
        r.AP = r.a_norm * r.parity;
        r.p_x = o.p_x;
        r.p_sigma = o.p_sigma;
        r.excitation = o.excitation;
        r.duality_mod = o.duality_modulus();
        r.status = ls.degenerate ? PointStatus::Degenerate : PointStatus::Ok;

        if (cfg.compute_nz) {
            // p-type states carry their nodes in momentum space; the dual map
            // brings them to x space.
            const Eigen::VectorXd state = lambda < 0.0 ? align_real(dual_transform(ls.ground)) : ls.ground;
            const SpinorWave w = spinor_wavefunction(state, default_grid(p, cfg.grid_step));
            r.n_z = count_zeros(w, Component::Minus, cfg.nz_threshold).n_z;
        }
    } catch (const std::exception&) {
        r.E0 = r.E1 = r.gap = r.sigma_x = r.a_norm = r.AP = nan;
        r.p_x = r.p_sigma = r.excitation = r.duality_mod = nan;
        r.parity = 0;
        r.n_z = -1;
        r.status = PointStatus::Failed;
    }
    return r;
}

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

Metadata scan_metadata(const ScanConfig& cfg) {
    Metadata m;
    m["code_version"] = AQRM_VERSION;
    m["preset"] = cfg.name.empty() ? "custom" : cfg.name;
    m["quantity"] = cfg.quantity;
    m["omega"] = fmt_double(cfg.omega);
    m["Omega"] = fmt_double(cfg.Omega);
    m["lambda_min"] = fmt_double(cfg.lambda.min);
    m["lambda_max"] = fmt_double(cfg.lambda.max);
    m["lambda_steps"] = std::to_string(cfg.lambda.steps);
    m["g_over_gs_min"] = fmt_double(cfg.g_over_gs.min);
    m["g_over_gs_max"] = fmt_double(cfg.g_over_gs.max);
    m["g_steps"] = std::to_string(cfg.g_over_gs.steps);
    m["truncation_policy"] = cfg.truncation.policy == TruncationPolicy::Adaptive ? "adaptive" : "fixed";
    m["n_max_request"] = std::to_string(cfg.truncation.n_max);
    m["compute_nz"] = cfg.compute_nz ? "true" : "false";
    m["nz_threshold"] = fmt_double(cfg.nz_threshold);
    m["grid_step"] = fmt_double(cfg.grid_step);
    return m;
}

} // namespace

ScanDataset scan2d(const ScanConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    ScanDataset data;
    data.lambda_steps = cfg.lambda.steps;
    data.g_steps = cfg.g_over_gs.steps;
    data.metadata = scan_metadata(cfg);
    data.records.resize(cfg.lambda.steps * cfg.g_over_gs.steps);

    const std::size_t workers = cfg.workers > 0 ? cfg.workers : default_workers();
    parallel_for(data.records.size(), workers, [&](std::size_t idx) {
        const std::size_t i = idx / cfg.g_over_gs.steps;
        const std::size_t j = idx % cfg.g_over_gs.steps;
        data.records[idx] = evaluate_point(cfg.omega, cfg.Omega, cfg.lambda.at(i), cfg.g_over_gs.at(j), cfg);
    });

    data.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return data;
}

const char* to_string(Regime r) {
    switch (r) {
    case Regime::Normal: return "normal";
    case Regime::XType: return "x-type";
    case Regime::PType: return "p-type";
    }
    return "?";
}

std::string PhaseLabel::str() const {
    std::string s = to_string(regime);
    s += parity > 0 ? "/P+" : "/P-";
    s += "/nz=" + (n_z >= 0 ? std::to_string(n_z) : std::string("?"));
    if (ambiguous) s += "/ambiguous";
    return s;
}

PhaseLabel classify_phase(const ScanRecord& record) {
    constexpr double threshold = 0.1;
    constexpr double margin = 0.02;
    PhaseLabel label;
    label.parity = record.parity;
    label.n_z = record.n_z;
    const double a = record.a_norm;
    if (std::isfinite(a)) {
        if (a > threshold) label.regime = Regime::XType;
        else if (a < -threshold) label.regime = Regime::PType;
        label.ambiguous = std::abs(std::abs(a) - threshold) < margin;
    }
    label.ambiguous = label.ambiguous || record.n_z < 0 || record.status != PointStatus::Ok;
    return label;
}

} // namespace aqrm
