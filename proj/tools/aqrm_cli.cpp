// aqrm: command-line front end over the C API.
//
// Exit codes: 0 success, 2 some grid points failed, 1 configuration or i/o error.

#include "aqrm/aqrm.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

struct CliError : std::runtime_error {
    int code;
    CliError(const std::string& what, int c) : std::runtime_error(what), code(c) {}
};

void check(aqrm_status st, const char* context) {
    if (st == AQRM_OK) return;
    std::string msg = std::string(context) + ": " + aqrm_status_string(st);
    if (*aqrm_last_error()) msg += " (" + std::string(aqrm_last_error()) + ")";
    throw CliError(msg, st == AQRM_ERR_SOLVER ? kExitPartial : kExitConfig);
}

// Options that a config file may override, keyed by long name without dashes.
// Dashes and underscores are interchangeable in config keys.
class Registry {
  public:
    template <typename T>
    CLI::Option* bind(CLI::App* app, const std::string& name, T& target, const std::string& help) {
        CLI::Option* opt = app->add_option("--" + name, target, help)->capture_default_str();
        setters_[normalize(name)] = [&target, name](const std::string& v) { target = parse<T>(name, v); };
        options_[normalize(name)] = opt;
        return opt;
    }

    CLI::Option* flag(CLI::App* app, const std::string& name, bool& target, const std::string& help) {
        CLI::Option* opt = app->add_flag("--" + name, target, help);
        setters_[normalize(name)] = [&target, name](const std::string& v) { target = parse<bool>(name, v); };
        options_[normalize(name)] = opt;
        return opt;
    }

    bool given(const std::string& name) const {
        auto it = options_.find(normalize(name));
        return it != options_.end() && it->second->count() > 0;
    }

    // Applied after flag parsing, so file values take precedence.
    void apply(const std::map<std::string, std::string>& values) {
        for (const auto& [key, value] : values) {
            auto it = setters_.find(normalize(key));
            if (it == setters_.end()) throw CliError("unknown config key '" + key + "'", kExitConfig);
            it->second(value);
            overridden_.push_back(normalize(key));
        }
    }

    bool overridden(const std::string& name) const {
        for (const auto& k : overridden_)
            if (k == normalize(name)) return true;
        return false;
    }

  private:
    static std::string normalize(std::string s) {
        for (char& c : s)
            if (c == '_') c = '-';
        return s;
    }

    template <typename T>
    static T parse(const std::string& name, const std::string& raw) {
        if constexpr (std::is_same_v<T, bool>) {
            if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
            if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
            throw CliError("config key '" + name + "': expected a boolean, got '" + raw + "'", kExitConfig);
        } else if constexpr (std::is_same_v<T, std::string>) {
            return raw;
        } else {
            std::istringstream in(raw);
            T v{};
            in >> v;
            if (in.fail() || !(in >> std::ws).eof()) {
                throw CliError("config key '" + name + "': cannot parse '" + raw + "'", kExitConfig);
            }
            return v;
        }
    }

    std::map<std::string, std::function<void(const std::string&)>> setters_;
    std::map<std::string, CLI::Option*> options_;
    std::vector<std::string> overridden_;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\"'");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\"'");
    return s.substr(b, e - b + 1);
}

// JSON object or "key = value" / "key: value" lines with # comments.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open config file '" + path + "'", kExitConfig);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::map<std::string, std::string> out;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw CliError("config file '" + path + "': " + e.what(), kExitConfig);
        }
        for (const auto& [k, v] : j.items()) {
            if (v.is_string()) out[k] = v.get<std::string>();
            else if (v.is_boolean()) out[k] = v.get<bool>() ? "true" : "false";
            else if (v.is_number()) out[k] = v.dump();
            else throw CliError("config key '" + k + "' must be a scalar", kExitConfig);
        }
        return out;
    }

    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        auto sep = line.find_first_of("=:");
        if (sep == std::string::npos) {
            throw CliError(path + ":" + std::to_string(lineno) + ": expected key = value", kExitConfig);
        }
        out[trim(line.substr(0, sep))] = trim(line.substr(sep + 1));
    }
    return out;
}

struct Point {
    double omega = 0.1;
    double Omega = 1.0;
    double lambda = 0.0;
    double g = 1.0;
    bool g_absolute = false;
    size_t n_max = 0;
    bool fixed = false;
    bool allow_below_floor = false;
};

void bind_point(Registry& reg, CLI::App* app, Point& pt) {
    reg.bind(app, "omega", pt.omega, "boson frequency (units of Omega)");
    reg.bind(app, "Omega", pt.Omega, "qubit splitting");
    reg.bind(app, "lambda", pt.lambda, "anisotropy, -1..1");
    reg.bind(app, "g", pt.g, "coupling in units of g_s = sqrt(omega*Omega)/2");
    reg.flag(app, "g-absolute", pt.g_absolute, "read --g in units of Omega instead of g_s");
    reg.bind(app, "n-max", pt.n_max, "boson cutoff (lower bound unless --fixed)");
    reg.flag(app, "fixed", pt.fixed, "use --n-max exactly");
    reg.flag(app, "allow-below-floor", pt.allow_below_floor, "accept a fixed cutoff under the adaptive floor");
}

struct Model {
    aqrm_model* handle = nullptr;
    Model() = default;
    Model(const Model&) = delete;
    Model& operator=(const Model&) = delete;
    ~Model() { aqrm_model_destroy(handle); }
};

void make_model(const Point& pt, Model& m) {
    if (pt.g_absolute) {
        check(aqrm_model_create(pt.omega, pt.Omega, pt.g, pt.lambda, 0, &m.handle), "model");
    } else {
        check(aqrm_model_create_gs(pt.omega, pt.Omega, pt.g, pt.lambda, 0, &m.handle), "model");
    }
    if (pt.fixed || pt.n_max > 0) {
        check(aqrm_model_set_truncation(m.handle, pt.fixed ? pt.n_max : std::max<size_t>(pt.n_max, 1),
                                        pt.fixed ? AQRM_TRUNCATION_FIXED : AQRM_TRUNCATION_ADAPTIVE,
                                        pt.allow_below_floor),
              "truncation");
    }
}

struct Wave {
    aqrm_wave* handle = nullptr;
    Wave() = default;
    Wave(const Wave&) = delete;
    Wave& operator=(const Wave&) = delete;
    ~Wave() { aqrm_wave_destroy(handle); }
};

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// --- spectrum -------------------------------------------------------------

struct SpectrumArgs {
    Point pt;
    size_t k = 10;
    bool zeros = true;
    bool as_json = false;
};

int run_spectrum(const SpectrumArgs& a) {
    Model m;
    make_model(a.pt, m);
    aqrm_params p{};
    check(aqrm_model_params(m.handle, &p), "params");

    aqrm_solution* sol = nullptr;
    check(aqrm_solve(m.handle, a.k, AQRM_SECTOR_FULL, &sol), "solve");
    std::vector<double> energies(a.k), residuals(a.k);
    for (size_t i = 0; i < a.k; ++i) {
        aqrm_solution_energy(sol, i, &energies[i]);
        aqrm_solution_residual(sol, i, &residuals[i]);
    }
    aqrm_solution_destroy(sol);

    aqrm_low_spectrum ls{};
    check(aqrm_low_spectrum_compute(m.handle, &ls), "low spectrum");
    aqrm_observables obs{};
    check(aqrm_ground_observables(m.handle, &obs), "observables");

    int n_z = -1, ambiguous = 0;
    if (a.zeros) {
        Wave w;
        check(aqrm_ground_wave(m.handle, 0.0, 0.0, p.lambda < 0.0, &w.handle), "wave");
        check(aqrm_wave_count_zeros(w.handle, AQRM_COMPONENT_MINUS, 1e-6, &n_z, &ambiguous), "zeros");
    }

    aqrm_record rec{};
    rec.lambda = p.lambda;
    rec.g_over_gs = p.g / p.g_s;
    rec.parity = ls.ground_parity;
    rec.a_norm = obs.a_norm;
    rec.n_z = n_z;
    rec.status = ls.degenerate ? AQRM_POINT_DEGENERATE : AQRM_POINT_OK;
    aqrm_phase_label label{};
    check(aqrm_classify(&rec, &label), "classify");

    if (a.as_json) {
        json j;
        j["params"] = {{"omega", p.omega}, {"Omega", p.Omega}, {"g", p.g},           {"g_over_gs", p.g / p.g_s},
                       {"lambda", p.lambda}, {"g_s", p.g_s},   {"n_max", ls.n_max}};
        j["energies"] = energies;
        j["residuals"] = residuals;
        j["E0"] = ls.e0;
        j["E1"] = ls.e1;
        j["gap"] = ls.gap;
        j["parity"] = ls.ground_parity;
        j["splitting"] = num(ls.splitting);
        j["degenerate"] = ls.degenerate != 0;
        j["observables"] = {{"a_norm", num(obs.a_norm)},
                            {"sigma_x", obs.sigma_x},
                            {"p_x", obs.p_x},
                            {"p_sigma", obs.p_sigma},
                            {"excitation", obs.excitation},
                            {"excitation_variance", obs.excitation_variance},
                            {"duality", {obs.duality_re, obs.duality_im}},
                            {"duality_mod", obs.duality_mod},
                            {"x2", obs.x2},
                            {"p2", obs.p2},
                            {"photon_number", obs.photon_number}};
        j["n_z"] = n_z;
        j["label"] = {{"regime", aqrm_regime_string(label.regime)},
                      {"parity", label.parity},
                      {"n_z", label.n_z},
                      {"ambiguous", label.ambiguous != 0}};
        std::cout << j.dump(2) << '\n';
        return kExitOk;
    }

    std::printf("omega=%g Omega=%g lambda=%g g=%.10g (g/g_s=%.10g) n_max=%zu\n", p.omega, p.Omega, p.lambda, p.g,
                p.g / p.g_s, ls.n_max);
    std::printf("%-4s %22s %12s\n", "i", "E", "residual");
    for (size_t i = 0; i < a.k; ++i) std::printf("%-4zu %22.15f %12.3e\n", i, energies[i], residuals[i]);
    std::printf("E0 = %.15f  E1 = %.15f  gap = %.6e\n", ls.e0, ls.e1, ls.gap);
    std::printf("parity = %+d%s  splitting = %.6e\n", ls.ground_parity, ls.degenerate ? " (degenerate)" : "",
                ls.splitting);
    std::printf("A = %.10f  <sigma_x> = %.10f  P_x = %.10f  P_sigma = %.10f\n", obs.a_norm, obs.sigma_x, obs.p_x,
                obs.p_sigma);
    std::printf("<C> = %.10f  var(C) = %.6e  D = %.10f%+.10fi  |D| = %.12f\n", obs.excitation,
                obs.excitation_variance, obs.duality_re, obs.duality_im, obs.duality_mod);
    if (a.zeros) std::printf("n_z = %d%s\n", n_z, ambiguous ? " (ambiguous)" : "");
    std::printf("phase = %s, P=%+d, n_z=%d%s\n", aqrm_regime_string(label.regime), label.parity, label.n_z,
                label.ambiguous ? " (ambiguous)" : "");
    return kExitOk;
}

// --- scan -----------------------------------------------------------------

struct ScanArgs {
    std::string preset;
    double omega = 0.1, Omega = 1.0;
    double lambda_min = -1.0, lambda_max = 1.0;
    size_t lambda_steps = 41;
    double g_min = 0.0, g_max = 3.0;
    size_t g_steps = 41;
    size_t n_max = 0;
    bool fixed = false;
    bool allow_below_floor = false;
    bool nz = false;
    double nz_threshold = 1e-6;
    double grid_step = 0.02;
    size_t workers = 0;
    std::string output;
    std::string format;
};

std::string format_for(const std::string& fmt, const std::string& path) {
    if (!fmt.empty()) return fmt;
    const auto dot = path.rfind('.');
    if (dot != std::string::npos && path.substr(dot) == ".json") return "json";
    return "csv";
}

int run_scan(const ScanArgs& a, const Registry& reg) {
    aqrm_scan_config cfg{};
    aqrm_scan_config_default(&cfg);
    if (!a.preset.empty()) check(aqrm_preset_config(a.preset.c_str(), &cfg), "preset");

    auto set = [&](const char* name) { return a.preset.empty() || reg.given(name) || reg.overridden(name); };
    if (set("omega")) cfg.omega = a.omega;
    if (set("Omega")) cfg.Omega = a.Omega;
    if (set("lambda-min")) cfg.lambda_min = a.lambda_min;
    if (set("lambda-max")) cfg.lambda_max = a.lambda_max;
    if (set("lambda-steps")) cfg.lambda_steps = a.lambda_steps;
    if (set("g-min")) cfg.g_min_gs = a.g_min;
    if (set("g-max")) cfg.g_max_gs = a.g_max;
    if (set("g-steps")) cfg.g_steps = a.g_steps;
    if (set("nz")) cfg.compute_nz = a.nz;
    if (set("nz-threshold")) cfg.nz_threshold = a.nz_threshold;
    if (set("grid-step")) cfg.grid_step = a.grid_step;
    if (a.n_max > 0 || a.fixed) cfg.n_max = a.n_max;
    cfg.fixed_truncation = a.fixed;
    cfg.allow_below_floor = a.allow_below_floor;
    cfg.workers = a.workers;

    aqrm_dataset* data = nullptr;
    check(aqrm_scan_run(&cfg, a.preset.empty() ? nullptr : a.preset.c_str(), &data), "scan");
    size_t rows = 0, failed = 0;
    double wall = 0.0;
    aqrm_dataset_size(data, &rows, &failed);
    aqrm_dataset_wall_time(data, &wall);
    const std::string fmt = format_for(a.format, a.output);
    const aqrm_status st = aqrm_dataset_write(data, a.output.c_str(), fmt.c_str());
    aqrm_dataset_destroy(data);
    check(st, "write");

    std::fprintf(stderr, "%zu points (%zu failed) in %.2f s -> %s\n", rows, failed, wall, a.output.c_str());
    return failed > 0 ? kExitPartial : kExitOk;
}

// --- boundary -------------------------------------------------------------

struct BoundaryArgs {
    double omega = 0.5, Omega = 1.0;
    double lambda_min = 0.0, lambda_max = 0.95;
    size_t lambda_steps = 20;
    double g_lo = 0.5, g_hi = 6.0;
    size_t coarse_steps = 240;
    bool no_analytic = false;
    bool u1 = false;
    std::string output;
};

int run_boundary(const BoundaryArgs& a) {
    aqrm_boundary_request r{};
    aqrm_boundary_request_default(&r);
    r.omega = a.omega;
    r.Omega = a.Omega;
    r.lambda_min = a.lambda_min;
    r.lambda_max = a.lambda_max;
    r.lambda_steps = a.lambda_steps;
    r.g_lo_gs = a.g_lo;
    r.g_hi_gs = a.g_hi;
    r.coarse_steps = a.coarse_steps;
    r.include_analytic = !a.no_analytic;
    r.include_u1 = a.u1;
    size_t n = 0;
    check(aqrm_boundary_export(&r, a.output.c_str(), &n), "boundary");
    std::fprintf(stderr, "%zu boundary points -> %s\n", n, a.output.c_str());
    return kExitOk;
}

// --- wave -----------------------------------------------------------------

struct WaveArgs {
    Point pt;
    double step = 0.02;
    double half_width = 0.0;
    std::string dual = "auto";
    std::string output;
};

int run_wave(const WaveArgs& a) {
    Model m;
    make_model(a.pt, m);
    aqrm_params p{};
    check(aqrm_model_params(m.handle, &p), "params");
    bool dual = false;
    if (a.dual == "auto") dual = p.lambda < 0.0;
    else if (a.dual == "on") dual = true;
    else if (a.dual != "off") throw CliError("--dual must be auto, on or off", kExitConfig);

    Wave w;
    check(aqrm_ground_wave(m.handle, a.half_width, a.step, dual, &w.handle), "wave");
    check(aqrm_wave_write_csv(w.handle, a.output.c_str()), "write");
    int n_z = 0, amb = 0;
    double norm = 0.0;
    size_t n = 0;
    check(aqrm_wave_count_zeros(w.handle, AQRM_COMPONENT_MINUS, 1e-6, &n_z, &amb), "zeros");
    aqrm_wave_norm(w.handle, &norm);
    aqrm_wave_size(w.handle, &n);
    std::printf("%zu samples, norm %.10f, n_z = %d%s -> %s\n", n, norm, n_z, amb ? " (ambiguous)" : "",
                a.output.c_str());
    return kExitOk;
}

// --- presets --------------------------------------------------------------

int run_presets(bool as_json) {
    json list = json::array();
    for (size_t i = 0; i < aqrm_preset_count(); ++i) {
        aqrm_scan_config c{};
        check(aqrm_preset_config(aqrm_preset_name(i), &c), "preset");
        if (as_json) {
            list.push_back({{"name", aqrm_preset_name(i)},
                            {"quantity", aqrm_preset_quantity(i)},
                            {"description", aqrm_preset_description(i)},
                            {"omega", c.omega},
                            {"lambda", {c.lambda_min, c.lambda_max, c.lambda_steps}},
                            {"g_over_gs", {c.g_min_gs, c.g_max_gs, c.g_steps}},
                            {"compute_nz", c.compute_nz != 0}});
        } else {
            std::printf("%-6s %-12s omega=%-5g lambda=[%g,%g]x%zu g/g_s=[%g,%g]x%zu  %s\n", aqrm_preset_name(i),
                        aqrm_preset_quantity(i), c.omega, c.lambda_min, c.lambda_max, c.lambda_steps, c.g_min_gs,
                        c.g_max_gs, c.g_steps, aqrm_preset_description(i));
        }
    }
    if (as_json) std::cout << list.dump(2) << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact diagonalization and phase scans of the anisotropic Rabi model"};
    app.set_version_flag("--version", std::string(aqrm_version()));
    app.require_subcommand(1);

    Registry reg_sp, reg_sc, reg_bd, reg_wv;
    std::string config_path;

    SpectrumArgs sp;
    CLI::App* spectrum = app.add_subcommand("spectrum", "energies and observables at one point");
    bind_point(reg_sp, spectrum, sp.pt);
    reg_sp.bind(spectrum, "k", sp.k, "number of lowest levels");
    bool no_zeros = false;
    reg_sp.flag(spectrum, "no-zeros", no_zeros, "skip the real-space zero count");
    spectrum->add_flag("--json", sp.as_json, "print JSON");
    spectrum->add_option("--config", config_path, "JSON or key = value file; overrides flags");

    ScanArgs sc;
    CLI::App* scan = app.add_subcommand("scan", "2-D grid over (lambda, g/g_s)");
    scan->add_option("--preset", sc.preset, "start from a named preset");
    reg_sc.bind(scan, "omega", sc.omega, "boson frequency");
    reg_sc.bind(scan, "Omega", sc.Omega, "qubit splitting");
    reg_sc.bind(scan, "lambda-min", sc.lambda_min, "");
    reg_sc.bind(scan, "lambda-max", sc.lambda_max, "");
    reg_sc.bind(scan, "lambda-steps", sc.lambda_steps, "");
    reg_sc.bind(scan, "g-min", sc.g_min, "in units of g_s");
    reg_sc.bind(scan, "g-max", sc.g_max, "in units of g_s");
    reg_sc.bind(scan, "g-steps", sc.g_steps, "");
    reg_sc.bind(scan, "n-max", sc.n_max, "cutoff lower bound (exact with --fixed)");
    reg_sc.flag(scan, "fixed", sc.fixed, "fixed truncation");
    reg_sc.flag(scan, "allow-below-floor", sc.allow_below_floor, "accept a fixed cutoff under the adaptive floor");
    reg_sc.flag(scan, "nz", sc.nz, "count real-space zeros per point");
    reg_sc.bind(scan, "nz-threshold", sc.nz_threshold, "relative amplitude below which samples are ignored");
    reg_sc.bind(scan, "grid-step", sc.grid_step, "real-space grid step");
    reg_sc.bind(scan, "workers", sc.workers, "worker threads (0: AQRM_WORKERS or hardware)");
    reg_sc.bind(scan, "output", sc.output, "output file")->required();
    reg_sc.bind(scan, "format", sc.format, "csv or json (default from extension)");
    scan->add_option("--config", config_path, "JSON or key = value file; overrides flags");

    BoundaryArgs bd;
    CLI::App* boundary = app.add_subcommand("boundary", "parity crossings per lambda slice");
    reg_bd.bind(boundary, "omega", bd.omega, "boson frequency");
    reg_bd.bind(boundary, "Omega", bd.Omega, "qubit splitting");
    reg_bd.bind(boundary, "lambda-min", bd.lambda_min, "");
    reg_bd.bind(boundary, "lambda-max", bd.lambda_max, "");
    reg_bd.bind(boundary, "lambda-steps", bd.lambda_steps, "");
    reg_bd.bind(boundary, "g-lo", bd.g_lo, "search window start, units of g_s");
    reg_bd.bind(boundary, "g-hi", bd.g_hi, "search window end, units of g_s");
    reg_bd.bind(boundary, "coarse-steps", bd.coarse_steps, "coarse grid before bisection");
    reg_bd.flag(boundary, "no-analytic", bd.no_analytic, "omit closed-form lines");
    reg_bd.flag(boundary, "u1", bd.u1, "add the excitation-variance line");
    reg_bd.bind(boundary, "output", bd.output, "CSV path")->required();
    boundary->add_option("--config", config_path, "JSON or key = value file; overrides flags");

    WaveArgs wv;
    CLI::App* wave = app.add_subcommand("wave", "ground-state spinor wavefunction on a grid");
    bind_point(reg_wv, wave, wv.pt);
    reg_wv.bind(wave, "step", wv.step, "grid step");
    reg_wv.bind(wave, "half-width", wv.half_width, "grid half width (0: automatic)");
    reg_wv.bind(wave, "dual", wv.dual, "auto|on|off; auto transforms when lambda < 0");
    reg_wv.bind(wave, "output", wv.output, "CSV path")->required();
    wave->add_option("--config", config_path, "JSON or key = value file; overrides flags");

    bool presets_json = false;
    CLI::App* presets = app.add_subcommand("presets", "list built-in scan presets");
    presets->add_flag("--json", presets_json, "print JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (!config_path.empty()) {
            const auto values = read_config(config_path);
            if (*spectrum) reg_sp.apply(values);
            if (*scan) reg_sc.apply(values);
            if (*boundary) reg_bd.apply(values);
            if (*wave) reg_wv.apply(values);
        }
        if (*spectrum) {
            sp.zeros = !no_zeros;
            return run_spectrum(sp);
        }
        if (*scan) return run_scan(sc, reg_sc);
        if (*boundary) return run_boundary(bd);
        if (*wave) return run_wave(wv);
        if (*presets) return run_presets(presets_json);
    } catch (const CliError& e) {
        std::fprintf(stderr, "aqrm: %s\n", e.what());
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "aqrm: %s\n", e.what());
        return kExitConfig;
    }
    return kExitOk;
}
