// scan.hpp: (lambda, g) grid scans, phase labels, dataset I/O and the built-in
// scan presets.

#pragma once

#include "aqrm/model.hpp"
#include "aqrm/realspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aqrm {

struct Axis {
    double min{};
    double max{};
    std::size_t steps{1};

    double at(std::size_t i) const;
};

struct ScanConfig {
    double omega{0.1};
    double Omega{1.0};
    Axis lambda{-1.0, 1.0, 21};
    Axis g_over_gs{0.0, 3.0, 21};
    Truncation truncation{};      // Adaptive: n_max is a lower bound per point
    bool compute_nz{true};
    double nz_threshold{1e-6};
    double grid_step{0.02};
    std::size_t workers{0};       // 0 = default_workers()
    std::string name;             // preset name, informational
    std::string quantity;         // headline column for plotting

    /// Throws ConfigError on non-finite ranges, swept axes with < 2 steps,
    /// or invalid frequencies.
    void validate() const;
};

enum class PointStatus { Ok, Degenerate, Failed };

const char* to_string(PointStatus s);
std::optional<PointStatus> parse_status(const std::string& s);

/// One grid point. Columns mirror the CSV schema order.
struct ScanRecord {
    double lambda{};
    double g_over_gs{};
    double omega{};
    double E0{};
    double E1{};
    double gap{};
    int parity{};
    double sigma_x{};
    double a_norm{};   // NaN when g = 0
    double AP{};       // a_norm * parity
    int n_z{-1};       // -1 when not computed
    double p_x{};
    double p_sigma{};
    double excitation{};
    double duality_mod{};
    std::size_t n_max_used{};
    PointStatus status{PointStatus::Ok};
};

struct ScanDataset {
    std::vector<ScanRecord> records;  // lambda-major, then g
    Metadata metadata;                // stable keys; no wall time
    double wall_time_s{};
    std::size_t lambda_steps{};
    std::size_t g_steps{};

    std::size_t failed_count() const;
};

/// Full per-point pipeline: sector solve, observables, zero count (on the
/// dual-transformed state when lambda < 0). Solver failures are recorded
/// in the row, never thrown.
ScanRecord evaluate_point(double omega, double Omega, double lambda, double g_over_gs, const ScanConfig& cfg);

ScanDataset scan2d(const ScanConfig& cfg);

enum class Regime { Normal, XType, PType };

const char* to_string(Regime r);

struct PhaseLabel {
    Regime regime{Regime::Normal};
    int parity{};
    int n_z{-1};
    /// a_norm within 0.02 of the ±0.1 regime threshold, or n_z missing.
    bool ambiguous{};

    std::string str() const;
};

/// Regime from a_norm (±0.1 threshold), parity sign, n_z.
PhaseLabel classify_phase(const ScanRecord& record);

enum class Format { Csv, Json };

std::optional<Format> parse_format(const std::string& s);

/// Writes the dataset. CSV: `#` metadata lines, then a header row and one row
/// per point with doubles printed round-trip exact. JSON: {"metadata", "records"}.
void emit(const ScanDataset& data, const std::string& path, Format format);

std::string to_csv(const ScanDataset& data);
std::string to_json(const ScanDataset& data);

/// Parses CSV written by emit (metadata restored, wall time included).
ScanDataset read_csv(const std::string& path);
ScanDataset parse_csv(const std::string& text);

extern const std::vector<std::string> kCsvColumns;

struct Preset {
    std::string name;
    std::string description;
    ScanConfig config;
};

const std::vector<Preset>& presets();
std::optional<Preset> find_preset(const std::string& name);

} // namespace aqrm
