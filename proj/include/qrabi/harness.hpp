// harness.hpp — Parameter-sweep engine with deterministic parallel execution,
// JSON configuration, CSV tables, and grayscale PGM heatmaps.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qrabi/quantifiers.hpp"

namespace qrabi::sweep {

enum class AxisScale { Linear, Log };

struct AxisSpec {
    std::string name;  // g, g1, g2, delta, delta1, delta2, omega, T
    double min = 0.0;
    double max = 1.0;
    int points = 2;
    AxisScale scale = AxisScale::Linear;

    std::vector<double> values() const;
    void validate() const;
};

struct SweepConfig {
    model::ModelParams base;
    double temperature = 0.1;
    std::optional<double> bath_alpha;    // empty: 0.001·ω resolved per grid point
    std::optional<double> bath_omega_c;  // empty: 10·ω resolved per grid point
    std::vector<bath::Channel> channels = {bath::Channel::Qubit1, bath::Channel::Qubit2,
                                           bath::Channel::Cavity};
    std::vector<AxisSpec> axes;          // one or two
    std::vector<quant::Field> quantifiers;
    bool include_gap = false;
    std::string output_dir = "out";
    int workers = 0;                     // 0: hardware concurrency
    std::string reference_unit = "omega";
    int max_fock = 1024;
    double prune_tol = 1e-14;
    bool timing = false;                 // opt-in wall_ms column (breaks byte-identity)
    bool heatmaps = true;

    void validate() const;
};

struct SweepRow {
    std::vector<int> axis_index;
    std::vector<double> axis_values;
    quant::QuantifierReport report;
    double wall_ms = 0.0;
};

struct SweepFailure {
    std::vector<int> axis_index;
    std::vector<double> axis_values;
    std::string error;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;          // lexicographic in axis indices
    std::vector<SweepFailure> failures;
};

// Evaluates every grid point with an independent adaptive cutoff. Per-point
// errors are recorded in `failures` and never abort the sweep; output order
// is independent of the worker count.
SweepResult run_sweep(const SweepConfig& config);

// RFC-4180 CSV, LF endings: axis columns, requested report fields in
// declaration order, gap_ratio when enabled, then n_fock_used and M_used
// (and wall_ms when timing is on). Floats use shortest round-trip decimals;
// an undefined G² is an empty field.
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

// Binary PGM (P5, maxval 255), one pixel per grid point, the second axis
// descending down the image. Linear min–max normalization over finite values;
// a constant field renders full-scale. The sidecar <stem>.range.txt records
// the normalization.
void emit_heatmap(const SweepResult& result, quant::Field field,
                  const std::filesystem::path& path);

// Parse a config from JSON text (sections model, bath, sweep, output) or load
// it from a file; serialize the fully resolved config for echoing.
SweepConfig parse_config(const std::string& json_text);
SweepConfig load_config(const std::filesystem::path& path);
std::string config_echo_json(const SweepConfig& config);

} // namespace qrabi::sweep

namespace qrabi {

// CLI entry point (subcommands sweep / point / spectrum / selftest).
// Exit codes: 0 success, 1 config or usage error, 2 partial sweep failure.
int cli_main(int argc, char** argv);

// The fast invariant suite behind `qrabi selftest`.
bool selftest(std::ostream& out);

} // namespace qrabi
