#pragma once

#include "zetadyn/cli/csv.hpp"
#include "zetadyn/cli/manifest.hpp"
#include "zetadyn/cli/svg.hpp"
#include "zetadyn/maps.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zetadyn::cli {

inline constexpr const char* kCommands[] = {"orbit",    "fixed-points", "scan",     "poincare", "attractor",
                                            "spectrum", "energy",       "transfer", "eigen",    "pair-correlation"};

/// Fully resolved settings for one run. Fields not used by `command` are ignored.
struct SweepConfig {
    std::string command;

    std::string map = "electrical"; ///< electrical | appendix
    ElectricalParams circuit;
    double alpha = 0.0;

    double x0 = 1.2;
    std::size_t n = 2000;
    std::size_t transient = 1000;
    std::size_t retain = 1;

    double control_min = 0.5;
    double control_max = 0.95;
    std::size_t steps = 19;

    double x_lo = 0.05;
    double x_hi = 20.0;
    std::size_t seeds = 64;

    std::optional<double> section;
    std::size_t stride = 0; ///< 0 selects threshold crossings

    bool remove_mean = false;
    bool hann = false;
    std::size_t top = 3;

    std::string sweep = "r"; ///< energy: r | C
    std::vector<double> capacitances;

    std::string potential = "montgomery"; ///< zero | montgomery | appendix | yitang
    double A = 0.06;
    double mass = 1.0;
    double c = 1.0;
    bool allow_complex = false;
    double x_min = 0.1;
    double x_max = 20.0;
    std::vector<std::size_t> points{1000};
    std::size_t k = 5;
    std::string method = "auto";
    double a_coeff = 1.0;
    double b_coeff = 1.0;
    double d_coeff = 1.0;
    double e_coeff = 0.0;

    double u_min = 0.0;
    double u_max = 3.0;
    std::optional<double> delta;

    std::string plot = "default"; ///< scan: bifurcation | lyapunov
    std::string kind = "default"; ///< scatter | line
    std::string format = "csv";
    std::string out;
    unsigned workers = 1;
};

struct SweepOutput {
    Table table;
    PlotData plot;
    PlotKind kind = PlotKind::Scatter;
    std::vector<std::string> notes;
    std::vector<std::string> summary;
};

/// Checks every value `config.command` will use; throws InvalidInput naming the field.
void validate(const SweepConfig& config);

/// Runs the command. Per-entry failures in sweeps become status cells.
[[nodiscard]] SweepOutput run_sweep(const SweepConfig& config);

/// Parses arguments (without the program name), resolves `--config`, runs the
/// command and writes the artifact and its manifest. Returns 0 on success,
/// 2 on validation errors and 1 on runtime errors.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads a flat key=value file into `--key=value` arguments.
[[nodiscard]] std::vector<std::string> config_file_arguments(const std::string& path);

} // namespace zetadyn::cli
