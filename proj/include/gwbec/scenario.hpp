#pragma once

#include <optional>
#include <string>

#include "gwbec/metrology.hpp"

namespace gwbec {

enum class SweepVariable { duration_s, squeezing_r, num_probes };
enum class SweepScale { linear, log };
enum class OutputFormat { csv, json };

struct SweepSpec {
    SweepVariable variable;
    double from;
    double to;
    int points;
    SweepScale scale = SweepScale::linear;
};

/// Parsed scenario file: sections [cavity], [wave], [state], [estimation],
/// optional [sweep] and [sweep2], and [output].
struct Scenario {
    CavityConfig cavity;
    // wave: exactly one of frequency_hz / resonant pair (m, n)
    double amplitude;
    double duration_s;
    std::optional<double> frequency_hz;
    std::optional<std::pair<int, int>> resonant_pair;  // (m, n)

    int mode_n;
    int mode_m;
    double squeezing_r;

    double num_probes;
    QfiMethod qfi_method;
    double d_eps = 1e-5;
    FigureOfMerit figure_of_merit = FigureOfMerit::sqrt_omega;

    std::optional<SweepSpec> sweep;
    std::optional<SweepSpec> sweep2;  // used by the sweep-grid verb

    OutputFormat format = OutputFormat::csv;
    std::string output_path;

    // Drive angular frequency in rad/s, resolved from either wave choice.
    double drive_frequency() const;
    EstimationInput base_input() const;
    EvaluateOptions options() const;
};

// Parse errors carry file/line/field context.
struct ScenarioParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");

// Dry-run report: resolved frequencies, regime ratios, gate status,
// conditioning advisories. No sweep evaluation.
std::string validate_scenario_report(const Scenario& sc);

const char* to_string(SweepVariable v);
const char* to_string(QfiMethod m);

}  // namespace gwbec
