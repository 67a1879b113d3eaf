#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "easer/double_pass.hpp"
#include "easer/fock.hpp"

namespace easer {

enum class OutputFormat { csv, json };

// One scenario run. Built from a flat key-value config file with
// dotted sections (pdc.tau = 0.3); command-line flags override file
// values. Identical config and seed produce byte-identical output.
struct ScenarioConfig {
    std::string scenario;
    std::string output_path;  // empty: "<scenario>.csv" or ".json"
    OutputFormat format = OutputFormat::csv;
    std::uint64_t seed = 1;

    // single-pass source (distribution, project, montecarlo)
    double tau = 0.3;
    double pump_phase = 0.0;
    int cutoff = 0;          // 0: pick the smallest adequate cutoff
    double mean_pairs = 0.0; // > 0: derive tau from the mean pair number
    double truncation_tol = 1e-6;

    // double pass (delay-scan, fringe-scan, amplify)
    DoublePassConfig dp;

    // detection (project, montecarlo)
    double efficiency = 1.0;
    std::string basis = "hv";  // hv | diag
    std::set<Slot> splitter_slots;
    bool number_resolving = false;

    // scan grids (step counts are point counts, at least 2)
    double theta_min = 0.0;
    double theta_max = 6.283185307179586;
    int theta_steps = 49;
    double delay_min_um = -600.0;
    double delay_max_um = 600.0;
    int delay_steps = 121;
    int order = 2;
    ModeOccupation term{1, 0, 0, 1};

    long long pulses = 1000000;
};

// Parses the config file. Unknown keys, malformed lines, and values of
// the wrong type raise ConfigError naming the offending field.
ScenarioConfig load_scenario_config(const std::string& path);

// Validates the config and writes the scenario output file.
// ConfigError for bad scenario names, empty grids, or unwritable
// output paths; numeric failures propagate as their own types.
void run_scenario(const ScenarioConfig& cfg);

// Full command-line entry point (args excludes argv[0]).
// Exit codes: 0 success, 2 configuration/usage error, 3 numeric or
// convergence failure.
int cli_main(const std::vector<std::string>& args);

}  // namespace easer
