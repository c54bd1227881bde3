#pragma once

#include <string>
#include <vector>

#include "tgs/model_data.hpp"
#include "tgs/reactions.hpp"
#include "tgs/scheme.hpp"

namespace tgs {

// Built-in initial conditions.  Every preset starts below the pressure
// ceiling so the maximum principle holds from the first step.
enum class InitialPreset : int {
    Barenblatt,        // reaction-free self-similar profile, species 1 only
    GaussianBumps,     // one Gaussian per species, offset centers
    TwoBumpsSegregated,  // compactly supported mollifier bumps, disjoint supports
    HomeostaticPlateau,  // uniform state exactly at the pressure ceiling
    FromSnapshot,      // resume from a state file
};

struct InitialConfig {
    InitialPreset preset = InitialPreset::GaussianBumps;

    // barenblatt
    double mass = 1.0;
    double t0 = 0.5;

    // gaussian_bumps
    double amp1 = 0.3, amp2 = 0.3;
    double sigma1 = 1.0, sigma2 = 1.0;
    double center1 = -1.5, center2 = 1.5;

    // two_bumps_segregated
    double bump_amp = 0.5;
    double bump_width = 1.5;
    double bump_separation = 4.0;

    // homeostatic_plateau
    double plateau_c1 = 0.5;

    // from_snapshot
    std::string snapshot_path;
};

struct OutputConfig {
    std::string directory = "out";
    int snapshot_every = 0;   // write a state file every K diagnostics records (0 = final only)
    bool emit_plots = false;  // render SVG plots alongside the CSV tables
};

struct RunConfig {
    // [grid]
    int dim = 1;
    int cells_per_axis = 128;
    double half_width = 6.0;

    ReactionModel model;    // [model]
    SchemeParams scheme;    // [scheme]
    InitialConfig initial;  // [initial]
    OutputConfig output;    // [output]

    // Keys the file did not set, echoed as "section.key = value" in the run log.
    std::vector<std::string> defaults_applied;

    Grid make_grid() const { return Grid{dim, cells_per_axis, half_width}; }

    // Build the initial species densities on this grid.  Throws ConfigError when
    // a preset's parameters put the initial pressure above the ceiling, and
    // DimensionMismatch / ConfigError when a snapshot disagrees with the grid
    // or model sections.
    InitialData build_initial(const Grid& grid) const;
};

// Parse configuration text.  Unknown sections or keys, malformed lines, and
// out-of-range values raise ConfigError naming the line.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

struct Snapshot;  // snapshot.hpp

// Raise unless the snapshot's grid and pressure exponent match the run setup.
void check_snapshot_matches(const Snapshot& snap, const Grid& grid, const ReactionModel& model);

// Split a snapshot's (n, c1) into the two species densities.
InitialData split_snapshot(const Snapshot& snap);

}  // namespace tgs
