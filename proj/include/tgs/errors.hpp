#pragma once

#include <stdexcept>
#include <string>

namespace tgs {

// Base class for all solver errors.  Each failure mode that callers are
// expected to branch on gets its own type; everything else is a plain
// SolverError with a message.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input field contains a negative density value.
struct NegativeDensity : SolverError {
    explicit NegativeDensity(const std::string& msg) : SolverError(msg) {}
};

// Grids of two fields involved in one operation do not agree.
struct DimensionMismatch : SolverError {
    explicit DimensionMismatch(const std::string& msg) : SolverError(msg) {}
};

// Localizer outer radius does not fit inside the computational box.
struct LocalizerExceedsBox : SolverError {
    explicit LocalizerExceedsBox(const std::string& msg) : SolverError(msg) {}
};

// A time step produced a pressure above the homeostatic ceiling: the step
// size was too large.  run() reacts by halving dt and retrying.
struct StepRejected : SolverError {
    explicit StepRejected(const std::string& msg) : SolverError(msg) {}
};

// Repeated step rejections shrank dt below the useful range.
struct Diverged : SolverError {
    explicit Diverged(const std::string& msg) : SolverError(msg) {}
};

// Requested density floor is incompatible with the plateau value.
struct FloorBreaksHomeostatic : SolverError {
    explicit FloorBreaksHomeostatic(const std::string& msg) : SolverError(msg) {}
};

// Config file could not be parsed or failed validation.
struct ConfigError : SolverError {
    explicit ConfigError(const std::string& msg) : SolverError(msg) {}
};

// Snapshot file is unreadable, corrupt, or has the wrong format version.
struct SnapshotError : SolverError {
    explicit SnapshotError(const std::string& msg) : SolverError(msg) {}
};

// Non-snapshot file I/O failure (CSV, reports, plots, directories).
struct IoError : SolverError {
    explicit IoError(const std::string& msg) : SolverError(msg) {}
};

}  // namespace tgs
