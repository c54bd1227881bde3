#pragma once

#include <string>

#include "tgs/errors.hpp"
#include "tgs/state.hpp"

namespace tgs {

// Raised when the snapshot magic is not the supported format version.
struct FormatVersionMismatch : SnapshotError {
    explicit FormatVersionMismatch(const std::string& msg) : SnapshotError(msg) {}
};

struct Snapshot {
    State state;
    double gamma = 0.0;  // pressure exponent the state was produced with
};

// Binary state file, format "TGS1":
//   magic "TGS1"
//   payload: u32 dim, u32 cells_per_axis, f64 half_width, f64 gamma, f64 t,
//            n values, c1 values (row-major f64)
//   u64 FNV-1a checksum of the payload bytes
// All integers and floats little-endian.  Round-trips states bit-exactly.
void write_snapshot(const State& state, double gamma, const std::string& path);
Snapshot read_snapshot(const std::string& path);

}  // namespace tgs
