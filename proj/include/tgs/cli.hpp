#pragma once

namespace tgs {

// Documented exit codes, one per failure category.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;        // bad arguments, config, or validation
inline constexpr int kExitAssumptions = 3;  // model failed the assumption checks
inline constexpr int kExitDiverged = 4;     // time stepping collapsed
inline constexpr int kExitAuditFailed = 5;  // run finished but an audit bound failed
inline constexpr int kExitIo = 6;           // file read/write failure

// Entry point behind main(): dispatches the subcommands
//   run <config>            integrate and audit one scenario
//   converge <config> --axis {dx|epsilon|delta} --levels N
//   validate <config>       assumption report only
//   barenblatt --gamma G --dim D --t T [--mass M] [--cells N] [--box L]
int run_cli(int argc, const char* const* argv);

}  // namespace tgs
