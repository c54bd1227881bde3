#pragma once

#include <string>
#include <vector>

#include "tgs/config.hpp"
#include "tgs/scheme.hpp"

namespace tgs {

enum class ConvergeAxis { Dx, Epsilon, Delta };

struct ConvergenceRow {
    double param = 0.0;      // dx, epsilon, or delta
    double l1_n = 0.0;       // space(-time) L1 error of the total density
    double l2_grad_p = 0.0;  // space(-time) L2 error of the pressure gradient
    double order = 0.0;      // observed order vs the previous row (L1 column)
    bool has_order = false;  // first row has no predecessor
};

// Rows sorted by decreasing parameter.
//   dx axis      — errors vs the closed-form self-similar profile at t_end;
//                  needs the matching preset with reactions off and
//                  epsilon = delta = 0.
//   epsilon axis — levels 1e-1, 1e-2, ... against the finest level, compared
//                  as space-time errors over 8 shared sample times.
//   delta axis   — levels 1e-2, 1e-3, ... likewise.
struct ConvergenceTable {
    ConvergeAxis axis = ConvergeAxis::Dx;
    std::vector<ConvergenceRow> rows;
};

// States captured at the shared sample times for one level, kept so tables can
// be rebuilt from the written snapshots alone.
struct LevelStates {
    double param = 0.0;
    std::vector<State> at;
};

struct ConvergenceStudy {
    ConvergenceTable table;
    std::vector<LevelStates> levels;
};

ConvergenceStudy converge_study(const RunConfig& cfg, ConvergeAxis axis, int levels);

std::string to_text(const ConvergenceTable& table);
void write_convergence_csv(const ConvergenceTable& table, const std::string& path);

}  // namespace tgs
