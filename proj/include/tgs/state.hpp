#pragma once

#include "tgs/field.hpp"

namespace tgs {

// Simulation state: total density n, species-1 fraction c1, and time.
// c2 = 1 - c1, n1 = c1*n, n2 = c2*n, and p = n^gamma are derived views, so
// c1 + c2 = 1 holds identically and n1 + n2 reconstructs n to roundoff.
struct State {
    Field n;
    Field c1;
    double t = 0.0;

    Field n1() const;
    Field n2() const;
};

}  // namespace tgs
