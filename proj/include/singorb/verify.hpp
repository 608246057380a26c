#pragma once

#include <string>
#include <vector>

#include "singorb/closed_form.hpp"

namespace singorb {

struct Check {
    std::string name;
    double value = 0.0;      // measured
    double threshold = 0.0;  // pass iff value <= threshold
    bool pass = false;
};

/// The full invariant battery for one orbit: constants identity, energy
/// residual along the closed form, periodicity shift, mean velocity,
/// integrator agreement, integrated energy drift, finite-difference
/// equation residual, and crossing states (unbounded orbits).
/// tol_scale multiplies every threshold.
std::vector<Check> verify_orbit(const OrbitParams& p, double tol_scale);

bool all_pass(const std::vector<Check>& checks);

} // namespace singorb
