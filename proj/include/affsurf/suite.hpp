#pragma once

#include <cstdint>

#include "affsurf/report.hpp"

namespace affsurf::suite {

struct Params {
    std::uint64_t seed = 7;
    bool quick = false;  // reduced replicate counts for smoke runs
};

// The eight acceptance checks. Each returns rows with pass flags evaluated
// at the pinned tolerances.
ExperimentReport bp_closed_form(const Params& p);        // B_p quadrature vs closed form
ExperimentReport floating_limit(const Params& p);        // floating-body limit
ExperimentReport sw1(const Params& p);                   // rolling profile bound
ExperimentReport curvature_triangle(const Params& p);    // implicit / graph / Dupin
ExperimentReport inequalities(const Params& p);          // isoperimetric, Petty, Lutwak, ...
ExperimentReport random_polytopes(const Params& p);      // RanPol1 / RanPol2 / f_as
ExperimentReport best_approx(const Params& p);           // del_1 -> 1/6
ExperimentReport determinism(const Params& p);           // byte reproducibility

ExperimentReport run_all(const Params& p);
ExperimentReport run_named(const std::string& name, const Params& p);

}  // namespace affsurf::suite
