#pragma once

// Initial-data descriptors for the solver and the convergence harness. Each
// descriptor carries an exact primitive so grid projections have exact cell
// averages.

#include <functional>
#include <string>

#include "shockfront/piecewise.hpp"

namespace shockfront {

struct InitialData {
    std::string name;
    double support_lo = 0.0;
    double support_hi = 0.0;
    double mass = 0.0;
    double sup_norm = 0.0;         // M = ||u0||_inf
    double total_variation = 0.0;  // analytic TV, boundary jumps included
    double lip_plus = 0.0;         // +inf when any interior upward jump exists
    std::function<double(double)> primitive;  // exact integral_{-inf}^x u0
    std::function<double(double)> eval;       // pointwise (a.e.)
};

// u0(x) = 2x on [0,1], 0 outside; mass 1, M = 2, Lip+ = 2.
InitialData wedge_data();

// u0 = 1 on [-1, 0); mass 1, single downward interior profile (Lip+ = 0).
InitialData decreasing_step_data();

// Rising staircase on [0,1] with the given number of steps, mass 1,
// Lip+ = +inf. Values are (i+1) * 2/(steps+1) / steps-width normalization.
InitialData staircase_data(int steps);

// Wraps explicit step-function samples.
InitialData samples_data(PiecewiseConstantFn u0, std::string name = "samples");

// Cell averages of u0 on the grid with cells C_i = [(i-1/2)dx, (i+1/2)dx).
// Exact via the descriptor's primitive; preserves mass to 1e-13 relative.
PiecewiseConstantFn project_to_grid(const InitialData& u0, double dx);

// Nearest-node rounding of cell values onto the node lattice {j*delta},
// followed by a largest-remainder repair so the total mass is preserved
// exactly whenever it is representable on the lattice (true for all shipped
// mass-1 data on dyadic grids). Returns the snapped function and reports the
// largest per-cell shift.
struct SnapResult {
    PiecewiseConstantFn fn;
    double max_shift = 0.0;
    double mass_drift = 0.0;  // |mass(snapped) - mass(input)|
};
SnapResult snap_to_lattice(const PiecewiseConstantFn& u, double delta);

}  // namespace shockfront
