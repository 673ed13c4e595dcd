#pragma once

// Numeric search for the minimal-uncertainty phase.  This module never uses
// the closed-form optimal-point expressions: it evaluates the uncertainty as
// a black box and minimizes it, which is what qualifies it as an independent
// cross-check of those expressions (and as the only source of truth for
// configurations without a printed optimum).
//
// Search strategy: coarse grid (2048 points) over the open interval (0, pi)
// to bracket the global minimum, golden-section refinement of that bracket to
// 1e-12 rad, then a derivative-free polynomial polish.  The polish exists
// because comparisons of nearly equal doubles stall golden section on a
// rounding plateau around 1e-7 rad wide; a symmetric least-squares cubic fit
// across the plateau recovers the vertex to ~1e-10 rad.

#include <vector>

#include "nli/core.hpp"

namespace nli::opt {

enum class Objective { Bare, Detected };

/// Sweepable configuration parameters.
enum class Axis { InternalLoss, GainA, GainB, Eta, ArmLoss1, ArmLoss2 };

struct OptimizationResult {
  double phi_star = 0.0;
  double objective = 0.0;     // uncertainty (squared) at phi_star
  double n_at_star = 0.0;     // mean photons at phi_star (detected mean for
                              // the Detected objective)
  int iterations = 0;         // golden-section iterations
  double bracket_width = 0.0; // final bracket width in rad
};

/// Uncertainty (squared) of cfg's flavor at the given phase.
double objective_at(const NliConfig& cfg, Objective objective, double phi);

/// Global minimum of the uncertainty over phi in (0, pi).
/// Throws no_interference_error when the fringe contrast vanishes.
OptimizationResult minimize_uncertainty(const NliConfig& cfg,
                                        Objective objective);

/// Same search on an arbitrary interval (used e.g. to confirm the mirrored
/// minimum on (-pi, 0)).
OptimizationResult minimize_on(const NliConfig& cfg, Objective objective,
                               double lo, double hi, int grid_points = 2048);

/// One optimization per grid value, with the axis parameter substituted into
/// the template configuration.  Grid points evaluate independently (parallel
/// when NLI_THREADS allows); results are returned in grid order.
std::vector<OptimizationResult> sweep(const NliConfig& base, Axis axis,
                                      const std::vector<double>& grid,
                                      Objective objective);

/// The template configuration with one axis value substituted.
NliConfig with_axis_value(const NliConfig& base, Axis axis, double value);

}  // namespace nli::opt
