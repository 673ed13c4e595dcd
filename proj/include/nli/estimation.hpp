#pragma once

// Statistical layer: the arccos fringe-inversion phase estimator, Monte Carlo
// validation of the error-propagation uncertainty (including its 1/p scaling
// with the number of averaged measurements), and the quantum Fisher
// information of the balanced lossless instrument.

#include <cstdint>

#include "nli/core.hpp"

namespace nli::est {

/// Photon-count sampler used by the Monte Carlo campaign.
enum class Sampler {
  ExactFock,       // draws from the truncated-basis output distribution
  GaussianApprox,  // normal law with the analytic mean and variance
};

/// Result of one Monte Carlo estimator campaign.
struct EstimatorRun {
  double true_phi = 0.0;
  long p = 0;           // measurements averaged per repetition
  double estimate = 0.0;  // mean of the per-repetition phase estimates
  double se_sq = 0.0;     // variance of the per-repetition estimates
  long repetitions = 0;
  std::uint64_t rng_seed = 0;
  long clamp_events = 0;  // arccos arguments that fell outside [-1, 1]
};

/// Detected-fringe parameters N(phi) = amplitude - contrast * cos(phi) for
/// the configured flavor (detection efficiencies folded in).  Shared by the
/// estimator and the validation suite so both invert the same fringe.
struct FringeParams {
  double amplitude = 0.0;
  double contrast = 0.0;
};

FringeParams detected_fringe(const NliConfig& cfg);

/// Phi = arccos((amplitude - n_bar) / contrast) on the principal branch.
/// Arguments outside [-1, 1] (finite-sample noise past a fringe extremum)
/// are clamped and, when a counter is supplied, counted.
double arccos_estimator(double amplitude, double contrast, double n_bar,
                        long* clamp_events = nullptr);

/// Repeats `repetitions` times: draw p counts at cfg.phi, average, invert
/// through arccos_estimator; reports the mean estimate and the empirical
/// variance across repetitions.  Deterministic for a fixed (seed, p,
/// repetitions) triple; repetitions use split seeds and may run in parallel.
EstimatorRun monte_carlo_uncertainty(const NliConfig& cfg, long p,
                                     long repetitions, Sampler sampler,
                                     std::uint64_t seed);

/// Quantum Fisher information of the balanced lossless instrument:
/// F = 2 U V with U = 1 + V.  Its inverse is the minimal uncertainty, so the
/// optimum saturates the quantum Cramer-Rao bound.
double quantum_fisher_information(double V);

}  // namespace nli::est
