#pragma once

// Independent verification engine, part two: brute-force simulation in a
// truncated number basis.  The circuit is applied as explicit unitaries
// (matrix exponentials of the quadratic generators) to a multimode state
// vector with vacuum loss ancillas, so the only approximation is the cutoff.
//
// Basis bookkeeping: each squeezed/port mode keeps levels 0..cutoff plus a
// small internal pad that absorbs edge aliasing; reported moments use the
// padded basis while the truncation deficit is the probability mass found
// above the nominal cutoff.  Loss ancillas are capped independently and
// their top-level occupancy is monitored the same way.
//
// Like the Bogoliubov engine, this module consumes the complex circuit
// parameters (gain phases, loss transmittance phases) and ignores cfg.phi;
// use realize_phase() to point the circuit at an analytic working phase.
//
// Nondegenerate detection loss is applied as exact binomial thinning of the
// simulated two-port distribution rather than via two further ancilla modes,
// which keeps the state-vector dimension affordable; the thinning relations
// are verified independently by the Bogoliubov engine.

#include <cstdint>
#include <vector>

#include "nli/core.hpp"

namespace nli::fock {

/// Truncation diagnostics of one simulation.
struct TruncationInfo {
  double deficit = 0.0;       // mass above the nominal cutoff on port mode(s)
  double ancilla_leak = 0.0;  // worst top-two-level mass across ancillas
};

/// Mean and variance of the detected count observable (flavor-selected port
/// or summed ports, detection loss included).  Throws truncation_error when
/// the deficit or the ancilla leak exceeds 1e-8.
PhotonStatistics fock_moments(const NliConfig& cfg, int cutoff);
PhotonStatistics fock_moments(const NliConfig& cfg, int cutoff,
                              TruncationInfo& info);

/// Probability distribution of the detected count observable, renormalized
/// over the retained basis (index = photon count).
std::vector<double> count_distribution(const NliConfig& cfg, int cutoff);

/// Draw photon-count samples of the detected observable by inverse-CDF
/// lookup on count_distribution.
std::vector<long> sample_photon_counts(const NliConfig& cfg, int cutoff,
                                       long shots, std::uint64_t seed);

}  // namespace nli::fock
