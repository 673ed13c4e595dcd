#pragma once

// Closed-form photon statistics and phase sensitivity for the degenerate
// (single-mode) nonlinear interferometer: mean photon number and variance at
// the output of the analyzer crystal, phase uncertainty via error propagation
// with and without detection loss, and the optimal working point with and
// without internal loss.
//
// Conventions: the interference phase phi has its dark fringe at phi = 0 for
// the balanced lossless instrument; all formulas are even in phi.

#include "nli/core.hpp"

namespace nli::deg {

/// Intermediate quantities of the internal-loss optimum: the transmitted
/// source gain v_t = T * V_A, its conjugate u_t = 1 + v_t, and the
/// loss-dependent term script_l = R * v_t * (1 + 8 * U_B * V_B).
struct LossyOptimumTerms {
  double v_t = 0.0;
  double u_t = 1.0;
  double script_l = 0.0;
};

LossyOptimumTerms lossy_optimum_terms(double va, double vb, double T);

/// Mean detected photon number N(phi) before detection loss.
double photon_number(const NliConfig& cfg);

/// Photon-number variance before detection loss.
double photon_variance(const NliConfig& cfg);

/// d N / d phi; vanishes at the fringe extremes.
double photon_number_slope(const NliConfig& cfg);

/// Mean and variance of the detected photon number after a detector of
/// efficiency eta: N_eta = eta N, Var_eta = eta^2 Var + eta (1-eta) N.
PhotonStatistics detected_statistics(const NliConfig& cfg);

/// Phase uncertainty (squared) by error propagation, no detection loss.
/// At the removable 0/0 point (balanced, lossless, phi = 0) returns the
/// analytic dark-fringe limit 1/(2UV); at any other stationary phase throws
/// divergent_sensitivity_error.
double phase_uncertainty(const NliConfig& cfg);

/// Phase uncertainty (squared) including detection loss:
/// Δφ²_eta = Δφ² (1 + (1-eta)/eta · N/ΔN²), with the inverse Fano factor
/// replaced by its analytic limit 1/(2+2N) at the dark fringe.
double phase_uncertainty_detected(const NliConfig& cfg);

/// Relative deviation (Δφ²_eta / Δφ² − 1) for the balanced lossless
/// instrument: (1-eta)/(2 eta) / (1 + 2UV(1-cos phi)).
double detection_loss_deviation(double V, double eta, double phi);

/// Phase of minimal uncertainty for the lossless unbalanced instrument
/// (positive branch; the mirrored phase -phi_min is equally optimal).
double optimal_phase_lossless(double va, double vb);

/// Mean photon number at the lossless optimum: (V_max-V_min)/(U_min+V_min).
double optimal_photon_number_lossless(double va, double vb);

/// Minimal (squared) phase uncertainty without loss: 1/(2 U_min V_min).
double min_phase_uncertainty_lossless(double va, double vb);

/// Mean photon number at the minimal-uncertainty phase under internal loss
/// (transmittance T between the crystals).  Exact closed form; the numeric
/// optimizer cross-checks it in the validation suite.
double optimal_photon_number_lossy(double va, double vb, double T);

/// Minimal (squared) phase uncertainty under internal loss, no detection loss.
double min_phase_uncertainty_lossy(double va, double vb, double T);

}  // namespace nli::deg
