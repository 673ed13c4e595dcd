#pragma once

// Closed-form photon statistics and phase sensitivity for the nondegenerate
// (two-mode) nonlinear interferometer.  Each crystal produces signal/idler
// pairs; the arms pass independent internal loss elements (transmittances
// T_1, T_2) and are observed either per port or as the summed count.
//
// Every port signal is a fringe N_j(phi) = amplitude_j - contrast_j cos phi;
// per-port photon counts are exactly thermal-like, Var_j = N_j (1 + N_j),
// while the summed count carries cross-port correlations.

#include "nli/core.hpp"

namespace nli::nd {

enum class Port { One, Two, Sum };

/// Fringe parameters of one observed signal.
struct PortSignal {
  double amplitude = 0.0;
  double contrast = 0.0;
  Port port = Port::One;
};

/// Detector efficiency assigned to a port (Sum uses both).
double port_eta(const NliConfig& cfg, Port port);

/// Amplitude and contrast of the requested port's fringe.
PortSignal port_signal(const NliConfig& cfg, Port port);

/// Mean photon number N_j(phi) before detection loss.
double port_mean(const NliConfig& cfg, Port port);

/// d N_j / d phi.
double port_mean_slope(const NliConfig& cfg, Port port);

/// Photon-number variance before detection loss.
double port_variance(const NliConfig& cfg, Port port);

/// Mean detected photon number (detector efficiencies applied).
double port_mean_detected(const NliConfig& cfg, Port port);

/// Detected photon-number variance.  For single ports this satisfies
/// Var_eta = eta^2 Var + eta (1-eta) N; for the summed count that
/// decomposition holds only when both detectors are equally efficient.
double port_variance_detected(const NliConfig& cfg, Port port);

/// Phase uncertainty (squared) by error propagation for the chosen port,
/// optionally including detection loss.  Removable 0/0 points (balanced,
/// lossless, dark fringe) return their analytic limits; other stationary
/// phases throw divergent_sensitivity_error.
double port_phase_uncertainty(const NliConfig& cfg, Port port, bool detected);

/// Minimal (squared) lossless port uncertainty: 1/(4 U_min V_min), the same
/// for every port and half the degenerate optimum.
double min_port_uncertainty_lossless(double va, double vb);

}  // namespace nli::nd
