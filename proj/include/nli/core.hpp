#pragma once

// Shared domain types for the nonlinear-interferometer (NLI) library: crystal
// gain settings, loss channels, detection efficiencies, and the assembled
// interferometer configuration.  Two coherently pumped nonlinear crystals A
// (source) and B (analyzer) enclose an internal loss element; a detection loss
// element sits in front of the detector(s).
//
// Two parameterizations coexist: the analytics modules work with real mean
// photon gains (V = sinh^2 r, U = 1 + V) and a single interference phase phi,
// while the verification engine works with the complex Bogoliubov coefficients
// u, v, t that generate that phase.  effective_phase() connects the two.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace nli {

using complex = std::complex<double>;

constexpr double pi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Error taxonomy
// ---------------------------------------------------------------------------

/// Phase derivative vanishes while the variance does not: Δφ² diverges.
class divergent_sensitivity_error : public std::domain_error {
 public:
  explicit divergent_sensitivity_error(const std::string& what)
      : std::domain_error(what) {}
};

/// No interference fringe exists (e.g. a crystal is switched off).
class no_interference_error : public std::domain_error {
 public:
  explicit no_interference_error(const std::string& what)
      : std::domain_error(what) {}
};

/// A truncated-basis simulation leaked more probability than tolerated.
class truncation_error : public std::runtime_error {
 public:
  explicit truncation_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// An internal consistency invariant failed (corrupt map, bad workspace).
class integrity_error : public std::runtime_error {
 public:
  explicit integrity_error(const std::string& what)
      : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Value types
// ---------------------------------------------------------------------------

/// One crystal's amplification: V = sinh^2 r photons per mode from vacuum,
/// U = cosh^2 r = 1 + V.  phase_u / phase_v are the arguments of the complex
/// Bogoliubov coefficients u = e^{i phase_u} cosh r, v = e^{i phase_v} sinh r.
struct GainSetting {
  double squeeze_r = 0.0;
  double V = 0.0;
  double U = 1.0;
  double phase_u = 0.0;
  double phase_v = 0.0;

  complex u() const { return std::polar(std::cosh(squeeze_r), phase_u); }
  complex v() const { return std::polar(std::sinh(squeeze_r), phase_v); }
};

/// Construct a gain setting from the mean photon number V >= 0 (zero phases).
GainSetting gain_from_v(double V);

/// Construct a gain setting from the squeeze parameter r >= 0 (zero phases).
GainSetting gain_from_r(double r);

/// A beam-splitter loss element: field transmittance t (complex, phase
/// retained), intensity transmittance T = |t|^2, reflectivity R = 1 - T.
struct LossChannel {
  complex t{1.0, 0.0};
  double T = 1.0;
  double R = 0.0;
};

/// Loss channel from an intensity transmittance T in [0, 1] (real positive t).
LossChannel loss_from_T(double T);

/// Loss channel from a complex field transmittance with |t| <= 1.
LossChannel loss_from_t(complex t);

/// Detector efficiency: transmittance eta in (0, 1] of the loss element in
/// front of the detector.
struct DetectionEfficiency {
  double eta = 1.0;
};

DetectionEfficiency detection_from_eta(double eta);

/// Which output signal is observed.
enum class Flavor {
  Degenerate,          // single-mode squeezers, one output port
  NondegeneratePort1,  // two-mode squeezers, signal port
  NondegeneratePort2,  // two-mode squeezers, idler port
  NondegenerateSum,    // two-mode squeezers, summed ports
};

bool is_nondegenerate(Flavor f);

/// Full interferometer configuration.  The degenerate flavor uses loss_1 and
/// detection_1 only; nondegenerate flavors carry one internal loss per arm,
/// and the sum flavor a detection efficiency per port.
struct NliConfig {
  GainSetting gain_a;  // source crystal
  GainSetting gain_b;  // analyzer crystal
  Flavor flavor = Flavor::Degenerate;
  LossChannel loss_1;  // degenerate internal loss, or arm-1 loss
  LossChannel loss_2;  // arm-2 loss (nondegenerate only)
  DetectionEfficiency detection_1;
  DetectionEfficiency detection_2;  // second port (sum flavor only)
  double phi = 0.0;                 // interference phase

  // Derived accessors used throughout the closed forms.
  double v_t() const { return loss_1.T * gain_a.V; }  // transmitted source gain
  double u_t() const { return 1.0 + v_t(); }
  double v_min() const { return std::min(gain_a.V, gain_b.V); }
  double v_max() const { return std::max(gain_a.V, gain_b.V); }
  double u_min() const { return 1.0 + v_min(); }
  double u_max() const { return 1.0 + v_max(); }
};

/// Convenience factories enforcing the per-flavor channel-count invariants.
NliConfig make_degenerate(double va, double vb, double T, double eta,
                          double phi);
NliConfig make_nondegenerate(Flavor flavor, double va, double vb, double T1,
                             double T2, double eta1, double eta2, double phi);

/// Validate the per-flavor invariants; throws std::invalid_argument.
void validate_config(const NliConfig& cfg);

/// First and second moments of a photon-number observable.
struct PhotonStatistics {
  double mean_n = 0.0;
  double variance = 0.0;

  /// N / ΔN²; defined as 0 at the dark-fringe point N = ΔN² = 0.
  double inverse_fano() const {
    if (variance > 0.0) return mean_n / variance;
    return 0.0;
  }
};

/// Summary of an optimal working point.
struct SensitivityReport {
  double phi_min = 0.0;
  double delta_phi_sq = 0.0;           // without detection loss
  double delta_phi_sq_detected = 0.0;  // with detection loss
  double n_at_min = 0.0;
  double limiting_v = 0.0;  // the gain that limits the sensitivity
};

// ---------------------------------------------------------------------------
// Phase composition
// ---------------------------------------------------------------------------

/// The interference phase generated by a degenerate circuit with complex
/// coefficients: phi = arg(u_A v_A u_B v_B^* t^2) + pi, folded to [0, 2 pi).
/// The +pi offset places the balanced dark fringe at phi = 0.
double effective_phase(const GainSetting& gain_a, const GainSetting& gain_b,
                       const LossChannel& loss);

/// Nondegenerate counterpart: phi = arg(u_A u_B v_A v_B^* t_1 t_2) + pi.
double effective_phase(const GainSetting& gain_a, const GainSetting& gain_b,
                       const LossChannel& loss_1, const LossChannel& loss_2);

/// Canonical complex realization of the analytic phase: a copy of cfg whose
/// coefficient phases are zero except the analyzer's phase_v = pi - phi and
/// whose loss transmittances are real, so that effective_phase(realized
/// parameters) equals cfg.phi.  This is how the circuit engines are pointed
/// at a requested working phase.
NliConfig realize_phase(const NliConfig& cfg);

}  // namespace nli
