#pragma once

// Fault injection for validation self-tests (mutation testing).  Every closed
// form in the analytics modules routes one of its constants through a
// multiplicative knob, all of which default to exactly 1.0.  The validation
// suite perturbs one knob at a time and asserts that at least one independent
// cross-check (Gaussian-moment oracle, numeric optimizer, algebraic identity)
// catches the perturbation.  Production behavior is untouched: with every
// knob at 1.0 the formulas are bit-identical to their unperturbed versions.

#include <string>
#include <vector>

namespace nli::fault {

struct Knobs {
  // degenerate mean and variance
  double deg_mean_transmitted = 1.0;  // transmitted-source term of the mean
  double deg_mean_contrast = 1.0;     // interference term of the mean
  double deg_var_thermal = 1.0;       // 2N(1+N) term of the variance
  double deg_var_loss = 1.0;          // internal-loss subtraction of the variance
  // detection loss
  double det_penalty = 1.0;    // (1-eta)/eta factor in detected uncertainty
  double det_deviation = 1.0;  // balanced detection-loss deviation scale
  // optimal working point, lossless and lossy
  double opt_phase_arg = 1.0;     // argument of the optimal-phase arctan
  double opt_n_lossless = 1.0;    // photon number at the lossless optimum
  double opt_dphi_lossless = 1.0; // minimal uncertainty, lossless
  double opt_n_lossy = 1.0;       // photon number at the lossy optimum
  double opt_dphi_lossy = 1.0;    // minimal uncertainty under internal loss
  // nondegenerate ports
  double port_amplitude = 1.0;  // cross-gain term of the port amplitude
  double port_contrast = 1.0;   // port contrast scale
  double sum_var_corr = 1.0;    // sum-port variance correction term
  double sum_det_corr = 1.0;    // sum-port detected-variance correction term
  double port_opt_uncertainty = 1.0;  // minimal port uncertainty, lossless
  // estimation layer
  double qfi_scale = 1.0;     // Fisher-information scale
  double est_contrast = 1.0;  // phase-estimator contrast scale
};

/// The process-wide knob set consulted by the analytics formulas.
Knobs& knobs();

/// Names of all registered knobs, in a stable order.
const std::vector<std::string>& list();

/// Set one knob by name; throws std::invalid_argument for unknown names.
void set(const std::string& name, double factor);

/// Read one knob by name; throws std::invalid_argument for unknown names.
double get(const std::string& name);

/// Restore every knob to 1.0.
void reset();

/// Apply "name=factor[,name=factor...]" from the NLI_MUTATE environment
/// variable, if present.  Returns the number of knobs set.
int apply_from_env();

}  // namespace nli::fault
