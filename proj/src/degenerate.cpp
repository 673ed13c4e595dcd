#include "nli/degenerate.hpp"

#include <cmath>

#include "nli/mutation.hpp"

namespace nli::deg {

namespace {

// Tolerance below which |sin phi| counts as a fringe extreme.
constexpr double kStationaryTol = 1e-9;

void require_degenerate(const NliConfig& cfg, const char* op) {
  if (cfg.flavor != Flavor::Degenerate) {
    throw std::invalid_argument(std::string(op) +
                                ": config flavor must be Degenerate");
  }
}

// Amplitude and contrast of the fringe N(phi) = amplitude - contrast cos phi.
struct Fringe {
  double amplitude;
  double contrast;
};

Fringe fringe(const NliConfig& cfg) {
  const auto& k = fault::knobs();
  const double va = cfg.gain_a.V, ua = cfg.gain_a.U;
  const double vb = cfg.gain_b.V, ub = cfg.gain_b.U;
  const double T = cfg.loss_1.T;
  const double amplitude =
      k.deg_mean_transmitted * T * va + vb + 2.0 * T * va * vb;
  const double contrast =
      k.deg_mean_contrast * 2.0 * T * std::sqrt(ua * va * ub * vb);
  return {amplitude, contrast};
}

// True when the 0/0 dark-fringe limit applies: balanced gains, no internal
// loss, and phi at (a multiple of 2 pi from) the dark fringe.
bool at_dark_fringe_limit(const NliConfig& cfg) {
  const double scale = 1.0 + cfg.v_max();
  return std::abs(cfg.gain_a.V - cfg.gain_b.V) <= 1e-9 * scale &&
         cfg.loss_1.R <= 1e-12 && std::cos(cfg.phi) > 0.0;
}

}  // namespace

LossyOptimumTerms lossy_optimum_terms(double va, double vb, double T) {
  LossyOptimumTerms terms;
  terms.v_t = T * va;
  terms.u_t = 1.0 + terms.v_t;
  terms.script_l = (1.0 - T) * terms.v_t * (1.0 + 8.0 * (1.0 + vb) * vb);
  return terms;
}

double photon_number(const NliConfig& cfg) {
  require_degenerate(cfg, "photon_number");
  const Fringe f = fringe(cfg);
  return f.amplitude - f.contrast * std::cos(cfg.phi);
}

double photon_variance(const NliConfig& cfg) {
  require_degenerate(cfg, "photon_variance");
  const auto& k = fault::knobs();
  const double n = photon_number(cfg);
  const double loss_term = cfg.loss_1.R * cfg.loss_1.T * cfg.gain_a.V;
  return k.deg_var_thermal * 2.0 * n * (1.0 + n) - k.deg_var_loss * loss_term;
}

double photon_number_slope(const NliConfig& cfg) {
  require_degenerate(cfg, "photon_number_slope");
  return fringe(cfg).contrast * std::sin(cfg.phi);
}

PhotonStatistics detected_statistics(const NliConfig& cfg) {
  require_degenerate(cfg, "detected_statistics");
  const double eta = cfg.detection_1.eta;
  const double n = photon_number(cfg);
  const double var = photon_variance(cfg);
  return {eta * n, eta * eta * var + eta * (1.0 - eta) * n};
}

double phase_uncertainty(const NliConfig& cfg) {
  require_degenerate(cfg, "phase_uncertainty");
  const double slope = photon_number_slope(cfg);
  if (std::abs(std::sin(cfg.phi)) < kStationaryTol || slope == 0.0) {
    if (at_dark_fringe_limit(cfg)) {
      const double V = cfg.gain_a.V;
      if (V <= 0.0) {
        throw no_interference_error(
            "phase_uncertainty: no fringe with both crystals off");
      }
      return 1.0 / (2.0 * (1.0 + V) * V);
    }
    throw divergent_sensitivity_error(
        "phase_uncertainty: d N/d phi vanishes at phi = " +
        std::to_string(cfg.phi) + " with nonzero variance");
  }
  const double var = photon_variance(cfg);
  return var / (slope * slope);
}

double phase_uncertainty_detected(const NliConfig& cfg) {
  require_degenerate(cfg, "phase_uncertainty_detected");
  const auto& k = fault::knobs();
  const double eta = cfg.detection_1.eta;
  const double bare = phase_uncertainty(cfg);
  const double n = photon_number(cfg);
  const double var = photon_variance(cfg);
  // Inverse Fano factor, with its analytic limit at the dark fringe where
  // N and the variance vanish together.
  double inv_fano;
  if (var > 0.0 && std::abs(std::sin(cfg.phi)) >= kStationaryTol) {
    inv_fano = n / var;
  } else {
    inv_fano = 1.0 / (2.0 + 2.0 * n);
  }
  return bare * (1.0 + k.det_penalty * (1.0 - eta) / eta * inv_fano);
}

double detection_loss_deviation(double V, double eta, double phi) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::domain_error("detection_loss_deviation: eta must be in (0,1]");
  }
  if (V < 0.0) {
    throw std::domain_error("detection_loss_deviation: V must be >= 0");
  }
  const auto& k = fault::knobs();
  const double uv2 = 2.0 * (1.0 + V) * V;
  return k.det_deviation * (1.0 - eta) / (2.0 * eta) /
         (1.0 + uv2 * (1.0 - std::cos(phi)));
}

double optimal_phase_lossless(double va, double vb) {
  const double vmin = std::min(va, vb), vmax = std::max(va, vb);
  if (vmin <= 0.0) {
    throw no_interference_error(
        "optimal_phase_lossless: both crystals must be active (V_min > 0)");
  }
  const double umin = 1.0 + vmin, umax = 1.0 + vmax;
  const double arg = (vmax * umax - vmin * umin) /
                     ((umax + vmax) * (umax + vmax) * vmin * umin);
  return std::atan(std::sqrt(fault::knobs().opt_phase_arg * arg));
}

double optimal_photon_number_lossless(double va, double vb) {
  const double vmin = std::min(va, vb), vmax = std::max(va, vb);
  if (vmin <= 0.0) {
    throw no_interference_error(
        "optimal_photon_number_lossless: V_min must be > 0");
  }
  return fault::knobs().opt_n_lossless * (vmax - vmin) / (1.0 + 2.0 * vmin);
}

double min_phase_uncertainty_lossless(double va, double vb) {
  const double vmin = std::min(va, vb);
  if (vmin <= 0.0) {
    throw no_interference_error(
        "min_phase_uncertainty_lossless: V_min must be > 0");
  }
  return fault::knobs().opt_dphi_lossless / (2.0 * (1.0 + vmin) * vmin);
}

namespace {

// Exact photon number at the lossy stationary point, no fault knob applied.
// The uncertainty is a ratio of quadratics in cos phi, so its minimum solves
// a quadratic whose root rearranges to this single-radical expression.
double lossy_optimum_n_raw(double va, double vb, double T,
                           const char* caller) {
  const LossyOptimumTerms w = lossy_optimum_terms(va, vb, T);
  if (w.v_t <= 0.0 || vb <= 0.0) {
    throw no_interference_error(
        std::string(caller) +
        ": transmitted gain and analyzer gain must be > 0");
  }
  const double ub = 1.0 + vb;
  const double R = 1.0 - T;
  const double d = vb - w.v_t;
  const double L = w.script_l;
  const double inner = 4.0 * d * d * (ub + w.v_t) * (ub + w.v_t) +
                       4.0 * ub * vb * L +
                       4.0 * R * w.v_t * (2.0 * ub * vb - w.u_t * w.v_t) +
                       L * L;
  return (2.0 * d * d + L + std::sqrt(inner)) /
         (2.0 * (ub + vb) * (w.u_t + w.v_t));
}

}  // namespace

double optimal_photon_number_lossy(double va, double vb, double T) {
  return fault::knobs().opt_n_lossy *
         lossy_optimum_n_raw(va, vb, T, "optimal_photon_number_lossy");
}

double min_phase_uncertainty_lossy(double va, double vb, double T) {
  const double n =
      lossy_optimum_n_raw(va, vb, T, "min_phase_uncertainty_lossy");
  const LossyOptimumTerms w = lossy_optimum_terms(va, vb, T);
  const double ub = 1.0 + vb;
  const double R = 1.0 - T;
  const double numerator = n * (ub + vb) * (w.u_t + w.v_t) + ub * w.v_t +
                           w.u_t * vb - R * w.v_t;
  return fault::knobs().opt_dphi_lossy * numerator /
         (4.0 * ub * vb * (w.u_t - R) * w.v_t);
}

}  // namespace nli::deg
