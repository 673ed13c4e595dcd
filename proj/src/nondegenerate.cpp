#include "nli/nondegenerate.hpp"

#include <cmath>

#include "nli/mutation.hpp"

namespace nli::nd {

namespace {

constexpr double kStationaryTol = 1e-9;

void require_nondegenerate(const NliConfig& cfg, const char* op) {
  if (!is_nondegenerate(cfg.flavor)) {
    throw std::invalid_argument(std::string(op) +
                                ": config flavor must be nondegenerate");
  }
}

// Sum-port variance correction: the summed count is sub-thermal by
// (T1 + T2 - 2 T1 T2) V_A, the photons whose twin was lost in exactly one arm.
double sum_pair_break_term(const NliConfig& cfg) {
  const double t1 = cfg.loss_1.T, t2 = cfg.loss_2.T;
  return (t1 + t2 - 2.0 * t1 * t2) * cfg.gain_a.V;
}

// True when the 0/0 dark-fringe limit applies: balanced gains, lossless arms,
// phi at the dark fringe.
bool at_dark_fringe_limit(const NliConfig& cfg) {
  const double scale = 1.0 + cfg.v_max();
  return std::abs(cfg.gain_a.V - cfg.gain_b.V) <= 1e-9 * scale &&
         cfg.loss_1.R <= 1e-12 && cfg.loss_2.R <= 1e-12 &&
         std::cos(cfg.phi) > 0.0;
}

}  // namespace

double port_eta(const NliConfig& cfg, Port port) {
  switch (port) {
    case Port::One:
      return cfg.detection_1.eta;
    case Port::Two:
      return cfg.detection_2.eta;
    case Port::Sum:
    default:
      throw std::invalid_argument("port_eta: Sum uses both detectors");
  }
}

PortSignal port_signal(const NliConfig& cfg, Port port) {
  require_nondegenerate(cfg, "port_signal");
  const auto& k = fault::knobs();
  const double va = cfg.gain_a.V, ua = cfg.gain_a.U;
  const double vb = cfg.gain_b.V, ub = cfg.gain_b.U;
  const double t1 = cfg.loss_1.T, t2 = cfg.loss_2.T;
  const double cross = k.port_amplitude * (t1 + t2) * va * vb;
  const double contrast =
      k.port_contrast * 2.0 * std::sqrt(t1 * t2 * ua * va * ub * vb);
  PortSignal s;
  s.port = port;
  switch (port) {
    case Port::One:
      s.amplitude = t1 * va + vb + cross;
      s.contrast = contrast;
      break;
    case Port::Two:
      s.amplitude = t2 * va + vb + cross;
      s.contrast = contrast;
      break;
    case Port::Sum:
      s.amplitude = (t1 + t2) * va + 2.0 * vb + 2.0 * cross;
      s.contrast = 2.0 * contrast;
      break;
  }
  return s;
}

double port_mean(const NliConfig& cfg, Port port) {
  const PortSignal s = port_signal(cfg, port);
  return s.amplitude - s.contrast * std::cos(cfg.phi);
}

double port_mean_slope(const NliConfig& cfg, Port port) {
  return port_signal(cfg, port).contrast * std::sin(cfg.phi);
}

double port_variance(const NliConfig& cfg, Port port) {
  require_nondegenerate(cfg, "port_variance");
  if (port == Port::Sum) {
    const double n = port_mean(cfg, Port::Sum);
    return n * (2.0 + n) - fault::knobs().sum_var_corr * sum_pair_break_term(cfg);
  }
  const double n = port_mean(cfg, port);
  return n * (1.0 + n);
}

double port_mean_detected(const NliConfig& cfg, Port port) {
  if (port == Port::Sum) {
    return cfg.detection_1.eta * port_mean(cfg, Port::One) +
           cfg.detection_2.eta * port_mean(cfg, Port::Two);
  }
  return port_eta(cfg, port) * port_mean(cfg, port);
}

double port_variance_detected(const NliConfig& cfg, Port port) {
  require_nondegenerate(cfg, "port_variance_detected");
  if (port == Port::Sum) {
    const double e1 = cfg.detection_1.eta, e2 = cfg.detection_2.eta;
    const double n1 = port_mean(cfg, Port::One);
    const double n2 = port_mean(cfg, Port::Two);
    const double s = e1 * n1 + e2 * n2;
    return s * (1.0 + s) + fault::knobs().sum_det_corr * e1 * e2 *
                               ((n1 + n2) - sum_pair_break_term(cfg));
  }
  // Detected single-port counts remain exactly thermal-like.
  const double n_eta = port_mean_detected(cfg, port);
  return n_eta * (1.0 + n_eta);
}

double port_phase_uncertainty(const NliConfig& cfg, Port port, bool detected) {
  require_nondegenerate(cfg, "port_phase_uncertainty");
  const PortSignal sig = port_signal(cfg, port);
  const double sin_phi = std::sin(cfg.phi);

  double slope, var;
  if (port == Port::Sum && detected) {
    const double e1 = cfg.detection_1.eta, e2 = cfg.detection_2.eta;
    // contrast of the detected sum: each detected port scales by its eta and
    // the two ports share one bare contrast.
    slope = 0.5 * (e1 + e2) * sig.contrast * sin_phi;
    var = port_variance_detected(cfg, port);
  } else if (detected) {
    slope = port_eta(cfg, port) * sig.contrast * sin_phi;
    var = port_variance_detected(cfg, port);
  } else {
    slope = sig.contrast * sin_phi;
    var = port_variance(cfg, port);
  }

  if (std::abs(sin_phi) < kStationaryTol || slope == 0.0) {
    if (at_dark_fringe_limit(cfg) && sig.contrast > 0.0) {
      // L'Hopital limits at the dark fringe, where mean and variance vanish
      // quadratically together with the squared slope.
      const double kj = port_signal(cfg, Port::One).contrast;
      if (port == Port::Sum) {
        const double e1 = cfg.detection_1.eta, e2 = cfg.detection_2.eta;
        if (!detected) return 1.0 / (2.0 * kj);
        return (0.5 * (e1 + e2) + e1 * e2) / ((e1 + e2) * (e1 + e2) * kj);
      }
      const double bare = 1.0 / (2.0 * kj);
      if (!detected) return bare;
      return bare / port_eta(cfg, port);
    }
    throw divergent_sensitivity_error(
        "port_phase_uncertainty: d N/d phi vanishes at phi = " +
        std::to_string(cfg.phi) + " with nonzero variance");
  }
  return var / (slope * slope);
}

double min_port_uncertainty_lossless(double va, double vb) {
  const double vmin = std::min(va, vb);
  if (vmin <= 0.0) {
    throw no_interference_error(
        "min_port_uncertainty_lossless: V_min must be > 0");
  }
  return fault::knobs().port_opt_uncertainty /
         (4.0 * (1.0 + vmin) * vmin);
}

}  // namespace nli::nd
