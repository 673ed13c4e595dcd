#include "nli/core.hpp"

#include <cmath>

namespace nli {

GainSetting gain_from_v(double V) {
  if (!(V >= 0.0)) {
    throw std::domain_error("gain_from_v: V must be >= 0, got " +
                            std::to_string(V));
  }
  GainSetting g;
  g.V = V;
  g.U = 1.0 + V;
  g.squeeze_r = std::asinh(std::sqrt(V));
  return g;
}

GainSetting gain_from_r(double r) {
  if (!(r >= 0.0)) {
    throw std::domain_error("gain_from_r: r must be >= 0, got " +
                            std::to_string(r));
  }
  GainSetting g;
  g.squeeze_r = r;
  const double s = std::sinh(r);
  g.V = s * s;
  g.U = 1.0 + g.V;
  return g;
}

LossChannel loss_from_T(double T) {
  if (!(T >= 0.0 && T <= 1.0)) {
    throw std::domain_error("loss_from_T: T must lie in [0,1], got " +
                            std::to_string(T));
  }
  LossChannel l;
  l.t = complex{std::sqrt(T), 0.0};
  l.T = T;
  l.R = 1.0 - T;
  return l;
}

LossChannel loss_from_t(complex t) {
  const double T = std::norm(t);
  if (T > 1.0 + 1e-12) {
    throw std::domain_error("loss_from_t: |t| must be <= 1");
  }
  LossChannel l;
  l.t = t;
  l.T = std::min(T, 1.0);
  l.R = 1.0 - l.T;
  return l;
}

DetectionEfficiency detection_from_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::domain_error("detection_from_eta: eta must lie in (0,1], got " +
                            std::to_string(eta));
  }
  return DetectionEfficiency{eta};
}

bool is_nondegenerate(Flavor f) { return f != Flavor::Degenerate; }

NliConfig make_degenerate(double va, double vb, double T, double eta,
                          double phi) {
  NliConfig cfg;
  cfg.gain_a = gain_from_v(va);
  cfg.gain_b = gain_from_v(vb);
  cfg.flavor = Flavor::Degenerate;
  cfg.loss_1 = loss_from_T(T);
  cfg.detection_1 = detection_from_eta(eta);
  cfg.phi = phi;
  return cfg;
}

NliConfig make_nondegenerate(Flavor flavor, double va, double vb, double T1,
                             double T2, double eta1, double eta2, double phi) {
  if (!is_nondegenerate(flavor)) {
    throw std::invalid_argument(
        "make_nondegenerate: flavor must be a nondegenerate variant");
  }
  NliConfig cfg;
  cfg.gain_a = gain_from_v(va);
  cfg.gain_b = gain_from_v(vb);
  cfg.flavor = flavor;
  cfg.loss_1 = loss_from_T(T1);
  cfg.loss_2 = loss_from_T(T2);
  cfg.detection_1 = detection_from_eta(eta1);
  cfg.detection_2 = detection_from_eta(eta2);
  cfg.phi = phi;
  return cfg;
}

void validate_config(const NliConfig& cfg) {
  if (cfg.gain_a.V < 0.0 || cfg.gain_b.V < 0.0) {
    throw std::invalid_argument("config: negative gain");
  }
  if (std::abs(cfg.gain_a.U - cfg.gain_a.V - 1.0) > 1e-9 ||
      std::abs(cfg.gain_b.U - cfg.gain_b.V - 1.0) > 1e-9) {
    throw std::invalid_argument("config: U - V = 1 violated");
  }
  if (cfg.loss_1.T < 0.0 || cfg.loss_1.T > 1.0) {
    throw std::invalid_argument("config: loss transmittance out of range");
  }
  if (is_nondegenerate(cfg.flavor) &&
      (cfg.loss_2.T < 0.0 || cfg.loss_2.T > 1.0)) {
    throw std::invalid_argument("config: arm-2 transmittance out of range");
  }
  if (!(cfg.detection_1.eta > 0.0 && cfg.detection_1.eta <= 1.0)) {
    throw std::invalid_argument("config: detection efficiency out of range");
  }
  if ((cfg.flavor == Flavor::NondegenerateSum ||
       cfg.flavor == Flavor::NondegeneratePort2) &&
      !(cfg.detection_2.eta > 0.0 && cfg.detection_2.eta <= 1.0)) {
    throw std::invalid_argument(
        "config: second detection efficiency out of range");
  }
}

namespace {

double fold_to_two_pi(double phi) {
  phi = std::fmod(phi, 2.0 * pi);
  if (phi < 0.0) phi += 2.0 * pi;
  // fmod can return exactly 2*pi after the negative fold-up at rounding edge
  if (phi >= 2.0 * pi) phi -= 2.0 * pi;
  return phi;
}

}  // namespace

double effective_phase(const GainSetting& gain_a, const GainSetting& gain_b,
                       const LossChannel& loss) {
  const complex arg_of = gain_a.u() * gain_a.v() * gain_b.u() *
                         std::conj(gain_b.v()) * loss.t * loss.t;
  return fold_to_two_pi(std::arg(arg_of) + pi);
}

double effective_phase(const GainSetting& gain_a, const GainSetting& gain_b,
                       const LossChannel& loss_1, const LossChannel& loss_2) {
  const complex arg_of = gain_a.u() * gain_b.u() * gain_a.v() *
                         std::conj(gain_b.v()) * loss_1.t * loss_2.t;
  return fold_to_two_pi(std::arg(arg_of) + pi);
}

NliConfig realize_phase(const NliConfig& cfg) {
  NliConfig out = cfg;
  out.gain_a.phase_u = 0.0;
  out.gain_a.phase_v = 0.0;
  out.gain_b.phase_u = 0.0;
  out.gain_b.phase_v = pi - cfg.phi;
  out.loss_1 = loss_from_T(cfg.loss_1.T);
  out.loss_2 = loss_from_T(cfg.loss_2.T);
  return out;
}

}  // namespace nli
