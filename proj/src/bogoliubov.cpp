#include "nli/bogoliubov.hpp"

#include <cmath>

namespace nli::gauss {

namespace {

// Compose elem onto map: new = elem applied after map.  With
// b = E_A a' + E_alpha a'^dag and a' = M_A a + M_alpha a^dag,
// the coefficients of a / a^dag combine as below.
void compose_onto(BogoliubovMap& map, const Eigen::MatrixXcd& elem_A,
                  const Eigen::MatrixXcd& elem_alpha) {
  const Eigen::MatrixXcd A_new =
      elem_A * map.A + elem_alpha * map.alpha.conjugate();
  const Eigen::MatrixXcd alpha_new =
      elem_A * map.alpha + elem_alpha * map.A.conjugate();
  map.A = A_new;
  map.alpha = alpha_new;
}

void check_mode(const BogoliubovMap& map, int mode, const char* op) {
  if (mode < 0 || mode >= map.modes()) {
    throw std::invalid_argument(std::string(op) + ": mode index " +
                                std::to_string(mode) + " out of range");
  }
}

}  // namespace

BogoliubovMap identity_map(int n) {
  if (n <= 0) {
    throw std::invalid_argument("identity_map: need at least one mode");
  }
  BogoliubovMap map;
  map.A = Eigen::MatrixXcd::Identity(n, n);
  map.alpha = Eigen::MatrixXcd::Zero(n, n);
  map.mode_labels.assign(static_cast<std::size_t>(n), "mode");
  return map;
}

void apply_squeezer(BogoliubovMap& map, int mode, const GainSetting& gain) {
  check_mode(map, mode, "apply_squeezer");
  const int n = map.modes();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd al = Eigen::MatrixXcd::Zero(n, n);
  A(mode, mode) = gain.u();
  al(mode, mode) = gain.v();
  compose_onto(map, A, al);
}

void apply_two_mode_squeezer(BogoliubovMap& map, int m1, int m2,
                             const GainSetting& gain) {
  check_mode(map, m1, "apply_two_mode_squeezer");
  check_mode(map, m2, "apply_two_mode_squeezer");
  if (m1 == m2) {
    throw std::invalid_argument("apply_two_mode_squeezer: modes must differ");
  }
  const int n = map.modes();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd al = Eigen::MatrixXcd::Zero(n, n);
  A(m1, m1) = gain.u();
  A(m2, m2) = gain.u();
  al(m1, m2) = gain.v();
  al(m2, m1) = gain.v();
  compose_onto(map, A, al);
}

void apply_beam_splitter(BogoliubovMap& map, int m1, int m2, complex t) {
  check_mode(map, m1, "apply_beam_splitter");
  check_mode(map, m2, "apply_beam_splitter");
  if (m1 == m2) {
    throw std::invalid_argument("apply_beam_splitter: modes must differ");
  }
  const double T = std::norm(t);
  if (T > 1.0 + 1e-12) {
    throw std::invalid_argument("apply_beam_splitter: |t| must be <= 1");
  }
  const double r = std::sqrt(std::max(0.0, 1.0 - T));
  const int n = map.modes();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd al = Eigen::MatrixXcd::Zero(n, n);
  A(m1, m1) = t;
  A(m1, m2) = r;
  A(m2, m1) = -r;
  A(m2, m2) = std::conj(t);
  compose_onto(map, A, al);
}

double commutation_defect(const BogoliubovMap& map) {
  const int n = map.modes();
  const Eigen::MatrixXcd comm =
      map.A * map.A.adjoint() - map.alpha * map.alpha.adjoint() -
      Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd sym =
      map.A * map.alpha.transpose() - map.alpha * map.A.transpose();
  return std::max(comm.cwiseAbs().maxCoeff(), sym.cwiseAbs().maxCoeff());
}

BogoliubovMap compose_circuit(const NliConfig& cfg) {
  validate_config(cfg);
  if (cfg.flavor == Flavor::Degenerate) {
    // modes: 0 signal, 1 internal-loss ancilla, 2 detection ancilla
    BogoliubovMap map = identity_map(3);
    map.mode_labels = {"signal", "loss-ancilla", "detector-ancilla"};
    apply_squeezer(map, 0, cfg.gain_a);
    apply_beam_splitter(map, 0, 1, cfg.loss_1.t);
    apply_squeezer(map, 0, cfg.gain_b);
    apply_beam_splitter(map, 0, 2, std::sqrt(cfg.detection_1.eta));
    map.output_ports = {0};
    return map;
  }
  // modes: 0 signal-1, 1 signal-2, 2/3 internal-loss ancillas,
  // 4/5 detection ancillas
  BogoliubovMap map = identity_map(6);
  map.mode_labels = {"signal-1",     "signal-2",     "loss-ancilla-1",
                     "loss-ancilla-2", "detector-ancilla-1",
                     "detector-ancilla-2"};
  apply_two_mode_squeezer(map, 0, 1, cfg.gain_a);
  apply_beam_splitter(map, 0, 2, cfg.loss_1.t);
  apply_beam_splitter(map, 1, 3, cfg.loss_2.t);
  apply_two_mode_squeezer(map, 0, 1, cfg.gain_b);
  apply_beam_splitter(map, 0, 4, std::sqrt(cfg.detection_1.eta));
  apply_beam_splitter(map, 1, 5, std::sqrt(cfg.detection_2.eta));
  map.output_ports = {0, 1};
  return map;
}

WickMoments wick_moments(const BogoliubovMap& map) {
  const double defect = commutation_defect(map);
  if (defect > 1e-10) {
    throw integrity_error(
        "wick_moments: map violates commutation invariants (defect " +
        std::to_string(defect) + ")");
  }
  WickMoments out;
  std::vector<double> means;
  std::vector<double> vars;
  for (int port : map.output_ports) {
    // <b^dag b> over vacuum picks out the creation coefficients.
    const double n = map.alpha.row(port).squaredNorm();
    // <b b> and <b b^dag> pair contractions.
    const complex bb = (map.A.row(port).array() * map.alpha.row(port).array()).sum();
    const double bbdag = map.A.row(port).squaredNorm();
    const double var = std::norm(bb) + n * bbdag;
    means.push_back(n);
    vars.push_back(var);
    out.ports.push_back({n, var});
  }
  if (map.output_ports.size() == 2) {
    const int p = map.output_ports[0];
    const int q = map.output_ports[1];
    // Cov(n_p, n_q) = |<b_p b_q>|^2 + |<b_p^dag b_q>|^2 for distinct modes.
    const complex bpbq = (map.A.row(p).array() * map.alpha.row(q).array()).sum();
    const complex bpdbq =
        (map.alpha.row(p).array().conjugate() * map.alpha.row(q).array()).sum();
    out.covariance = std::norm(bpbq) + std::norm(bpdbq);
    out.sum.mean_n = means[0] + means[1];
    out.sum.variance = vars[0] + vars[1] + 2.0 * out.covariance;
  }
  return out;
}

}  // namespace nli::gauss
