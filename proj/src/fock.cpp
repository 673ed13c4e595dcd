#include "nli/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "nli/random.hpp"

namespace nli::fock {

namespace {

constexpr int kPad = 12;           // headroom levels above the nominal cutoff
constexpr int kAncillaCap = 41;    // loss/detection ancilla dimension cap
constexpr double kDeficitThrow = 1e-8;

// ---------------------------------------------------------------------------
// Multimode state vector (row-major mixed radix)
// ---------------------------------------------------------------------------

struct State {
  std::vector<int> dims;
  std::vector<std::size_t> strides;
  std::size_t total = 0;
  std::vector<complex> amp;

  explicit State(std::vector<int> d) : dims(std::move(d)) {
    strides.assign(dims.size(), 1);
    total = 1;
    for (int m = static_cast<int>(dims.size()) - 1; m >= 0; --m) {
      strides[static_cast<std::size_t>(m)] = total;
      total *= static_cast<std::size_t>(dims[static_cast<std::size_t>(m)]);
    }
    amp.assign(total, complex(0.0, 0.0));
    amp[0] = complex(1.0, 0.0);  // all-mode vacuum
  }
};

// Enumerate the base offsets of every configuration of the modes other than
// those in `held` (odometer over the remaining digits).
template <typename F>
void for_each_base(const State& st, std::initializer_list<int> held, F&& fn) {
  std::vector<int> others;
  for (int m = 0; m < static_cast<int>(st.dims.size()); ++m) {
    if (std::find(held.begin(), held.end(), m) == held.end()) {
      others.push_back(m);
    }
  }
  if (others.empty()) {
    fn(std::size_t{0});
    return;
  }
  std::vector<int> ctr(others.size(), 0);
  while (true) {
    std::size_t base = 0;
    for (std::size_t i = 0; i < others.size(); ++i) {
      base += static_cast<std::size_t>(ctr[i]) *
              st.strides[static_cast<std::size_t>(others[i])];
    }
    fn(base);
    int i = static_cast<int>(others.size()) - 1;
    while (i >= 0) {
      auto ui = static_cast<std::size_t>(i);
      if (++ctr[ui] < st.dims[static_cast<std::size_t>(others[ui])]) break;
      ctr[ui] = 0;
      --i;
    }
    if (i < 0) break;
  }
}

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

/// e^{i tau n} on one mode.
void apply_phase(State& st, int mode, double tau) {
  if (tau == 0.0) return;
  const int d = st.dims[static_cast<std::size_t>(mode)];
  const std::size_t stride = st.strides[static_cast<std::size_t>(mode)];
  std::vector<complex> factor(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) {
    factor[static_cast<std::size_t>(n)] =
        std::polar(1.0, tau * static_cast<double>(n));
  }
  for_each_base(st, {mode}, [&](std::size_t base) {
    for (int n = 0; n < d; ++n) {
      st.amp[base + static_cast<std::size_t>(n) * stride] *=
          factor[static_cast<std::size_t>(n)];
    }
  });
}

/// Dense single-mode unitary.
void apply_single(State& st, int mode, const Eigen::MatrixXcd& U) {
  const int d = st.dims[static_cast<std::size_t>(mode)];
  const std::size_t stride = st.strides[static_cast<std::size_t>(mode)];
  Eigen::VectorXcd in(d), out(d);
  for_each_base(st, {mode}, [&](std::size_t base) {
    for (int n = 0; n < d; ++n) {
      in(n) = st.amp[base + static_cast<std::size_t>(n) * stride];
    }
    out.noalias() = U * in;
    for (int n = 0; n < d; ++n) {
      st.amp[base + static_cast<std::size_t>(n) * stride] = out(n);
    }
  });
}

/// Single-mode squeezer unitary exp((r/2)(e^{i theta} adag^2 - e^{-i theta} a^2)),
/// which maps a -> cosh r a + e^{i theta} sinh r adag in the Heisenberg picture.
Eigen::MatrixXcd squeezer_matrix(int d, double r, double theta) {
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(d, d);
  const complex zeta = std::polar(r / 2.0, theta);
  for (int n = 0; n + 2 < d; ++n) {
    const double amp = std::sqrt(static_cast<double>((n + 1) * (n + 2)));
    G(n + 2, n) = zeta * amp;
    G(n, n + 2) = -std::conj(zeta) * amp;
  }
  return G.exp();
}

/// Two-mode gate stored as its conserved-sector blocks.  Each block holds the
/// flattened pair indices n_p * d_q + n_q of its basis states and the dense
/// unitary over them.
struct PairGate {
  int dp = 0;
  int dq = 0;
  std::vector<std::vector<int>> flat;
  std::vector<Eigen::MatrixXcd> op;
};

/// exp(r (e^{i theta} adag bdag - e^{-i theta} a b)): two-mode squeezer with
/// u = cosh r, v = e^{i theta} sinh r; conserves n_p - n_q.
PairGate tms_gate(int dp, int dq, double r, double theta) {
  PairGate g{dp, dq, {}, {}};
  const complex zeta = std::polar(r, theta);
  for (int delta = -(dq - 1); delta <= dp - 1; ++delta) {
    std::vector<int> flat;
    std::vector<std::pair<int, int>> states;
    for (int k = 0;; ++k) {
      const int np = delta >= 0 ? delta + k : k;
      const int nq = delta >= 0 ? k : k - delta;
      if (np >= dp || nq >= dq) break;
      states.emplace_back(np, nq);
      flat.push_back(np * dq + nq);
    }
    const int m = static_cast<int>(states.size());
    if (m == 0) continue;
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 0; k + 1 < m; ++k) {
      const auto [np, nq] = states[static_cast<std::size_t>(k)];
      const double amp =
          std::sqrt(static_cast<double>((np + 1) * (nq + 1)));
      G(k + 1, k) = zeta * amp;
      G(k, k + 1) = -std::conj(zeta) * amp;
    }
    g.flat.push_back(std::move(flat));
    g.op.push_back(m == 1 ? Eigen::MatrixXcd::Identity(1, 1)
                          : Eigen::MatrixXcd(G.exp()));
  }
  return g;
}

/// exp(theta (adag_p a_q - a_p adag_q)): real beam-splitter rotation with
/// t = cos theta, r = sin theta; conserves n_p + n_q.
PairGate bs_gate(int dp, int dq, double theta) {
  PairGate g{dp, dq, {}, {}};
  for (int s = 0; s <= dp + dq - 2; ++s) {
    std::vector<int> flat;
    std::vector<std::pair<int, int>> states;
    const int np_lo = std::max(0, s - (dq - 1));
    const int np_hi = std::min(s, dp - 1);
    for (int np = np_lo; np <= np_hi; ++np) {
      states.emplace_back(np, s - np);
      flat.push_back(np * dq + (s - np));
    }
    const int m = static_cast<int>(states.size());
    if (m == 0) continue;
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 0; k + 1 < m; ++k) {
      const auto [np, nq] = states[static_cast<std::size_t>(k)];
      const double amp = std::sqrt(static_cast<double>((np + 1) * nq));
      G(k + 1, k) = complex(theta * amp, 0.0);
      G(k, k + 1) = complex(-theta * amp, 0.0);
    }
    g.flat.push_back(std::move(flat));
    g.op.push_back(m == 1 ? Eigen::MatrixXcd::Identity(1, 1)
                          : Eigen::MatrixXcd(G.exp()));
  }
  return g;
}

void apply_pair(State& st, int p, int q, const PairGate& g) {
  const std::size_t sp = st.strides[static_cast<std::size_t>(p)];
  const std::size_t sq = st.strides[static_cast<std::size_t>(q)];
  std::vector<complex> buf(static_cast<std::size_t>(g.dp * g.dq));
  Eigen::VectorXcd in, out;
  for_each_base(st, {p, q}, [&](std::size_t base) {
    for (int np = 0; np < g.dp; ++np) {
      const std::size_t row = base + static_cast<std::size_t>(np) * sp;
      for (int nq = 0; nq < g.dq; ++nq) {
        buf[static_cast<std::size_t>(np * g.dq + nq)] =
            st.amp[row + static_cast<std::size_t>(nq) * sq];
      }
    }
    for (std::size_t b = 0; b < g.flat.size(); ++b) {
      const auto& idx = g.flat[b];
      const int m = static_cast<int>(idx.size());
      if (m == 1) continue;  // one-state sector: identity
      in.resize(m);
      for (int i = 0; i < m; ++i) {
        in(i) = buf[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      }
      out.noalias() = g.op[b] * in;
      for (int i = 0; i < m; ++i) {
        buf[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] =
            out(i);
      }
    }
    for (int np = 0; np < g.dp; ++np) {
      const std::size_t row = base + static_cast<std::size_t>(np) * sp;
      for (int nq = 0; nq < g.dq; ++nq) {
        st.amp[row + static_cast<std::size_t>(nq) * sq] =
            buf[static_cast<std::size_t>(np * g.dq + nq)];
      }
    }
  });
}

// Composite elements.  The Heisenberg requirement b = e^{i pu} cosh r a +
// e^{i pv} sinh r adag decomposes as a number-phase rotation by pu followed
// (in circuit order) by a squeezer with angle pu + pv; likewise a complex
// beam-splitter transmittance is a rotation by arg t before a real splitter.

void apply_squeezer(State& st, int mode, const GainSetting& gain) {
  if (gain.squeeze_r == 0.0) return;
  apply_phase(st, mode, gain.phase_u);
  const int d = st.dims[static_cast<std::size_t>(mode)];
  apply_single(st, mode,
               squeezer_matrix(d, gain.squeeze_r,
                               gain.phase_u + gain.phase_v));
}

void apply_two_mode_squeezer(State& st, int m1, int m2,
                             const GainSetting& gain) {
  if (gain.squeeze_r == 0.0) return;
  apply_phase(st, m1, gain.phase_u);
  apply_phase(st, m2, gain.phase_u);
  apply_pair(st, m1, m2,
             tms_gate(st.dims[static_cast<std::size_t>(m1)],
                      st.dims[static_cast<std::size_t>(m2)], gain.squeeze_r,
                      gain.phase_u + gain.phase_v));
}

void apply_beam_splitter(State& st, int m1, int m2, complex t) {
  const double mag = std::min(std::abs(t), 1.0);
  if (mag >= 1.0 - 1e-15) return;  // fully transmissive: identity on vacuum ancilla
  apply_phase(st, m1, std::arg(t));
  apply_pair(st, m1, m2,
             bs_gate(st.dims[static_cast<std::size_t>(m1)],
                     st.dims[static_cast<std::size_t>(m2)], std::acos(mag)));
}

// ---------------------------------------------------------------------------
// Simulation driver
// ---------------------------------------------------------------------------

struct SimOutput {
  Eigen::VectorXd port;   // degenerate: detected-mode marginal
  Eigen::MatrixXd joint;  // nondegenerate: joint (port1, port2) distribution
  bool nondeg = false;
  TruncationInfo info;
};

Eigen::VectorXd mode_marginal(const State& st, int mode) {
  const int d = st.dims[static_cast<std::size_t>(mode)];
  const std::size_t stride = st.strides[static_cast<std::size_t>(mode)];
  Eigen::VectorXd marg = Eigen::VectorXd::Zero(d);
  for_each_base(st, {mode}, [&](std::size_t base) {
    for (int n = 0; n < d; ++n) {
      marg(n) += std::norm(st.amp[base + static_cast<std::size_t>(n) * stride]);
    }
  });
  return marg;
}

Eigen::MatrixXd pair_marginal(const State& st, int p, int q) {
  const int dp = st.dims[static_cast<std::size_t>(p)];
  const int dq = st.dims[static_cast<std::size_t>(q)];
  const std::size_t sp = st.strides[static_cast<std::size_t>(p)];
  const std::size_t sq = st.strides[static_cast<std::size_t>(q)];
  Eigen::MatrixXd marg = Eigen::MatrixXd::Zero(dp, dq);
  for_each_base(st, {p, q}, [&](std::size_t base) {
    for (int np = 0; np < dp; ++np) {
      const std::size_t row = base + static_cast<std::size_t>(np) * sp;
      for (int nq = 0; nq < dq; ++nq) {
        marg(np, nq) +=
            std::norm(st.amp[row + static_cast<std::size_t>(nq) * sq]);
      }
    }
  });
  return marg;
}

double top_two_mass(const Eigen::VectorXd& marg) {
  const int d = static_cast<int>(marg.size());
  if (d < 2) return 0.0;
  return marg(d - 1) + marg(d - 2);
}

SimOutput simulate(const NliConfig& cfg, int cutoff) {
  validate_config(cfg);
  if (cutoff < 4 || cutoff > 200) {
    throw std::invalid_argument("fock: cutoff out of supported range [4,200]");
  }
  const int ds = cutoff + 1 + kPad;
  const int da = std::min(cutoff + 1, kAncillaCap);

  SimOutput out;
  std::vector<int> ancillas;  // mode indices of the loss/detection ancillas

  if (cfg.flavor == Flavor::Degenerate) {
    const bool lossy = cfg.loss_1.T < 1.0;
    const bool detected = cfg.detection_1.eta < 1.0;
    std::vector<int> dims{ds};
    int loss_mode = -1, det_mode = -1;
    if (lossy) {
      loss_mode = static_cast<int>(dims.size());
      dims.push_back(da);
    }
    if (detected) {
      det_mode = static_cast<int>(dims.size());
      dims.push_back(da);
    }
    State st(std::move(dims));
    apply_squeezer(st, 0, cfg.gain_a);
    if (lossy) {
      apply_beam_splitter(st, 0, loss_mode, cfg.loss_1.t);
      ancillas.push_back(loss_mode);
    }
    apply_squeezer(st, 0, cfg.gain_b);
    if (detected) {
      apply_beam_splitter(st, 0, det_mode,
                          complex(std::sqrt(cfg.detection_1.eta), 0.0));
      ancillas.push_back(det_mode);
    }
    out.port = mode_marginal(st, 0);
    out.info.deficit = out.port.tail(kPad).sum();
    for (int anc : ancillas) {
      out.info.ancilla_leak =
          std::max(out.info.ancilla_leak, top_two_mass(mode_marginal(st, anc)));
    }
    return out;
  }

  const bool lossy1 = cfg.loss_1.T < 1.0;
  const bool lossy2 = cfg.loss_2.T < 1.0;
  std::vector<int> dims{ds, ds};
  int loss1_mode = -1, loss2_mode = -1;
  if (lossy1) {
    loss1_mode = static_cast<int>(dims.size());
    dims.push_back(da);
  }
  if (lossy2) {
    loss2_mode = static_cast<int>(dims.size());
    dims.push_back(da);
  }
  State st(std::move(dims));
  apply_two_mode_squeezer(st, 0, 1, cfg.gain_a);
  if (lossy1) {
    apply_beam_splitter(st, 0, loss1_mode, cfg.loss_1.t);
    ancillas.push_back(loss1_mode);
  }
  if (lossy2) {
    apply_beam_splitter(st, 1, loss2_mode, cfg.loss_2.t);
    ancillas.push_back(loss2_mode);
  }
  apply_two_mode_squeezer(st, 0, 1, cfg.gain_b);
  out.nondeg = true;
  out.joint = pair_marginal(st, 0, 1);
  out.info.deficit = out.joint.bottomRows(kPad).sum() +
                     out.joint.topRows(ds - kPad).rightCols(kPad).sum();
  for (int anc : ancillas) {
    out.info.ancilla_leak =
        std::max(out.info.ancilla_leak, top_two_mass(mode_marginal(st, anc)));
  }
  return out;
}

void check_truncation(const TruncationInfo& info) {
  if (info.deficit > kDeficitThrow || info.ancilla_leak > kDeficitThrow) {
    throw truncation_error(
        "fock: truncation deficit " + std::to_string(info.deficit) +
        " / ancilla leak " + std::to_string(info.ancilla_leak) +
        " exceeds 1e-8; raise the cutoff or lower the gain");
  }
}

PhotonStatistics vector_moments(const Eigen::VectorXd& p) {
  double mass = 0.0, m1 = 0.0, m2 = 0.0;
  for (int n = 0; n < p.size(); ++n) {
    const double w = p(n);
    mass += w;
    m1 += w * n;
    m2 += w * static_cast<double>(n) * static_cast<double>(n);
  }
  if (mass <= 0.0) return {0.0, 0.0};
  m1 /= mass;
  m2 /= mass;
  return {m1, m2 - m1 * m1};
}

/// Exact binomial-thinning kernel: row k, column n holds P(k | n, eta).
Eigen::MatrixXd thinning_kernel(int d, double eta) {
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(d, d);
  if (eta >= 1.0) {
    K.setIdentity();
    return K;
  }
  const double log_eta = std::log(eta);
  const double log_reta = std::log1p(-eta);
  for (int n = 0; n < d; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                                std::lgamma(n - k + 1.0);
      K(k, n) = std::exp(log_choose + k * log_eta + (n - k) * log_reta);
    }
  }
  return K;
}

struct JointStats {
  double n1 = 0.0, n2 = 0.0, var1 = 0.0, var2 = 0.0, cov = 0.0;
};

JointStats joint_moments(const Eigen::MatrixXd& joint) {
  JointStats s;
  double mass = 0.0, m11 = 0.0, m2a = 0.0, m2b = 0.0;
  for (int i = 0; i < joint.rows(); ++i) {
    for (int j = 0; j < joint.cols(); ++j) {
      const double w = joint(i, j);
      mass += w;
      s.n1 += w * i;
      s.n2 += w * j;
      m2a += w * static_cast<double>(i) * i;
      m2b += w * static_cast<double>(j) * j;
      m11 += w * static_cast<double>(i) * j;
    }
  }
  if (mass <= 0.0) return s;
  s.n1 /= mass;
  s.n2 /= mass;
  s.var1 = m2a / mass - s.n1 * s.n1;
  s.var2 = m2b / mass - s.n2 * s.n2;
  s.cov = m11 / mass - s.n1 * s.n2;
  return s;
}

/// Binomial thinning of exact moments: k | n ~ Bin(n, eta).
void thin_moments(double eta, double& n, double& var) {
  var = eta * eta * var + eta * (1.0 - eta) * n;
  n = eta * n;
}

}  // namespace

PhotonStatistics fock_moments(const NliConfig& cfg, int cutoff,
                              TruncationInfo& info) {
  SimOutput sim = simulate(cfg, cutoff);
  info = sim.info;
  check_truncation(info);
  if (!sim.nondeg) {
    return vector_moments(sim.port);
  }
  JointStats s = joint_moments(sim.joint);
  const double e1 = cfg.detection_1.eta;
  const double e2 = cfg.detection_2.eta;
  switch (cfg.flavor) {
    case Flavor::NondegeneratePort1:
      thin_moments(e1, s.n1, s.var1);
      return {s.n1, s.var1};
    case Flavor::NondegeneratePort2:
      thin_moments(e2, s.n2, s.var2);
      return {s.n2, s.var2};
    default: {
      thin_moments(e1, s.n1, s.var1);
      thin_moments(e2, s.n2, s.var2);
      return {s.n1 + s.n2, s.var1 + s.var2 + 2.0 * e1 * e2 * s.cov};
    }
  }
}

PhotonStatistics fock_moments(const NliConfig& cfg, int cutoff) {
  TruncationInfo info;
  return fock_moments(cfg, cutoff, info);
}

std::vector<double> count_distribution(const NliConfig& cfg, int cutoff) {
  SimOutput sim = simulate(cfg, cutoff);
  check_truncation(sim.info);
  Eigen::VectorXd dist;
  if (!sim.nondeg) {
    dist = sim.port;
  } else {
    const double e1 = cfg.detection_1.eta;
    const double e2 = cfg.detection_2.eta;
    const int d = static_cast<int>(sim.joint.rows());
    switch (cfg.flavor) {
      case Flavor::NondegeneratePort1:
        dist = thinning_kernel(d, e1) * sim.joint.rowwise().sum();
        break;
      case Flavor::NondegeneratePort2:
        dist = thinning_kernel(d, e2) * sim.joint.colwise().sum().transpose();
        break;
      default: {
        const Eigen::MatrixXd thinned = thinning_kernel(d, e1) * sim.joint *
                                        thinning_kernel(d, e2).transpose();
        dist = Eigen::VectorXd::Zero(2 * d - 1);
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            dist(i + j) += thinned(i, j);
          }
        }
        break;
      }
    }
  }
  const double mass = dist.sum();
  std::vector<double> out(static_cast<std::size_t>(dist.size()));
  for (int n = 0; n < dist.size(); ++n) {
    out[static_cast<std::size_t>(n)] = std::max(0.0, dist(n)) / mass;
  }
  return out;
}

std::vector<long> sample_photon_counts(const NliConfig& cfg, int cutoff,
                                       long shots, std::uint64_t seed) {
  if (shots < 0) {
    throw std::invalid_argument("fock: negative shot count");
  }
  const std::vector<double> dist = count_distribution(cfg, cutoff);
  std::vector<double> cdf(dist.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < dist.size(); ++n) {
    acc += dist[n];
    cdf[n] = acc;
  }
  cdf.back() = 1.0;
  rng::Stream stream(rng::child_seed(seed, 0));
  std::vector<long> counts(static_cast<std::size_t>(shots));
  for (long s = 0; s < shots; ++s) {
    const double u = stream.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    counts[static_cast<std::size_t>(s)] =
        static_cast<long>(std::distance(cdf.begin(), it));
  }
  return counts;
}

}  // namespace nli::fock
