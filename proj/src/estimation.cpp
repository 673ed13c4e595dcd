#include "nli/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nli/degenerate.hpp"
#include "nli/fock.hpp"
#include "nli/mutation.hpp"
#include "nli/nondegenerate.hpp"
#include "nli/parallel.hpp"
#include "nli/random.hpp"

namespace nli::est {

namespace {

constexpr int kFockCutoff = 60;
constexpr double kStationaryTol = 1e-9;

PhotonStatistics detected_moments(const NliConfig& cfg) {
  if (cfg.flavor == Flavor::Degenerate) {
    return deg::detected_statistics(cfg);
  }
  const nd::Port port = cfg.flavor == Flavor::NondegeneratePort1
                            ? nd::Port::One
                            : cfg.flavor == Flavor::NondegeneratePort2
                                  ? nd::Port::Two
                                  : nd::Port::Sum;
  return {nd::port_mean_detected(cfg, port),
          nd::port_variance_detected(cfg, port)};
}

}  // namespace

FringeParams detected_fringe(const NliConfig& cfg) {
  // N(pi/2) = amplitude, N(0) = amplitude - contrast: two evaluations pin the
  // fringe without duplicating any flavor's closed form here.
  NliConfig probe = cfg;
  probe.phi = pi / 2.0;
  const double amplitude = detected_moments(probe).mean_n;
  probe.phi = 0.0;
  const double contrast = amplitude - detected_moments(probe).mean_n;
  return {amplitude, fault::knobs().est_contrast * contrast};
}

double arccos_estimator(double amplitude, double contrast, double n_bar,
                        long* clamp_events) {
  if (!(contrast > 0.0)) {
    throw no_interference_error(
        "arccos_estimator: non-positive fringe contrast");
  }
  double arg = (amplitude - n_bar) / contrast;
  if (arg < -1.0 || arg > 1.0) {
    if (clamp_events != nullptr) ++*clamp_events;
    arg = std::clamp(arg, -1.0, 1.0);
  }
  return std::acos(arg);
}

EstimatorRun monte_carlo_uncertainty(const NliConfig& cfg, long p,
                                     long repetitions, Sampler sampler,
                                     std::uint64_t seed) {
  validate_config(cfg);
  if (p < 1) {
    throw std::invalid_argument("monte_carlo_uncertainty: p must be >= 1");
  }
  if (repetitions < 2) {
    throw std::invalid_argument(
        "monte_carlo_uncertainty: need at least two repetitions");
  }
  if (std::abs(std::sin(cfg.phi)) <= kStationaryTol) {
    throw divergent_sensitivity_error(
        "monte_carlo_uncertainty: true phase sits on a fringe extremum");
  }
  const FringeParams fringe = detected_fringe(cfg);
  if (!(fringe.contrast > 0.0)) {
    throw no_interference_error(
        "monte_carlo_uncertainty: zero fringe contrast");
  }

  const auto reps = static_cast<std::size_t>(repetitions);
  std::vector<double> estimates(reps, 0.0);
  std::vector<long> clamps(reps, 0);

  if (sampler == Sampler::GaussianApprox) {
    const PhotonStatistics mom = detected_moments(cfg);
    const double sd = std::sqrt(std::max(0.0, mom.variance));
    parallel_for(static_cast<int>(repetitions), [&](int r) {
      rng::Stream stream(
          rng::child_seed(seed, static_cast<std::uint64_t>(r)));
      double acc = 0.0;
      for (long i = 0; i < p; ++i) {
        acc += stream.normal(mom.mean_n, sd);
      }
      estimates[static_cast<std::size_t>(r)] = arccos_estimator(
          fringe.amplitude, fringe.contrast, acc / static_cast<double>(p),
          &clamps[static_cast<std::size_t>(r)]);
    });
  } else {
    // One truncated-basis distribution serves every repetition.
    const std::vector<double> dist =
        fock::count_distribution(realize_phase(cfg), kFockCutoff);
    std::vector<double> cdf(dist.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < dist.size(); ++n) {
      acc += dist[n];
      cdf[n] = acc;
    }
    cdf.back() = 1.0;
    parallel_for(static_cast<int>(repetitions), [&](int r) {
      rng::Stream stream(
          rng::child_seed(seed, static_cast<std::uint64_t>(r)));
      double total = 0.0;
      for (long i = 0; i < p; ++i) {
        const double u = stream.uniform();
        total += static_cast<double>(
            std::distance(cdf.begin(),
                          std::upper_bound(cdf.begin(), cdf.end(), u)));
      }
      estimates[static_cast<std::size_t>(r)] = arccos_estimator(
          fringe.amplitude, fringe.contrast, total / static_cast<double>(p),
          &clamps[static_cast<std::size_t>(r)]);
    });
  }

  EstimatorRun run;
  run.true_phi = cfg.phi;
  run.p = p;
  run.repetitions = repetitions;
  run.rng_seed = seed;
  run.clamp_events = std::accumulate(clamps.begin(), clamps.end(), 0L);
  run.estimate = std::accumulate(estimates.begin(), estimates.end(), 0.0) /
                 static_cast<double>(repetitions);
  double ss = 0.0;
  for (const double e : estimates) {
    ss += (e - run.estimate) * (e - run.estimate);
  }
  run.se_sq = ss / static_cast<double>(repetitions - 1);
  return run;
}

double quantum_fisher_information(double V) {
  if (V < 0.0) {
    throw std::invalid_argument(
        "quantum_fisher_information: gain must be nonnegative");
  }
  return fault::knobs().qfi_scale * 2.0 * (1.0 + V) * V;
}

}  // namespace nli::est
