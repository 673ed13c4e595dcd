// Truncated number-basis verification engine: moments against the closed
// forms, truncation monitoring, parity structure, and sampling consistency.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "nli/core.hpp"
#include "nli/degenerate.hpp"
#include "nli/fock.hpp"
#include "nli/nondegenerate.hpp"

using namespace nli;

namespace {

double v_of_r(double r) { return std::sinh(r) * std::sinh(r); }

}  // namespace

TEST_CASE("switched-off crystals leave vacuum at the detector") {
  const NliConfig cfg = make_degenerate(0.0, 0.0, 1.0, 1.0, 0.0);
  const PhotonStatistics stats = fock::fock_moments(cfg, 16);
  CHECK(stats.mean_n <= 1e-12);
  CHECK(stats.variance <= 1e-12);

  for (const long n : fock::sample_photon_counts(cfg, 16, 200, 42)) {
    CHECK(n == 0);
  }
}

TEST_CASE("balanced lossless dark fringe disamplifies to vacuum") {
  const double v = v_of_r(0.4);
  const NliConfig cfg =
      realize_phase(make_degenerate(v, v, 1.0, 1.0, 0.0));
  const PhotonStatistics stats = fock::fock_moments(cfg, 60);
  CHECK(std::abs(stats.mean_n - deg::photon_number(cfg)) <= 1e-6);
  CHECK(std::abs(stats.mean_n) <= 1e-6);
}

TEST_CASE("internal loss circuit reproduces the closed-form variance") {
  const NliConfig cfg = realize_phase(
      make_degenerate(v_of_r(0.5), v_of_r(0.3), 0.8, 1.0, 2.137));
  fock::TruncationInfo info;
  const PhotonStatistics stats = fock::fock_moments(cfg, 60, info);
  CHECK(info.deficit <= 1e-10);
  CHECK(std::abs(stats.mean_n - deg::photon_number(cfg)) <= 1e-6);
  CHECK(std::abs(stats.variance - deg::photon_variance(cfg)) <= 1e-6);
}

TEST_CASE("detection loss is folded into the simulated moments") {
  const NliConfig cfg = realize_phase(
      make_degenerate(v_of_r(0.6), v_of_r(0.45), 0.9, 0.7, 0.8));
  const PhotonStatistics stats = fock::fock_moments(cfg, 60);
  const PhotonStatistics want = deg::detected_statistics(cfg);
  CHECK(std::abs(stats.mean_n - want.mean_n) <= 1e-6);
  CHECK(std::abs(stats.variance - want.variance) <= 1e-6);
}

TEST_CASE("nondegenerate ports match the closed forms under loss") {
  const NliConfig port1 = realize_phase(make_nondegenerate(
      Flavor::NondegeneratePort1, v_of_r(0.5), v_of_r(0.4), 0.85, 1.0, 0.8,
      1.0, 1.9));
  const PhotonStatistics s1 = fock::fock_moments(port1, 48);
  CHECK(std::abs(s1.mean_n - nd::port_mean_detected(port1, nd::Port::One)) <=
        1e-6);
  CHECK(std::abs(s1.variance -
                 nd::port_variance_detected(port1, nd::Port::One)) <= 1e-6);

  const NliConfig sum = realize_phase(make_nondegenerate(
      Flavor::NondegenerateSum, v_of_r(0.45), v_of_r(0.35), 0.9, 0.75, 0.85,
      0.65, 0.7));
  const PhotonStatistics sp = fock::fock_moments(sum, 40);
  CHECK(std::abs(sp.mean_n - nd::port_mean_detected(sum, nd::Port::Sum)) <=
        1e-6);
  CHECK(std::abs(sp.variance -
                 nd::port_variance_detected(sum, nd::Port::Sum)) <= 1e-6);
}

TEST_CASE("insufficient cutoff is reported, not silently accepted") {
  const NliConfig hot = make_degenerate(v_of_r(1.5), 0.0, 1.0, 1.0, 0.0);
  CHECK_THROWS_AS(fock::fock_moments(hot, 8), truncation_error);
  CHECK_THROWS_AS(fock::fock_moments(hot, 300), std::invalid_argument);
  CHECK_THROWS_AS(fock::fock_moments(hot, 2), std::invalid_argument);
}

TEST_CASE("count distribution is a parity-locked probability law") {
  // a single squeezer makes photons strictly in pairs
  const NliConfig single = make_degenerate(v_of_r(0.6), 0.0, 1.0, 1.0, 0.0);
  const std::vector<double> dist = fock::count_distribution(single, 40);
  double total = 0.0;
  for (std::size_t n = 0; n < dist.size(); ++n) {
    CHECK(dist[n] >= -1e-15);
    if (n % 2 == 1) CHECK(dist[n] <= 1e-10);
    total += dist[n];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

  for (const long n : fock::sample_photon_counts(single, 40, 400, 7)) {
    CHECK(n % 2 == 0);
  }
}

TEST_CASE("sampling converges to the simulated moments") {
  const double v = v_of_r(0.4);
  const NliConfig cfg =
      realize_phase(make_degenerate(v, v, 1.0, 1.0, pi / 10.0));
  const PhotonStatistics stats = fock::fock_moments(cfg, 60);

  const long shots = 100000;
  const auto samples = fock::sample_photon_counts(cfg, 60, shots, 99);
  REQUIRE(samples.size() == static_cast<std::size_t>(shots));
  const double mean =
      std::accumulate(samples.begin(), samples.end(), 0.0) /
      static_cast<double>(shots);
  const double se = std::sqrt(stats.variance / static_cast<double>(shots));
  CHECK(std::abs(mean - stats.mean_n) <= 3.0 * se);
}
