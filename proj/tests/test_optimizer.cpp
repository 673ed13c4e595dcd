// Numeric minimal-uncertainty search: closed-form cross-checks, evenness,
// sweep orderings, and the grid-density assumption behind the global-minimum
// claim.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nli/core.hpp"
#include "nli/degenerate.hpp"
#include "nli/optimizer.hpp"
#include "nli/random.hpp"

using namespace nli;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

TEST_CASE("numeric minimum matches the lossless closed forms") {
  const NliConfig cfg = make_degenerate(1.0, 2.0, 1.0, 1.0, 0.0);
  const auto res = opt::minimize_uncertainty(cfg, opt::Objective::Bare);
  CHECK(std::abs(res.phi_star - deg::optimal_phase_lossless(1.0, 2.0)) <= 1e-8);
  CHECK(rel_err(res.objective, deg::min_phase_uncertainty_lossless(1.0, 2.0)) <=
        1e-10);
  CHECK(res.bracket_width <= 1e-10);
}

TEST_CASE("balanced lossless minimum sits at the dark fringe") {
  // at balance the optimum is the removable limit at the edge of the open
  // search interval, which the search can only approach; accuracy there is
  // edge-limited rather than interior-grade
  const NliConfig cfg = make_degenerate(5.0, 5.0, 1.0, 1.0, 0.0);
  const auto res = opt::minimize_uncertainty(cfg, opt::Objective::Bare);
  CHECK(std::abs(res.phi_star) <= 1e-3);
  CHECK(rel_err(res.objective, 1.0 / 60.0) <= 1e-7);
  CHECK(res.objective >= 1.0 / 60.0);
}

TEST_CASE("photon number at the lossy minimum matches the closed form") {
  const NliConfig cfg = make_degenerate(5.0, 2.0, 0.8, 1.0, 0.0);
  const auto res = opt::minimize_uncertainty(cfg, opt::Objective::Bare);
  CHECK(rel_err(res.n_at_star, deg::optimal_photon_number_lossy(5.0, 2.0, 0.8)) <=
        1e-8);
  CHECK(rel_err(res.objective, deg::min_phase_uncertainty_lossy(5.0, 2.0, 0.8)) <=
        1e-10);
}

TEST_CASE("the numeric search never undercuts the closed-form minima") {
  rng::Stream s(8101);
  for (int i = 0; i < 40; ++i) {
    const double va = 0.2 + 20.0 * s.uniform();
    const double vb = 0.2 + 20.0 * s.uniform();
    const NliConfig lossless = make_degenerate(va, vb, 1.0, 1.0, 0.0);
    const auto res = opt::minimize_uncertainty(lossless, opt::Objective::Bare);
    const double bound = deg::min_phase_uncertainty_lossless(va, vb);
    CHECK(res.objective >= bound * (1.0 - 1e-9));

    const double T = 0.5 + 0.5 * s.uniform();
    const NliConfig lossy = make_degenerate(va, vb, T, 1.0, 0.0);
    const auto lossy_res = opt::minimize_uncertainty(lossy, opt::Objective::Bare);
    CHECK(lossy_res.objective >=
          deg::min_phase_uncertainty_lossy(va, vb, T) * (1.0 - 1e-9));
  }
}

TEST_CASE("the objective is even in phi") {
  rng::Stream s(8102);
  for (int i = 0; i < 50; ++i) {
    const NliConfig cfg = make_degenerate(
        0.2 + 10.0 * s.uniform(), 0.2 + 10.0 * s.uniform(),
        0.4 + 0.6 * s.uniform(), 0.2 + 0.8 * s.uniform(), 0.0);
    const double phi = 0.2 + 2.7 * s.uniform();
    const auto obj = i % 2 == 0 ? opt::Objective::Bare : opt::Objective::Detected;
    const double plus = opt::objective_at(cfg, obj, phi);
    const double minus = opt::objective_at(cfg, obj, -phi);
    CHECK(std::abs(plus - minus) <= 1e-10 * std::abs(plus));
  }

  // minimizing on the mirrored interval lands on the mirrored phase; the
  // interval must stay clear of the sin(phi) = 0 poles at 0 and -pi
  const NliConfig cfg = make_degenerate(2.0, 9.0, 0.9, 1.0, 0.0);
  const auto right = opt::minimize_uncertainty(cfg, opt::Objective::Bare);
  const auto left =
      opt::minimize_on(cfg, opt::Objective::Bare, -pi + 1e-6, -1e-6);
  CHECK(std::abs(left.phi_star + right.phi_star) <= 1e-7);
  CHECK(std::abs(left.objective - right.objective) <=
        1e-10 * std::abs(right.objective));
}

TEST_CASE("detection loss can only raise the achievable minimum") {
  rng::Stream s(8103);
  for (int i = 0; i < 30; ++i) {
    const NliConfig cfg = make_degenerate(
        0.3 + 12.0 * s.uniform(), 0.3 + 12.0 * s.uniform(),
        0.5 + 0.5 * s.uniform(), 0.05 + 0.90 * s.uniform(), 0.0);
    const auto bare = opt::minimize_uncertainty(cfg, opt::Objective::Bare);
    const auto detected =
        opt::minimize_uncertainty(cfg, opt::Objective::Detected);
    CHECK(detected.objective >= bare.objective * (1.0 - 1e-12));
  }
}

TEST_CASE("internal-loss sweep reproduces the qualitative loss study") {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.05 * i);

  const NliConfig balanced = make_degenerate(25.0, 25.0, 1.0, 1.0, 0.0);
  const auto balanced_run =
      opt::sweep(balanced, opt::Axis::InternalLoss, grid, opt::Objective::Bare);
  REQUIRE(balanced_run.size() == grid.size());
  for (std::size_t i = 1; i < balanced_run.size(); ++i) {
    CHECK(balanced_run[i].objective > balanced_run[i - 1].objective);
  }

  const NliConfig source = make_degenerate(25.0, 5.0, 1.0, 1.0, 0.0);
  const NliConfig analyzer = make_degenerate(5.0, 25.0, 1.0, 1.0, 0.0);
  const auto source_run =
      opt::sweep(source, opt::Axis::InternalLoss, grid, opt::Objective::Bare);
  const auto analyzer_run =
      opt::sweep(analyzer, opt::Axis::InternalLoss, grid, opt::Objective::Bare);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(source_run[i].objective <=
          analyzer_run[i].objective * (1.0 + 1e-12));

    NliConfig at_source = opt::with_axis_value(source, opt::Axis::InternalLoss,
                                               grid[i]);
    at_source.phi = source_run[i].phi_star;
    NliConfig at_analyzer = opt::with_axis_value(
        analyzer, opt::Axis::InternalLoss, grid[i]);
    at_analyzer.phi = analyzer_run[i].phi_star;
    const PhotonStatistics fano_source{deg::photon_number(at_source),
                                       deg::photon_variance(at_source)};
    const PhotonStatistics fano_analyzer{deg::photon_number(at_analyzer),
                                         deg::photon_variance(at_analyzer)};
    CHECK(fano_source.inverse_fano() >=
          fano_analyzer.inverse_fano() * (1.0 - 1e-12));
  }
}

TEST_CASE("axis substitution plumbs into the right channel") {
  const NliConfig base = make_degenerate(5.0, 7.0, 1.0, 1.0, 0.4);
  const NliConfig lossy = opt::with_axis_value(base, opt::Axis::InternalLoss, 0.3);
  CHECK(lossy.loss_1.T == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(opt::with_axis_value(base, opt::Axis::GainA, 9.0).gain_a.V == 9.0);
  CHECK(opt::with_axis_value(base, opt::Axis::GainB, 3.0).gain_b.V == 3.0);
  CHECK(opt::with_axis_value(base, opt::Axis::Eta, 0.4).detection_1.eta == 0.4);

  const NliConfig nd_base = make_nondegenerate(Flavor::NondegenerateSum, 5.0,
                                               7.0, 1.0, 1.0, 1.0, 1.0, 0.4);
  CHECK(opt::with_axis_value(nd_base, opt::Axis::ArmLoss1, 0.8).loss_1.T ==
        doctest::Approx(0.8));
  CHECK(opt::with_axis_value(nd_base, opt::Axis::ArmLoss2, 0.6).loss_2.T ==
        doctest::Approx(0.6));
}

TEST_CASE("no fringe, no minimum") {
  // an inactive source leaves a phase-independent signal
  const NliConfig dead = make_degenerate(0.0, 5.0, 1.0, 1.0, 0.0);
  CHECK_THROWS_AS(opt::minimize_uncertainty(dead, opt::Objective::Bare),
                  no_interference_error);
  CHECK_THROWS_AS(opt::sweep(dead, opt::Axis::InternalLoss, {}, opt::Objective::Bare),
                  std::invalid_argument);
}

TEST_CASE("the 2048-point bracketing grid is dense enough") {
  rng::Stream s(8104);
  for (int i = 0; i < 8; ++i) {
    const NliConfig cfg = make_degenerate(
        0.5 + 25.0 * s.uniform(), 0.5 + 25.0 * s.uniform(),
        0.6 + 0.4 * s.uniform(), 1.0, 0.0);
    const auto coarse =
        opt::minimize_on(cfg, opt::Objective::Bare, 1e-6, pi - 1e-6, 2048);
    const auto dense =
        opt::minimize_on(cfg, opt::Objective::Bare, 1e-6, pi - 1e-6, 16384);
    CHECK(rel_err(coarse.objective, dense.objective) <= 5e-9);
  }
}
