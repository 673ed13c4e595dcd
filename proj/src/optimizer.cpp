#include "nli/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "nli/degenerate.hpp"
#include "nli/nondegenerate.hpp"
#include "nli/parallel.hpp"

namespace nli::opt {

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt 5 - 1) / 2
constexpr double kEdgeGap = 1e-6;               // keep clear of sin phi = 0
constexpr double kGoldenTol = 1e-12;

nd::Port port_of(Flavor flavor) {
  switch (flavor) {
    case Flavor::NondegeneratePort1:
      return nd::Port::One;
    case Flavor::NondegeneratePort2:
      return nd::Port::Two;
    case Flavor::NondegenerateSum:
    default:
      return nd::Port::Sum;
  }
}

double fringe_contrast(const NliConfig& cfg) {
  if (cfg.flavor == Flavor::Degenerate) {
    NliConfig probe = cfg;
    probe.phi = pi / 2.0;
    return deg::photon_number_slope(probe);
  }
  return nd::port_signal(cfg, port_of(cfg.flavor)).contrast;
}

double mean_at(const NliConfig& cfg, Objective objective, double phi) {
  NliConfig probe = cfg;
  probe.phi = phi;
  if (cfg.flavor == Flavor::Degenerate) {
    return objective == Objective::Detected
               ? deg::detected_statistics(probe).mean_n
               : deg::photon_number(probe);
  }
  const nd::Port port = port_of(cfg.flavor);
  return objective == Objective::Detected ? nd::port_mean_detected(probe, port)
                                          : nd::port_mean(probe, port);
}

// Symmetric 9-point least-squares cubic fit around x with step h; returns the
// fitted stationary point nearest x.  Fitting in scaled coordinates (units of
// h, centered values) keeps the design matrix well conditioned.
double cubic_polish(const std::function<double(double)>& f, double x,
                    double h) {
  constexpr int kHalf = 4;
  constexpr int kPoints = 2 * kHalf + 1;
  Eigen::Matrix<double, kPoints, 4> design;
  Eigen::Matrix<double, kPoints, 1> values;
  for (int i = 0; i < kPoints; ++i) {
    const double k = static_cast<double>(i - kHalf);
    design(i, 0) = 1.0;
    design(i, 1) = k;
    design(i, 2) = k * k;
    design(i, 3) = k * k * k;
    values(i) = f(x + k * h);
  }
  const double offset = values(kHalf);
  values.array() -= offset;
  const Eigen::Vector4d coef =
      design.colPivHouseholderQr().solve(values);
  const double a1 = coef(1), a2 = coef(2), a3 = coef(3);
  // stationary point of a1 k + a2 k^2 + a3 k^3 nearest the center
  double k_star;
  const double disc = 4.0 * a2 * a2 - 12.0 * a3 * a1;
  if (a3 == 0.0 || disc < 0.0) {
    if (a2 == 0.0) return x;
    k_star = -a1 / (2.0 * a2);
  } else {
    const double root = std::sqrt(disc);
    const double k1 = (-2.0 * a2 + root) / (6.0 * a3);
    const double k2 = (-2.0 * a2 - root) / (6.0 * a3);
    k_star = std::abs(k1) < std::abs(k2) ? k1 : k2;
  }
  k_star = std::clamp(k_star, -static_cast<double>(kHalf),
                      static_cast<double>(kHalf));
  return x + k_star * h;
}

OptimizationResult minimize_impl(const std::function<double(double)>& f,
                                 double a, double b, int grid_points) {
  // coarse grid: bracket the global minimum
  std::vector<double> xs(static_cast<std::size_t>(grid_points));
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double x =
        a + (b - a) * static_cast<double>(i) / (grid_points - 1);
    xs[static_cast<std::size_t>(i)] = x;
    const double v = f(x);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = xs[static_cast<std::size_t>(std::max(best - 1, 0))];
  double hi = xs[static_cast<std::size_t>(
      std::min(best + 1, grid_points - 1))];

  // golden-section refinement
  int iterations = 0;
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > kGoldenTol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = f(x2);
    }
    ++iterations;
  }
  double x = 0.5 * (lo + hi);
  double fx = f(x);

  // plateau polish: coarse pass then two fine passes, step capped by the
  // distance to the interval edges so the stencil never straddles a pole
  constexpr struct {
    double cap, edge_fraction;
  } kSchedule[] = {{1e-3, 0.01}, {5e-5, 0.001}, {5e-5, 0.001}};
  for (const auto& step : kSchedule) {
    const double margin = std::min(x - a, b - x);
    const double h = std::min(step.cap, step.edge_fraction * margin);
    if (h <= 0.0) break;
    // Near the minimum the objective is flat to rounding noise, so comparing
    // f(candidate) against f(x) would randomly veto improving steps; trust the
    // fit (a bad step is bounded by the 4h clamp and the next pass recovers).
    const double candidate = cubic_polish(f, x, h);
    const double fc = f(candidate);
    if (std::isfinite(candidate) && std::isfinite(fc)) {
      x = candidate;
      fx = fc;
    }
  }

  OptimizationResult res;
  res.phi_star = x;
  res.objective = fx;
  res.iterations = iterations;
  res.bracket_width = hi - lo;
  return res;
}

}  // namespace

double objective_at(const NliConfig& cfg, Objective objective, double phi) {
  NliConfig probe = cfg;
  probe.phi = phi;
  if (cfg.flavor == Flavor::Degenerate) {
    return objective == Objective::Detected
               ? deg::phase_uncertainty_detected(probe)
               : deg::phase_uncertainty(probe);
  }
  return nd::port_phase_uncertainty(probe, port_of(cfg.flavor),
                                    objective == Objective::Detected);
}

OptimizationResult minimize_on(const NliConfig& cfg, Objective objective,
                               double lo, double hi, int grid_points) {
  if (!(hi > lo) || grid_points < 8) {
    throw std::invalid_argument("minimize_on: bad interval or grid");
  }
  if (fringe_contrast(cfg) <= 0.0) {
    throw no_interference_error(
        "minimize_uncertainty: zero fringe contrast, uncertainty diverges "
        "everywhere");
  }
  auto f = [&](double phi) { return objective_at(cfg, objective, phi); };
  OptimizationResult res = minimize_impl(f, lo, hi, grid_points);
  res.n_at_star = mean_at(cfg, objective, res.phi_star);
  return res;
}

OptimizationResult minimize_uncertainty(const NliConfig& cfg,
                                        Objective objective) {
  return minimize_on(cfg, objective, kEdgeGap, pi - kEdgeGap);
}

NliConfig with_axis_value(const NliConfig& base, Axis axis, double value) {
  NliConfig cfg = base;
  switch (axis) {
    case Axis::InternalLoss:
      cfg.loss_1 = loss_from_T(1.0 - value);
      if (is_nondegenerate(cfg.flavor)) cfg.loss_2 = loss_from_T(1.0 - value);
      break;
    case Axis::GainA:
      cfg.gain_a = gain_from_v(value);
      break;
    case Axis::GainB:
      cfg.gain_b = gain_from_v(value);
      break;
    case Axis::Eta:
      cfg.detection_1 = detection_from_eta(value);
      cfg.detection_2 = detection_from_eta(value);
      break;
    case Axis::ArmLoss1:
      cfg.loss_1 = loss_from_T(value);
      break;
    case Axis::ArmLoss2:
      if (!is_nondegenerate(cfg.flavor)) {
        throw std::invalid_argument(
            "sweep: arm-2 loss axis requires a nondegenerate flavor");
      }
      cfg.loss_2 = loss_from_T(value);
      break;
    default:
      throw std::invalid_argument("sweep: unknown axis");
  }
  return cfg;
}

std::vector<OptimizationResult> sweep(const NliConfig& base, Axis axis,
                                      const std::vector<double>& grid,
                                      Objective objective) {
  if (grid.empty()) {
    throw std::invalid_argument("sweep: empty grid");
  }
  std::vector<OptimizationResult> results(grid.size());
  parallel_for(static_cast<int>(grid.size()), [&](int i) {
    const NliConfig cfg =
        with_axis_value(base, axis, grid[static_cast<std::size_t>(i)]);
    results[static_cast<std::size_t>(i)] =
        minimize_uncertainty(cfg, objective);
  });
  return results;
}

}  // namespace nli::opt
