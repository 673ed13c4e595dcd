// Command-line front end: parameter sweeps, figure/table data sets as
// CSV/JSON, validation suites, and Monte-Carlo estimator runs.
//
// The CLI performs no physics arithmetic of its own: every emitted number
// comes from a library call, and output rows are written in grid order
// regardless of evaluation order.  Identical invocations with identical
// seeds produce byte-identical files.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nli/core.hpp"
#include "nli/degenerate.hpp"
#include "nli/estimation.hpp"
#include "nli/mutation.hpp"
#include "nli/nondegenerate.hpp"
#include "nli/optimizer.hpp"
#include "nli/validate.hpp"

namespace {

using nlohmann::ordered_json;

struct io_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Round-trippable float rendering (17 significant digits) for CSV cells.
std::string render(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!std::cout) throw io_failure("cannot write to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_failure("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw io_failure("error while writing '" + path + "'");
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << row[i];
    }
    out << '\n';
  }
  return out.str();
}

/// Rows-of-named-values rendered as either CSV or a JSON array.
std::string render_table(const std::string& format,
                         const std::vector<std::string>& header,
                         const std::vector<std::vector<ordered_json>>& rows) {
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json obj;
      for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
      arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::string> line;
    line.reserve(row.size());
    for (const auto& v : row) {
      if (v.is_number_float()) {
        line.push_back(render(v.get<double>()));
      } else if (v.is_string()) {
        line.push_back(v.get<std::string>());
      } else {
        line.push_back(v.dump());
      }
    }
    cells.push_back(std::move(line));
  }
  return csv_table(header, cells);
}

nli::Flavor flavor_from_name(const std::string& name) {
  if (name == "degenerate") return nli::Flavor::Degenerate;
  if (name == "port1") return nli::Flavor::NondegeneratePort1;
  if (name == "port2") return nli::Flavor::NondegeneratePort2;
  if (name == "sum") return nli::Flavor::NondegenerateSum;
  throw std::invalid_argument("unknown flavor: " + name);
}

/// Shared physical-parameter flags; each subcommand attaches the subset it
/// consumes.
struct ConfigFlags {
  double v_a = 5.0;
  double v_b = 5.0;
  double rd = 0.0;
  double t1 = 1.0;
  double t2 = 1.0;
  double eta = 1.0;
  double phi = nli::pi / 10.0;
  std::string flavor = "degenerate";

  nli::NliConfig build() const {
    const nli::Flavor f = flavor_from_name(flavor);
    if (f == nli::Flavor::Degenerate) {
      return nli::make_degenerate(v_a, v_b, 1.0 - rd, eta, phi);
    }
    return nli::make_nondegenerate(f, v_a, v_b, t1, t2, eta, eta, phi);
  }
};

int run_fig2(const std::string& out, const std::string& format,
             std::vector<double> vs, std::vector<double> etas,
             std::vector<double> phis) {
  if (vs.empty()) vs = {5.0, 25.0};
  if (phis.empty()) phis = {0.0, nli::pi / 10.0, nli::pi};
  if (etas.empty()) {
    for (int i = 1; i <= 20; ++i) etas.push_back(0.05 * i);
  }
  std::vector<std::vector<ordered_json>> rows;
  for (const double v : vs) {
    for (const double phi : phis) {
      for (const double eta : etas) {
        rows.push_back(
            {eta, v, phi, nli::deg::detection_loss_deviation(v, eta, phi)});
      }
    }
  }
  write_text(out, render_table(format, {"eta", "V", "phi", "deviation"}, rows));
  return 0;
}

int run_fig3(const std::string& out, const std::string& format,
             double v_strong, double v_weak, std::vector<double> rds) {
  if (rds.empty()) {
    for (int i = 0; i <= 10; ++i) rds.push_back(0.05 * i);
  }
  struct Case {
    const char* name;
    nli::NliConfig base;
  };
  const Case cases[] = {
      {"balanced-strong",
       nli::make_degenerate(v_strong, v_strong, 1.0, 1.0, 1.0)},
      {"stronger-source",
       nli::make_degenerate(v_strong, v_weak, 1.0, 1.0, 1.0)},
      {"stronger-analyzer",
       nli::make_degenerate(v_weak, v_strong, 1.0, 1.0, 1.0)},
  };
  // one optimization per (case, R) pair; evaluation may parallelize but
  // rows are emitted in grid order
  std::vector<std::vector<ordered_json>> rows(rds.size() * 3);
  std::vector<std::vector<nli::opt::OptimizationResult>> results;
  for (const Case& kase : cases) {
    results.push_back(nli::opt::sweep(kase.base, nli::opt::Axis::InternalLoss,
                                      rds, nli::opt::Objective::Bare));
  }
  for (std::size_t i = 0; i < rds.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      nli::NliConfig at_min = nli::opt::with_axis_value(
          cases[k].base, nli::opt::Axis::InternalLoss, rds[i]);
      at_min.phi = results[k][i].phi_star;
      const nli::PhotonStatistics stats{nli::deg::photon_number(at_min),
                                        nli::deg::photon_variance(at_min)};
      rows[3 * i + k] = {rds[i], cases[k].name, stats.inverse_fano(),
                         results[k][i].objective};
    }
  }
  write_text(out, render_table(format,
                               {"R_d", "case", "inverse_fano_at_min",
                                "delta_phi_sq_min"},
                               rows));
  return 0;
}

int run_table1(const std::string& out, const std::string& format,
               const ConfigFlags& flags) {
  if (format == "csv") {
    throw std::invalid_argument(
        "table1 output is hierarchical; only --format json is supported");
  }
  const double va = flags.v_a, vb = flags.v_b;
  const nli::NliConfig deg_cfg =
      nli::make_degenerate(va, vb, flags.t1, 1.0, flags.phi);
  const nli::NliConfig nd_cfg = nli::make_nondegenerate(
      nli::Flavor::NondegenerateSum, va, vb, flags.t1, flags.t2, 1.0, 1.0,
      flags.phi);

  ordered_json doc;
  doc["parameters"] = {{"v_a", va},       {"v_b", vb},
                       {"t_1", flags.t1}, {"t_2", flags.t2},
                       {"phi", flags.phi}};

  const nli::est::FringeParams deg_fringe = nli::est::detected_fringe(deg_cfg);
  doc["rows"]["degenerate"] = {
      {"amplitude", deg_fringe.amplitude},
      {"contrast", deg_fringe.contrast},
      {"mean_n", nli::deg::photon_number(deg_cfg)},
      {"variance", nli::deg::photon_variance(deg_cfg)},
      {"slope", nli::deg::photon_number_slope(deg_cfg)},
      {"optimal_uncertainty_lossless",
       nli::deg::min_phase_uncertainty_lossless(va, vb)},
  };
  const struct {
    const char* name;
    nli::nd::Port port;
  } ports[] = {{"port_1", nli::nd::Port::One},
               {"port_2", nli::nd::Port::Two},
               {"sum", nli::nd::Port::Sum}};
  for (const auto& p : ports) {
    const nli::nd::PortSignal sig = nli::nd::port_signal(nd_cfg, p.port);
    doc["rows"][p.name] = {
        {"amplitude", sig.amplitude},
        {"contrast", sig.contrast},
        {"mean_n", nli::nd::port_mean(nd_cfg, p.port)},
        {"variance", nli::nd::port_variance(nd_cfg, p.port)},
        {"slope", nli::nd::port_mean_slope(nd_cfg, p.port)},
        {"optimal_uncertainty_lossless",
         nli::nd::min_port_uncertainty_lossless(va, vb)},
    };
  }
  write_text(out, doc.dump(2) + "\n");
  return 0;
}

int run_sweep(const std::string& out, const std::string& format,
              const ConfigFlags& flags, const std::string& axis_name,
              const std::vector<double>& grid,
              const std::string& objective_name) {
  nli::opt::Axis axis;
  if (axis_name == "R_d") {
    axis = nli::opt::Axis::InternalLoss;
  } else if (axis_name == "V_A") {
    axis = nli::opt::Axis::GainA;
  } else if (axis_name == "V_B") {
    axis = nli::opt::Axis::GainB;
  } else if (axis_name == "eta") {
    axis = nli::opt::Axis::Eta;
  } else if (axis_name == "T_1") {
    axis = nli::opt::Axis::ArmLoss1;
  } else if (axis_name == "T_2") {
    axis = nli::opt::Axis::ArmLoss2;
  } else {
    throw CLI::ValidationError(
        "--axis", "unknown axis '" + axis_name +
                      "' (expected one of R_d, V_A, V_B, eta, T_1, T_2)");
  }
  const nli::opt::Objective objective = objective_name == "detected"
                                            ? nli::opt::Objective::Detected
                                            : nli::opt::Objective::Bare;
  const auto results =
      nli::opt::sweep(flags.build(), axis, grid, objective);
  std::vector<std::vector<ordered_json>> rows;
  rows.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    rows.push_back({axis_name, grid[i], results[i].phi_star,
                    results[i].objective, results[i].n_at_star});
  }
  write_text(out, render_table(format,
                               {"axis", "value", "phi_star",
                                "delta_phi_sq_min", "n_at_min"},
                               rows));
  return 0;
}

int run_mc(const std::string& out, const std::string& format,
           const ConfigFlags& flags, const std::string& sampler_name, long p,
           long reps, std::uint64_t seed) {
  const nli::est::Sampler sampler = sampler_name == "fock"
                                        ? nli::est::Sampler::ExactFock
                                        : nli::est::Sampler::GaussianApprox;
  const nli::est::EstimatorRun run =
      nli::est::monte_carlo_uncertainty(flags.build(), p, reps, sampler, seed);
  if (format == "csv") {
    write_text(out,
               csv_table({"sampler", "true_phi", "p", "estimate", "se_sq",
                          "repetitions", "rng_seed", "clamp_events"},
                         {{sampler_name, render(run.true_phi),
                           std::to_string(run.p), render(run.estimate),
                           render(run.se_sq), std::to_string(run.repetitions),
                           std::to_string(run.rng_seed),
                           std::to_string(run.clamp_events)}}));
    return 0;
  }
  ordered_json doc = {{"sampler", sampler_name},
                      {"true_phi", run.true_phi},
                      {"p", run.p},
                      {"estimate", run.estimate},
                      {"se_sq", run.se_sq},
                      {"repetitions", run.repetitions},
                      {"rng_seed", run.rng_seed},
                      {"clamp_events", run.clamp_events}};
  write_text(out, doc.dump(2) + "\n");
  return 0;
}

int run_validate(const std::string& out, const std::string& tier_name,
                 std::uint64_t seed) {
  const nli::check::Tier tier = tier_name == "full" ? nli::check::Tier::Full
                                                    : nli::check::Tier::Fast;
  const auto results = nli::check::run_suite(tier, seed);
  // wall-time fields are deliberately not printed: the report must be
  // byte-identical across runs for a fixed seed
  std::ostringstream report;
  int passed = 0;
  for (const auto& r : results) {
    report << "check " << r.name << ": " << (r.passed ? "PASS" : "FAIL")
           << "  max_error=" << render(r.max_error)
           << "  tolerance=" << render(r.tolerance);
    if (!r.note.empty()) report << "  note: " << r.note;
    report << '\n';
    passed += r.passed ? 1 : 0;
  }
  report << "validation " << tier_name << " tier: " << passed << "/"
         << results.size() << " checks passed\n";
  write_text(out, report.str());
  return nli::check::all_passed(results) ? 0 : 1;
}

void attach_config_flags(CLI::App* cmd, ConfigFlags& flags,
                         bool with_flavor = true) {
  cmd->add_option("--v-a", flags.v_a, "source gain V_A (mean photons)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--v-b", flags.v_b, "analyzer gain V_B")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--rd", flags.rd, "internal loss R_d (degenerate flavor)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--t1", flags.t1, "arm-1 transmittance T_1")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--t2", flags.t2, "arm-2 transmittance T_2")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--eta", flags.eta, "detector efficiency")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--phi", flags.phi, "interference phase (rad)")
      ->capture_default_str();
  if (with_flavor) {
    cmd->add_option("--flavor", flags.flavor,
                    "observed signal: degenerate, port1, port2, sum")
        ->check(CLI::IsMember({"degenerate", "port1", "port2", "sum"}))
        ->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  nli::fault::apply_from_env();  // NLI_MUTATE, for mutation testing

  CLI::App app{
      "Phase sensitivity of gain-unbalanced nonlinear interferometers"};
  app.require_subcommand(1);
  // flags > config file > built-in defaults; subcommand parameters live in a
  // [subcommand] section of the file
  app.set_config("--config", "", "configuration file (key=value lines)");

  std::string out = "-";
  std::string format;  // per-command default applied after parsing

  auto add_output = [&](CLI::App* cmd, const char* default_format) {
    cmd->add_option("--out", out, "output path ('-' = stdout)")
        ->capture_default_str();
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_str(default_format);
    cmd->fallthrough();  // lets --config appear after the subcommand name
  };

  // fig2: detection-loss deviation versus eta
  auto* fig2 = app.add_subcommand(
      "fig2", "relative deviation of the detected phase uncertainty");
  std::vector<double> fig2_v, fig2_eta, fig2_phi;
  fig2->add_option("--v", fig2_v, "balanced gain values (default 5 25)");
  fig2->add_option("--eta", fig2_eta,
                   "detector efficiencies (default 0.05..1.00)");
  fig2->add_option("--phi", fig2_phi, "phases (default 0 pi/10 pi)");
  add_output(fig2, "csv");

  // fig3: internal-loss sweep of the three gain arrangements
  auto* fig3 = app.add_subcommand(
      "fig3", "optimal uncertainty and inverse Fano factor vs internal loss");
  double v_strong = 25.0, v_weak = 5.0;
  std::vector<double> fig3_rd;
  fig3->add_option("--v-strong", v_strong, "stronger gain")
      ->capture_default_str();
  fig3->add_option("--v-weak", v_weak, "weaker gain")->capture_default_str();
  fig3->add_option("--rd", fig3_rd, "internal-loss grid (default 0..0.5)");
  add_output(fig3, "csv");

  // table1: all flavor-comparison cells at one parameter point
  auto* table1 = app.add_subcommand(
      "table1", "per-flavor fringe, variance and optimum summary");
  ConfigFlags table1_flags;
  attach_config_flags(table1, table1_flags, /*with_flavor=*/false);
  add_output(table1, "json");

  // sweep: numeric optimum along one parameter axis
  auto* sweep = app.add_subcommand(
      "sweep", "minimize the uncertainty along a parameter grid");
  ConfigFlags sweep_flags;
  std::string axis_name, objective_name = "bare";
  std::vector<double> sweep_grid;
  sweep->add_option("--axis", axis_name,
                    "one of R_d, V_A, V_B, eta, T_1, T_2")
      ->required();
  sweep->add_option("--grid", sweep_grid, "axis values")
      ->required()
      ->expected(-1);
  sweep->add_option("--objective", objective_name, "bare or detected")
      ->check(CLI::IsMember({"bare", "detected"}))
      ->capture_default_str();
  attach_config_flags(sweep, sweep_flags);
  add_output(sweep, "csv");

  // mc: Monte-Carlo estimator campaign
  auto* mc = app.add_subcommand("mc", "Monte-Carlo phase-estimation run");
  ConfigFlags mc_flags;
  std::string sampler_name = "gaussian";
  long mc_p = 100000, mc_reps = 400;
  std::uint64_t mc_seed = 1;
  mc->add_option("--sampler", sampler_name, "gaussian or fock")
      ->check(CLI::IsMember({"gaussian", "fock"}))
      ->capture_default_str();
  mc->add_option("--p", mc_p, "shots averaged per estimate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mc->add_option("--reps", mc_reps, "independent repetitions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mc->add_option("--seed", mc_seed, "rng seed")->capture_default_str();
  attach_config_flags(mc, mc_flags);
  add_output(mc, "json");

  // validate: self-check suites
  auto* validate = app.add_subcommand("validate", "run the validation suite");
  std::string tier_name = "fast";
  std::uint64_t validate_seed = 1234;
  validate->add_option("--tier", tier_name, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}))
      ->capture_default_str();
  validate->add_option("--seed", validate_seed, "rng seed for config draws")
      ->capture_default_str();
  validate->add_option("--out", out, "report path ('-' = stdout)")
      ->capture_default_str();
  validate->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(fig2)) {
      if (format.empty()) format = "csv";
      return run_fig2(out, format, fig2_v, fig2_eta, fig2_phi);
    }
    if (app.got_subcommand(fig3)) {
      if (format.empty()) format = "csv";
      return run_fig3(out, format, v_strong, v_weak, fig3_rd);
    }
    if (app.got_subcommand(table1)) {
      if (format.empty()) format = "json";
      return run_table1(out, format, table1_flags);
    }
    if (app.got_subcommand(sweep)) {
      if (format.empty()) format = "csv";
      return run_sweep(out, format, sweep_flags, axis_name, sweep_grid,
                       objective_name);
    }
    if (app.got_subcommand(mc)) {
      if (format.empty()) format = "json";
      return run_mc(out, format, mc_flags, sampler_name, mc_p, mc_reps,
                    mc_seed);
    }
    if (app.got_subcommand(validate)) {
      return run_validate(out, tier_name, validate_seed);
    }
  } catch (const io_failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;  // unreachable with require_subcommand(1)
}
