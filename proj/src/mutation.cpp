#include "nli/mutation.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace nli::fault {

namespace {

struct Entry {
  const char* name;
  double Knobs::* member;
};

// Stable registration order; list() and the mutation-sensitivity suite
// iterate in this order.
constexpr Entry kRegistry[] = {
    {"deg_mean_transmitted", &Knobs::deg_mean_transmitted},
    {"deg_mean_contrast", &Knobs::deg_mean_contrast},
    {"deg_var_thermal", &Knobs::deg_var_thermal},
    {"deg_var_loss", &Knobs::deg_var_loss},
    {"det_penalty", &Knobs::det_penalty},
    {"det_deviation", &Knobs::det_deviation},
    {"opt_phase_arg", &Knobs::opt_phase_arg},
    {"opt_n_lossless", &Knobs::opt_n_lossless},
    {"opt_dphi_lossless", &Knobs::opt_dphi_lossless},
    {"opt_n_lossy", &Knobs::opt_n_lossy},
    {"opt_dphi_lossy", &Knobs::opt_dphi_lossy},
    {"port_amplitude", &Knobs::port_amplitude},
    {"port_contrast", &Knobs::port_contrast},
    {"sum_var_corr", &Knobs::sum_var_corr},
    {"sum_det_corr", &Knobs::sum_det_corr},
    {"port_opt_uncertainty", &Knobs::port_opt_uncertainty},
    {"qfi_scale", &Knobs::qfi_scale},
    {"est_contrast", &Knobs::est_contrast},
};

double Knobs::* find(const std::string& name) {
  for (const Entry& e : kRegistry) {
    if (name == e.name) return e.member;
  }
  throw std::invalid_argument("unknown mutation knob: " + name);
}

}  // namespace

Knobs& knobs() {
  static Knobs k;
  return k;
}

const std::vector<std::string>& list() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Entry& e : kRegistry) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

void set(const std::string& name, double factor) {
  knobs().*find(name) = factor;
}

double get(const std::string& name) { return knobs().*find(name); }

void reset() { knobs() = Knobs{}; }

int apply_from_env() {
  const char* env = std::getenv("NLI_MUTATE");
  if (env == nullptr) return 0;
  int applied = 0;
  std::string spec(env);
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string item = spec.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("NLI_MUTATE: expected name=factor, got '" +
                                  item + "'");
    }
    set(item.substr(0, eq), std::stod(item.substr(eq + 1)));
    ++applied;
    pos = comma + 1;
  }
  return applied;
}

}  // namespace nli::fault
