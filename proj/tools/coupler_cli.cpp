#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "coupler/check.hpp"
#include "coupler/dynamics.hpp"
#include "coupler/errors.hpp"
#include "coupler/fock.hpp"
#include "coupler/gaussian_stats.hpp"
#include "coupler/presets.hpp"
#include "coupler/scenario.hpp"
#include "coupler/sweep.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kValidation = 2, kNumerical = 3, kCheckFailed = 4 };

struct Source {
  std::string scenario_file;
  std::string preset_name;
};

coupler::ScenarioConfig load(const Source& src) {
  if (!src.preset_name.empty()) return coupler::preset(src.preset_name);
  std::ifstream f(src.scenario_file, std::ios::binary);
  if (!f) throw coupler::ValidationError("cannot read scenario file '" + src.scenario_file + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return coupler::parse_scenario(ss.str());
}

void add_source_options(CLI::App* cmd, Source& src) {
  auto* group = cmd->add_option_group("source", "Scenario source");
  group->add_option("--scenario", src.scenario_file, "Scenario document");
  group->add_option("--preset", src.preset_name, "Built-in figure preset (see list-presets)");
  group->require_option(1);
}

int report(const std::vector<coupler::CheckResult>& results) {
  for (const coupler::CheckResult& r : results) {
    std::printf("%s  %-60s value=%.3e tol=%.1e", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.value,
                r.tolerance);
    if (!r.detail.empty()) std::printf("  (%s)", r.detail.c_str());
    std::printf("\n");
  }
  const bool ok = coupler::all_passed(results);
  std::printf("%s\n", ok ? "all checks passed" : "check suite FAILED");
  return ok ? kOk : kCheckFailed;
}

int cmd_run(const Source& src, const std::string& out, std::optional<double> z_max,
            std::optional<int> steps, bool check) {
  coupler::ScenarioConfig cfg = load(src);
  if (z_max) cfg.z_max = *z_max;
  if (steps) cfg.z_steps = *steps;
  const coupler::SweepResult r = coupler::run_scenario(cfg);
  if (out.empty()) {
    std::cout << coupler::format_csv(r);
    if (!r.distributions.empty()) {
      std::cerr << "note: photon-number distributions are written only with --out\n";
    }
  } else {
    for (const std::string& path : coupler::emit_csv(r, out)) std::cerr << "wrote " << path << "\n";
  }
  if (check) {
    std::fflush(stdout);
    const auto results = coupler::run_scenario_checks(cfg);
    bool ok = true;
    for (const coupler::CheckResult& c : results) {
      std::fprintf(stderr, "%s  %s value=%.3e tol=%.1e\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                   c.value, c.tolerance);
      ok = ok && c.passed;
    }
    if (!ok) return kCheckFailed;
  }
  return kOk;
}

int cmd_oracle(const Source& src, const std::string& modes_text, const std::string& select,
               int cutoff, double z) {
  const coupler::ScenarioConfig cfg = load(src);
  std::vector<coupler::Mode> modes;
  std::stringstream ss(modes_text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    const auto m = coupler::parse_mode(tok);
    if (!m) throw coupler::ValidationError("unknown mode '" + tok + "'");
    modes.push_back(*m);
  }
  const coupler::fock::FockConfig fc{modes, cutoff, cfg.params};
  std::array<coupler::fock::FockInput, coupler::kModeCount> in{};
  for (coupler::Mode m : modes) {
    const coupler::InputSpec& s = cfg.inputs[static_cast<std::size_t>(coupler::index(m))];
    if (s.r != 0.0) throw coupler::UnsupportedConfiguration("oracle inputs cannot be squeezed");
    in[static_cast<std::size_t>(coupler::index(m))] = {s.xi, s.n_ch};
  }
  const coupler::fock::FockBasis basis(fc);
  const auto h = coupler::fock::build_hamiltonian(fc);
  const auto mix = coupler::fock::evolve(fc, h, coupler::fock::initial_mixture(fc, in), z);
  const coupler::ModeSelection sel = coupler::ModeSelection::parse(select);
  const auto f = coupler::fock::fock_statistics(basis, mix, sel);

  const auto v = coupler::validate_params(cfg.params);
  const coupler::GaussianState g = coupler::evolve_state(
      coupler::propagator(coupler::build_drift_matrix(v), z), coupler::build_input_state(cfg.inputs));
  const auto gm = coupler::moments_and_distribution(g, sel, 2, static_cast<int>(f.p_n.size()) - 1);

  std::printf("n,oracle,gaussian\n");
  for (std::size_t n = 0; n < f.p_n.size(); ++n) std::printf("%zu,%.12g,%.12g\n", n, f.p_n[n], gm.p_n[n]);
  std::printf("# meanW %.12g %.12g\n", f.mean_w, gm.mean_w);
  std::printf("# lambda %.12g %.12g\n", f.lambda, coupler::principal_squeeze(g, sel));
  std::printf("# boundary population %.3e\n", coupler::fock::boundary_population(basis, mix));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Raman/Brillouin coupler light-statistics simulator"};
  app.require_subcommand(1);

  Source run_src;
  std::string out;
  std::optional<double> z_max;
  std::optional<int> steps;
  bool run_check = false;
  auto* run = app.add_subcommand("run", "Sweep a scenario along z and write CSV");
  add_source_options(run, run_src);
  run->add_option("--out", out, "CSV destination (stdout when omitted)");
  run->add_option("--z-max", z_max, "Override the interaction length");
  run->add_option("--steps", steps, "Override the number of grid points");
  run->add_flag("--check", run_check, "Run cross-method checks on the scenario");

  double tol = 1e-8;
  auto* check = app.add_subcommand("check", "Run the built-in cross-method suite");
  check->add_option("--tol", tol, "Numerical vs closed-form propagator tolerance")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list-presets", "Print the preset names");

  Source oracle_src;
  std::string oracle_modes = "S1,A1,V1";
  std::string oracle_select = "S1,A1";
  int oracle_cutoff = 12;
  double oracle_z = 0.5;
  auto* oracle = app.add_subcommand("dev-oracle", "Compare a Fock-space run with the Gaussian pipeline");
  add_source_options(oracle, oracle_src);
  oracle->add_option("--modes", oracle_modes, "Closed subsystem, e.g. S1,A1,V1");
  oracle->add_option("--select", oracle_select, "Mode selection for the statistics");
  oracle->add_option("--cutoff", oracle_cutoff, "Occupation cutoff per mode");
  oracle->add_option("--z", oracle_z, "Interaction length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(run_src, out, z_max, steps, run_check);
    if (*check) {
      coupler::CheckOptions opt;
      opt.propagator_tol = tol;
      return report(coupler::run_check_suite(opt));
    }
    if (*list) {
      for (const std::string& n : coupler::preset_names()) std::printf("%s\n", n.c_str());
      return kOk;
    }
    if (*oracle) return cmd_oracle(oracle_src, oracle_modes, oracle_select, oracle_cutoff, oracle_z);
  } catch (const coupler::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const coupler::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
