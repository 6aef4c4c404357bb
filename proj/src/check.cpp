#include "coupler/check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "coupler/analytic.hpp"
#include "coupler/dynamics.hpp"
#include "coupler/errors.hpp"
#include "coupler/fock.hpp"
#include "coupler/gaussian_stats.hpp"
#include "coupler/presets.hpp"
#include "coupler/shortlen.hpp"
#include "coupler/sweep.hpp"

namespace coupler {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckResult below(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), value, tol, std::isfinite(value) && value < tol, std::move(detail)};
}

CheckResult analytic_check(const std::string& label, const ValidatedParams& v, double tol) {
  const Propagator p(build_drift_matrix(v));
  double worst = 0.0;
  for (double z : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    worst = std::max(worst, max_abs_difference(analytic_propagator(v, z), p(z)));
  }
  return below(label + ": numerical vs analytic propagator", worst, tol, "z in {0.1,0.5,1,2,5}");
}

CheckResult shortlen_check(const std::string& label, const ValidatedParams& v) {
  const Propagator p(build_drift_matrix(v));
  const double z = 1e-2;
  const double e1 = max_abs_difference(short_propagator(v, z), p(z));
  const double e2 = max_abs_difference(short_propagator(v, z / 2), p(z / 2));
  const double ratio = e2 > 0.0 ? e1 / e2 : 0.0;
  CheckResult r{label + ": short-length error ratio z=1e-2 vs 5e-3", ratio, 8.0, false,
                "expected in [7, 9]"};
  // Exactly representable short-length solutions (no cubic term) pass trivially.
  r.passed = (e1 < 1e-14) || (ratio >= 7.0 && ratio <= 9.0);
  return r;
}

// Smallest supported oracle subsystem closed under the couplings, if any.
std::optional<std::vector<Mode>> closed_subsystem(const CouplerParams& p) {
  const std::vector<std::vector<Mode>> candidates{
      {Mode::S1, Mode::V1},
      {Mode::A1, Mode::V1},
      {Mode::S1, Mode::A1, Mode::V1},
      {Mode::S1, Mode::V1, Mode::S2, Mode::V2},
      {Mode::A1, Mode::V1, Mode::A2, Mode::V2},
  };
  for (const auto& modes : candidates) {
    fock::FockConfig cfg{modes, 4, p};
    try {
      fock::validate_config(cfg);
      return modes;
    } catch (const UnsupportedConfiguration&) {
    }
  }
  return std::nullopt;
}

std::vector<CheckResult> oracle_checks(const std::string& label, const CouplerParams& p,
                                       const std::vector<Mode>& modes,
                                       const std::array<fock::FockInput, kModeCount>& in, double z,
                                       int cutoff) {
  fock::FockConfig cfg{modes, cutoff, p};
  const fock::FockBasis basis(cfg);
  const fock::SparseOperator h = fock::build_hamiltonian(cfg);
  const fock::FockMixture m = fock::evolve(cfg, h, fock::initial_mixture(cfg, in), z);

  InputSet gi{};
  for (int k = 0; k < kModeCount; ++k) {
    gi[static_cast<std::size_t>(k)].xi = in[static_cast<std::size_t>(k)].xi;
    gi[static_cast<std::size_t>(k)].n_ch = in[static_cast<std::size_t>(k)].n_th;
  }
  const ValidatedParams v = validate_params(p);
  const GaussianState s = evolve_state(propagator(build_drift_matrix(v), z), build_input_state(gi));

  double dp = 0.0, dlam = 0.0, dn = 0.0;
  for (std::size_t a = 0; a < modes.size(); ++a) {
    const double nf = fock::mean_photons(basis, m, modes[a]);
    const double ng = s.mean_photons(modes[a]);
    dn = std::max(dn, std::abs(nf - ng) / std::max(ng, 1e-3));
    for (std::size_t b = a; b < modes.size(); ++b) {
      const ModeSelection sel = a == b ? ModeSelection(modes[a]) : ModeSelection(modes[a], modes[b]);
      const fock::FockStatistics f = fock::fock_statistics(basis, m, sel);
      const MomentsAndDistribution g = moments_and_distribution(s, sel, 2, 8);
      for (int n = 0; n <= 8; ++n) {
        dp = std::max(dp, std::abs(f.p_n[static_cast<std::size_t>(n)] - g.p_n[static_cast<std::size_t>(n)]));
      }
      dlam = std::max(dlam, std::abs(f.lambda - principal_squeeze(s, sel)));
    }
  }
  return {below(label + ": oracle p(n<=8)", dp, 1e-4),
          below(label + ": oracle lambda", dlam, 1e-3),
          below(label + ": oracle <n> relative", dn, 1e-3)};
}

}  // namespace

std::vector<CheckResult> run_check_suite(const CheckOptions& opt) {
  std::vector<CheckResult> out;

  {
    CouplerParams p;
    p.gS1 = p.gS2 = 1.0;
    p.gA1 = p.gA2 = 2.0;
    p.kappaS = 1.0;
    p.kappaA = -1.0;
    out.push_back(analytic_check("closed-form fixture", validate_params(p), opt.propagator_tol));
  }
  for (const std::string& name : preset_names()) {
    const ScenarioConfig cfg = preset(name);
    const ValidatedParams v = validate_params(cfg.params);
    out.push_back(shortlen_check(name, v));

    const SweepResult r = run_scenario(cfg);
    out.push_back(below(name + ": conservation drift", conservation_residual(r.states), 1e-9));
    const Propagator prop(build_drift_matrix(v));
    double rel = 0.0;
    for (double z : r.z) {
      const BogoliubovTransform t = prop(z);
      const double scale = 1.0 + t.U.squaredNorm();
      rel = std::max(rel, symplectic_residual(t) / scale);
    }
    out.push_back(below(name + ": symplectic residual / (1 + |U|^2)", rel, 1e-12));
  }
  {
    CouplerParams p;
    p.gS1 = 0.3;
    p.gA1 = 0.6;
    std::array<fock::FockInput, kModeCount> in{};
    in[index(Mode::S1)].xi = cd(0.0, 0.5);
    in[index(Mode::A1)].xi = cd(0.5, 0.0);
    in[index(Mode::V1)].xi = cd(0.3, -0.2);
    for (double z : {0.25, 0.5}) {
      for (const CheckResult& c : oracle_checks("S1A1V1 z=" + sci(z), p, {Mode::S1, Mode::A1, Mode::V1},
                                                in, z, 12)) {
        out.push_back(c);
      }
    }
    std::array<fock::FockInput, kModeCount> raman{};
    raman[index(Mode::S1)].xi = cd(0.0, -0.4);
    raman[index(Mode::A1)].xi = cd(0.0, 0.4);
    raman[index(Mode::V1)].n_th = 0.1;
    for (const CheckResult& c :
         oracle_checks("S1A1V1 thermal", p, {Mode::S1, Mode::A1, Mode::V1}, raman, 0.5, 12)) {
      out.push_back(c);
    }
  }
  {
    CouplerParams p;
    p.gS1 = 0.3;
    p.gS2 = cd(0.0, 0.2);
    p.kappaS = cd(0.4, 0.3);
    std::array<fock::FockInput, kModeCount> in{};
    in[index(Mode::S1)].xi = cd(0.0, 0.3);
    in[index(Mode::V2)].xi = 0.3;
    for (const CheckResult& c : oracle_checks("S1V1S2V2", p, {Mode::S1, Mode::V1, Mode::S2, Mode::V2},
                                              in, 0.5, 8)) {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<CheckResult> run_scenario_checks(const ScenarioConfig& cfg, const CheckOptions& opt) {
  std::vector<CheckResult> out;
  const ValidatedParams v = validate_params(cfg.params);
  if (conditions_satisfied(v)) out.push_back(analytic_check(cfg.name, v, opt.propagator_tol));
  out.push_back(shortlen_check(cfg.name, v));

  const SweepResult r = run_scenario(cfg);
  out.push_back(below(cfg.name + ": conservation drift", conservation_residual(r.states), 1e-9));

  if (const auto modes = closed_subsystem(cfg.params)) {
    // Vacuum inputs, and a length short enough for a cutoff-12 truncation.
    double g = 0.0;
    for (cd c : {cfg.params.gS1, cfg.params.gA1, cfg.params.gS2, cfg.params.gA2, cfg.params.kappaS,
                 cfg.params.kappaA}) {
      g = std::max(g, std::abs(c));
    }
    const double z = g > 0.0 ? std::min(0.5, 0.3 / g) : 0.5;
    const int cutoff = modes->size() > 3 ? 8 : 12;
    for (const CheckResult& c : oracle_checks(cfg.name, cfg.params, *modes, {}, z, cutoff)) out.push_back(c);
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace coupler
