#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coupler/scenario.hpp"

namespace coupler {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  // Numerical vs closed-form propagator tolerance (elementwise).
  double propagator_tol = 1e-8;
};

// Cross-method suite on built-in fixtures: numerical vs analytic propagator,
// short-length error order, Gaussian pipeline vs Fock oracle, conservation
// and symplectic structure along every preset.
std::vector<CheckResult> run_check_suite(const CheckOptions& opt = {});

// The same comparisons restricted to one scenario: analytic when its
// parameters lie on the closed-form manifold, short-length order always,
// the oracle when a supported subsystem is closed under its couplings.
std::vector<CheckResult> run_scenario_checks(const ScenarioConfig& cfg, const CheckOptions& opt = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace coupler
