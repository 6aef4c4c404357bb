#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coupler/model.hpp"

namespace coupler {

// What to report for a mode selection. Column suffixes in the CSV output:
//   moments    -> meanW, w2..w<k_max>
//   variance   -> varW
//   squeeze    -> lambda
//   quadrature -> var_p, var_q, uncertainty
//   pn         -> photon-number distribution, written to the .pn.csv file
//   all        -> moments, variance, squeeze and quadrature
enum class Quantity { Moments, Variance, Squeeze, Quadrature, Distribution, All };

std::string_view quantity_name(Quantity q);
Quantity parse_quantity(std::string_view text);

struct Observable {
  Quantity quantity;
  ModeSelection modes;

  // "moments:S1,A1"
  std::string to_string() const;
  static Observable parse(std::string_view text);

  friend bool operator==(const Observable& a, const Observable& b) {
    return a.quantity == b.quantity && a.modes == b.modes;
  }
};

inline constexpr int kMaxPhotonCutoff = 512;
inline constexpr int kMaxReducedMoment = 8;

struct ScenarioConfig {
  std::string name = "scenario";
  CouplerParams params{};
  InputSet inputs{};
  double z_max = 1.0;
  int z_steps = 101;  // grid points, both ends included
  std::vector<Observable> observables;
  int n_max = 64;
  int k_max = 5;

  // z_k = z_max * k / (z_steps - 1)
  std::vector<double> z_grid() const;
};

// Throws ValidationError when z_max, z_steps, n_max or k_max are out of range.
void validate_scenario(const ScenarioConfig& cfg);

// Parses the sectioned key-value scenario document:
//
//   [params]      gS1 gA1 gS2 gA2 kappaS kappaA   complex literals "a+bi"
//                 dkS1 dkA1 dkS2 dkA2 dKS dKA     real, must be 0
//   [inputs.S1]   xi (complex) r theta n_ch        one section per mode
//   [run]         name z_max z_steps n_max k_max
//   [observables] one entry per line, e.g. moments:S1,A1 or "squeeze:S1V1"
//
// Values may be quoted; '#' starts a comment. Unknown keys, malformed
// literals and a missing [params] section raise ParseError.
ScenarioConfig parse_scenario(std::string_view text);

// Canonical document; parse_scenario(serialize_scenario(c)) reproduces c.
std::string serialize_scenario(const ScenarioConfig& cfg);

// "a+bi" literals: "2i", "-2i", "1", "1.5-0.5i", "i", "-i", "1e-3+2e-1i".
cd parse_complex(std::string_view text);
std::string format_complex(cd v);

}  // namespace coupler
