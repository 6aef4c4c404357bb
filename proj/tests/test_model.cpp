#include <cmath>
#include <random>

#include "doctest.h"

#include "coupler/errors.hpp"
#include "coupler/model.hpp"
#include "coupler/presets.hpp"
#include "coupler/scenario.hpp"
#include "support.hpp"

using namespace coupler;

TEST_SUITE("model") {

TEST_CASE("mode names and canonical order") {
  CHECK(index(Mode::S1) == 0);
  CHECK(index(Mode::V2) == 5);
  for (Mode m : kAllModes) CHECK(parse_mode(mode_name(m)) == m);
  CHECK_FALSE(parse_mode("L1").has_value());
  CHECK(exchanged(Mode::S1) == Mode::S2);
  CHECK(exchanged(Mode::V2) == Mode::V1);
}

TEST_CASE("mode selection keeps canonical order") {
  const ModeSelection a(Mode::A1, Mode::S1);
  CHECK(a.first() == Mode::S1);
  CHECK(a.second() == Mode::A1);
  CHECK(a.name() == "S1A1");
  CHECK(ModeSelection::parse("S1,A1") == a);
  CHECK(ModeSelection::parse("A1S1") == a);
  CHECK(ModeSelection::parse("V2") == ModeSelection(Mode::V2));
  CHECK(ModeSelection(Mode::S1, Mode::V2).exchanged() == ModeSelection(Mode::S2, Mode::V1));
  CHECK_THROWS_AS(ModeSelection(Mode::S1, Mode::S1), ValidationError);
  CHECK_THROWS_AS(ModeSelection::parse("S1A1V1"), ValidationError);
  CHECK_THROWS_AS(ModeSelection::parse("X3"), ValidationError);
}

TEST_CASE("input state: coherent mode") {
  InputSet in{};
  in[index(Mode::S1)].xi = cd(0.0, 2.0);
  const GaussianState s = build_input_state(in);
  CHECK(s.B(0) == 0.0);
  CHECK(s.C(0) == cd(0.0));
  CHECK(s.xi(0) == cd(0.0, 2.0));
}

TEST_CASE("input state: chaotic phonon") {
  InputSet in{};
  in[index(Mode::V1)].n_ch = 1.0;
  const GaussianState s = build_input_state(in);
  CHECK(s.B(index(Mode::V1)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.C(index(Mode::V1)) == cd(0.0));
}

TEST_CASE("input state: squeezed mode") {
  InputSet in{};
  in[index(Mode::A1)].r = 1.0;
  const GaussianState s = build_input_state(in);
  CHECK(s.B(index(Mode::A1)) == doctest::Approx(std::cosh(1.0) * std::cosh(1.0) - 1.0).epsilon(1e-14));
  CHECK(s.B(index(Mode::A1)) == doctest::Approx(1.3811).epsilon(1e-4));
  CHECK(s.C(index(Mode::A1)).real() == doctest::Approx(0.5 * std::sinh(2.0)).epsilon(1e-14));
  CHECK(s.C(index(Mode::A1)).real() == doctest::Approx(1.8134).epsilon(1e-4));
}

TEST_CASE("input state: squeeze phase enters C") {
  InputSet in{};
  in[0].r = 0.4;
  in[0].theta = 1.1;
  const GaussianState s = build_input_state(in);
  CHECK(std::abs(s.C(0) - std::polar(0.5 * std::sinh(0.8), 1.1)) < 1e-15);
}

TEST_CASE("input state: invalid specs are rejected") {
  InputSet in{};
  in[2].r = -0.1;
  CHECK_THROWS_AS(build_input_state(in), ValidationError);
  in[2].r = 0.0;
  in[2].n_ch = -1.0;
  CHECK_THROWS_AS(build_input_state(in), ValidationError);
  in[2].n_ch = NAN;
  CHECK_THROWS_AS(build_input_state(in), ValidationError);
}

TEST_CASE("input state is deterministic with zero cross terms and physical") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const InputSet in = testing::random_inputs(rng, true);
    const GaussianState a = build_input_state(in);
    const GaussianState b = build_input_state(in);
    CHECK(a.B == b.B);
    CHECK(a.C == b.C);
    CHECK(a.D == ModeMatrix::Zero());
    CHECK(a.Dbar == ModeMatrix::Zero());
    CHECK(is_physical(a));
    CHECK(min_covariance_eigenvalue(a) > -1e-9);
  }
}

TEST_CASE("state moments round-trip") {
  GaussianState s;
  s.B << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6;
  s.C(1) = cd(0.1, 0.2);
  s.D(0, 2) = s.D(2, 0) = cd(0.0, 0.3);
  s.Dbar(1, 4) = cd(0.05, -0.02);
  s.Dbar(4, 1) = std::conj(s.Dbar(1, 4));
  const GaussianState t = GaussianState::from_moments(s.xi, s.normal_moments(), s.anomalous_moments());
  CHECK((t.B - s.B).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((t.C - s.C).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((t.D - s.D).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((t.Dbar - s.Dbar).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(s.normal_moments().isApprox(s.normal_moments().adjoint()));
  CHECK(s.anomalous_moments().isApprox(s.anomalous_moments().transpose()));
}

TEST_CASE("validate_params") {
  SUBCASE("all zero is valid") {
    const ValidatedParams v = validate_params(CouplerParams{});
    CHECK(v.warnings().empty());
  }
  SUBCASE("nonzero mismatch is unsupported") {
    CouplerParams p;
    p.mismatch.dkS1 = 0.1;
    CHECK_THROWS_AS(validate_params(p), UnsupportedConfiguration);
  }
  SUBCASE("figure parameters pass without warning") {
    CouplerParams p;
    p.gS1 = 1.0;
    p.gA1 = 2.0;
    p.kappaS = -10.0;
    CHECK(validate_params(p).warnings().empty());
  }
  SUBCASE("Stokes-dominated guide warns") {
    CouplerParams p;
    p.gS1 = 2.0;
    p.gA1 = 1.0;
    CHECK_FALSE(validate_params(p).warnings().empty());
  }
  SUBCASE("non-finite coupling") {
    CouplerParams p;
    p.kappaA = cd(INFINITY, 0.0);
    CHECK_THROWS_AS(validate_params(p), ValidationError);
  }
}

TEST_CASE("exchange of waveguide parameters") {
  CouplerParams p;
  p.gS1 = cd(1, 2);
  p.gA2 = cd(3, 4);
  p.kappaS = cd(0.5, 0.25);
  const CouplerParams q = exchange_waveguides(p);
  CHECK(q.gS2 == p.gS1);
  CHECK(q.gA1 == p.gA2);
  CHECK(q.kappaS == std::conj(p.kappaS));
  const CouplerParams r = exchange_waveguides(q);
  CHECK(r.gS1 == p.gS1);
  CHECK(r.kappaS == p.kappaS);
}

TEST_CASE("complex literals") {
  CHECK(parse_complex("2i") == cd(0, 2));
  CHECK(parse_complex("-2i") == cd(0, -2));
  CHECK(parse_complex("1") == cd(1, 0));
  CHECK(parse_complex("1.5-0.5i") == cd(1.5, -0.5));
  CHECK(parse_complex("i") == cd(0, 1));
  CHECK(parse_complex("-i") == cd(0, -1));
  CHECK(parse_complex("1e-3+2e-1i") == cd(1e-3, 0.2));
  CHECK_THROWS_AS(parse_complex("1+"), ValidationError);
  CHECK_THROWS_AS(parse_complex("abc"), ValidationError);
  CHECK_THROWS_AS(parse_complex(""), ValidationError);
  for (cd v : {cd(0.1, -0.3), cd(-1e-300, 7.0), cd(3.0, 0.0), cd(0.0, -1.0 / 3.0)}) {
    CHECK(parse_complex(format_complex(v)) == v);
  }
}

TEST_CASE("parse_scenario: preset document") {
  const ScenarioConfig c = parse_scenario(preset_document("fig2"));
  CHECK(c.params.gS1 == cd(1, 0));
  CHECK(c.params.gA1 == cd(2, 0));
  CHECK(c.params.gS2 == cd(0));
  CHECK(c.params.gA2 == cd(0));
  CHECK(c.params.kappaS == cd(0));
  CHECK(c.params.kappaA == cd(0));
  CHECK(c.inputs[index(Mode::S1)].xi == cd(0, 2));
  CHECK(c.inputs[index(Mode::V1)].xi == cd(1, 0));
  for (Mode m : {Mode::A1, Mode::S2, Mode::A2, Mode::V2}) CHECK(c.inputs[index(m)].xi == cd(0));
}

TEST_CASE("parse_scenario: defaults") {
  const ScenarioConfig c = parse_scenario("[params]\ngS1 = 1\n");
  CHECK(c.observables.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(c.observables[k].modes == ModeSelection(kAllModes[k]));
  }
  CHECK(c.n_max == 64);
  CHECK(c.k_max == 5);
  for (const InputSpec& s : c.inputs) {
    CHECK(s.xi == cd(0));
    CHECK(s.r == 0.0);
    CHECK(s.n_ch == 0.0);
  }
}

TEST_CASE("parse_scenario: errors") {
  CHECK_THROWS_AS(parse_scenario("[params]\ngS1 = 1\n[run]\nk_max = 9\n"), ValidationError);
  CHECK_THROWS_AS(parse_scenario("[params]\ngS1 = 1\n[run]\nn_max = 513\n"), ValidationError);
  CHECK_THROWS_AS(parse_scenario("[params]\ngS1 = 1\n[run]\nz_steps = 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_scenario("[run]\nz_max = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("[params]\ngS1 = 1\n[inputs.S1]\nr = -1\n"), ValidationError);
  try {
    parse_scenario("[params]\ngS1 = 1\ngX = 2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.key() == "gX");
  }
  try {
    parse_scenario("[params]\n\ngA1 = 1+\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.key() == "gA1");
  }
}

TEST_CASE("parse_scenario: comments, quotes and observables") {
  const ScenarioConfig c = parse_scenario(R"(
# comment
[params]
gS1 = "1+0.5i"   # trailing
kappaS = -10
[inputs.V1]
n_ch = 0.1
[run]
name = probe
z_max = 2.5
z_steps = 11
[observables]
squeeze:S1V1
"moments:S1,A1"
)");
  CHECK(c.name == "probe");
  CHECK(c.params.gS1 == cd(1, 0.5));
  CHECK(c.params.kappaS == cd(-10, 0));
  CHECK(c.inputs[index(Mode::V1)].n_ch == 0.1);
  CHECK(c.z_max == 2.5);
  REQUIRE(c.observables.size() == 2);
  CHECK(c.observables[0] == Observable{Quantity::Squeeze, ModeSelection(Mode::S1, Mode::V1)});
  CHECK(c.observables[1].to_string() == "moments:S1,A1");
  const auto grid = c.z_grid();
  REQUIRE(grid.size() == 11);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 2.5);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 5);
  for (int trial = 0; trial < 40; ++trial) {
    ScenarioConfig c;
    c.name = "round" + std::to_string(trial);
    c.params = testing::random_params(rng, 3.0);
    c.inputs = testing::random_inputs(rng, trial % 2 == 0);
    c.z_max = 0.1 + trial;
    c.z_steps = 2 + trial;
    c.n_max = 1 + 7 * trial;
    c.k_max = 2 + trial % 7;
    const Quantity qs[] = {Quantity::Moments, Quantity::Variance, Quantity::Squeeze,
                           Quantity::Quadrature, Quantity::Distribution, Quantity::All};
    for (int k = 0; k < 3; ++k) {
      const Mode a = kAllModes[static_cast<std::size_t>(pick(rng))];
      const Mode b = kAllModes[static_cast<std::size_t>(pick(rng))];
      c.observables.push_back({qs[(trial + k) % 6], a == b ? ModeSelection(a) : ModeSelection(a, b)});
    }
    const std::string text = serialize_scenario(c);
    const ScenarioConfig d = parse_scenario(text);
    CHECK(serialize_scenario(d) == text);
    CHECK(d.name == c.name);
    CHECK(d.params.gS1 == c.params.gS1);
    CHECK(d.params.kappaA == c.params.kappaA);
    for (std::size_t m = 0; m < 6; ++m) {
      CHECK(d.inputs[m].xi == c.inputs[m].xi);
      CHECK(d.inputs[m].r == c.inputs[m].r);
      CHECK(d.inputs[m].theta == c.inputs[m].theta);
      CHECK(d.inputs[m].n_ch == c.inputs[m].n_ch);
    }
    CHECK(d.z_max == c.z_max);
    CHECK(d.z_steps == c.z_steps);
    CHECK(d.n_max == c.n_max);
    CHECK(d.k_max == c.k_max);
    CHECK(d.observables == c.observables);
  }
}

}  // TEST_SUITE
