#include "coupler/presets.hpp"

#include <map>

#include "coupler/errors.hpp"

namespace coupler {

namespace {

// Brillouin: all inputs coherent.
constexpr std::string_view kFig2 = R"(# Brillouin, single waveguide
[params]
gS1 = 1
gA1 = 2

[inputs.S1]
xi = 2i

[inputs.V1]
xi = 1

[run]
name = fig2
z_max = 10
z_steps = 1001

[observables]
moments:S1,A1
)";

constexpr std::string_view kFig3 = R"(# Brillouin, Stokes coupling
[params]
gS1 = 1
gA1 = 2
kappaS = -10

[inputs.S1]
xi = 2

[inputs.V1]
xi = 1

[inputs.S2]
xi = 2

[run]
name = fig3
z_max = 5
z_steps = 500

[observables]
moments:S1,A1
pn:S1,A1
quadrature:S2,A1
squeeze:S2,A1
)";

constexpr std::string_view kFig4 = R"(# Brillouin, Stokes coupling, anti-Stokes input
[params]
gS1 = 1
gA1 = 2
kappaS = -10

[inputs.S1]
xi = -2i

[inputs.A1]
xi = 2i

[inputs.V1]
xi = 1

[inputs.S2]
xi = 2

[run]
name = fig4
z_max = 5
z_steps = 500

[observables]
moments:S2,A1
pn:S2,A1
)";

constexpr std::string_view kFig5 = R"(# Brillouin in both waveguides, complex Stokes coupling
[params]
gS1 = 1
gA1 = 2
gS2 = 1
gA2 = 2
kappaS = 6i

[inputs.S1]
xi = -2i

[inputs.A1]
xi = 2i

[inputs.V1]
xi = 1

[inputs.S2]
xi = -2i

[inputs.A2]
xi = 2i

[inputs.V2]
xi = 1

[run]
name = fig5
z_max = 5
z_steps = 500

[observables]
moments:S1,A1
moments:S2,V1
moments:A1,A2
)";

constexpr std::string_view kFig6 = R"(# fig5 with anti-Stokes coupling
[params]
gS1 = 1
gA1 = 2
gS2 = 1
gA2 = 2
kappaS = 6i
kappaA = 6i

[inputs.S1]
xi = -2i

[inputs.A1]
xi = 2i

[inputs.V1]
xi = 1

[inputs.S2]
xi = -2i

[inputs.A2]
xi = 2i

[inputs.V2]
xi = 1

[run]
name = fig6
z_max = 5
z_steps = 500

[observables]
moments:S2,A1
quadrature:S1,A1
squeeze:S1,A1
)";

// Raman: chaotic phonons.
constexpr std::string_view kFig7 = R"(# Raman, single waveguide
[params]
gS1 = 1
gA1 = 2

[inputs.S1]
xi = -2i

[inputs.A1]
xi = 2i

[inputs.V1]
n_ch = 0.1

[run]
name = fig7
z_max = 5
z_steps = 500
n_max = 256

[observables]
moments:S1,A1
pn:S1,A1
)";

constexpr std::string_view kFig8 = R"(# fig7 with more phonon noise
[params]
gS1 = 1
gA1 = 2

[inputs.S1]
xi = -2i

[inputs.A1]
xi = 2i

[inputs.V1]
n_ch = 1

[run]
name = fig8
z_max = 5
z_steps = 500

[observables]
quadrature:S1,V1
squeeze:S1,V1
)";

constexpr std::string_view kFig9 = R"(# Raman in both waveguides, real Stokes coupling
[params]
gS1 = 1
gA1 = 2
gS2 = 1
gA2 = 2
kappaS = -6

[inputs.S1]
xi = -2i

[inputs.A1]
xi = 2i

[inputs.V1]
n_ch = 0.1

[inputs.S2]
xi = 2

[inputs.V2]
n_ch = 0.1

[run]
name = fig9
z_max = 5
z_steps = 500

[observables]
moments:A1,V2
)";

constexpr std::string_view kFig10 = R"(# Raman in both waveguides, complex Stokes coupling
[params]
gS1 = 1
gA1 = 2
gS2 = 1
gA2 = 2
kappaS = 6i

[inputs.S1]
xi = -2i

[inputs.A1]
xi = 2i

[inputs.V1]
n_ch = 0.1

[inputs.S2]
xi = -2i

[inputs.A2]
xi = 2i

[inputs.V2]
n_ch = 0.1

[run]
name = fig10
z_max = 5
z_steps = 500

[observables]
moments:S1,V2
moments:S2,V1
)";

constexpr std::string_view kFig11 = R"(# fig10 with anti-Stokes coupling
[params]
gS1 = 1
gA1 = 2
gS2 = 1
gA2 = 2
kappaS = 6i
kappaA = 6i

[inputs.S1]
xi = -2i

[inputs.A1]
xi = 2i

[inputs.V1]
n_ch = 0.1

[inputs.S2]
xi = -2i

[inputs.A2]
xi = 2i

[inputs.V2]
n_ch = 0.1

[run]
name = fig11
z_max = 5
z_steps = 500

[observables]
moments:S1,A1
)";

const std::map<std::string, std::string_view, std::less<>>& table() {
  static const std::map<std::string, std::string_view, std::less<>> t{
      {"fig2", kFig2}, {"fig3", kFig3}, {"fig4", kFig4},   {"fig5", kFig5},   {"fig6", kFig6},
      {"fig7", kFig7}, {"fig8", kFig8}, {"fig9", kFig9}, {"fig10", kFig10}, {"fig11", kFig11},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5",  "fig6",
                                              "fig7", "fig8", "fig9", "fig10", "fig11"};
  return names;
}

std::string_view preset_document(std::string_view name) {
  const auto it = table().find(name);
  if (it == table().end()) throw ValidationError("unknown preset '" + std::string(name) + "'");
  return it->second;
}

ScenarioConfig preset(std::string_view name) { return parse_scenario(preset_document(name)); }

}  // namespace coupler
