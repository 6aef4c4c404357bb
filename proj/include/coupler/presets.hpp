#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coupler/scenario.hpp"

namespace coupler {

// Built-in scenarios fig2 .. fig11. Presets derived from another one
// (fig6, fig8, fig11) list every parameter in full.
const std::vector<std::string>& preset_names();

// Scenario document text; throws ValidationError for an unknown name.
std::string_view preset_document(std::string_view name);
ScenarioConfig preset(std::string_view name);

}  // namespace coupler
