#pragma once
#include <string>

#include "rvmon/sim.hpp"

namespace rvmon {

// Scenario config files are TOML with sections [sim], [ego], [mio],
// [controller] and [attack]. Unknown keys are errors.
SimConfig parse_scenario(const std::string& text);
SimConfig parse_scenario_file(const std::string& path);

// Parses only the [attack] section of a TOML file (for --attack file:PATH).
AttackSpec parse_attack_file(const std::string& path);

std::string default_scenario_toml();

}  // namespace rvmon
