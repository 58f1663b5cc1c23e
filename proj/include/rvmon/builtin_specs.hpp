#pragma once
#include <optional>
#include <string>
#include <vector>

#include "rvmon/engine.hpp"

namespace rvmon {

struct BuiltinSpec {
  std::string name;       // p1 .. p4
  std::string file_name;  // shipped .tsl file
  MonitorLevel level;
  std::string text;
};

const std::vector<BuiltinSpec>& builtin_specs();
const BuiltinSpec* find_builtin(const std::string& name);

// Builds a MonitorInstance for a built-in property with identity binding.
MonitorInstance builtin_monitor(const std::string& name);

}  // namespace rvmon
