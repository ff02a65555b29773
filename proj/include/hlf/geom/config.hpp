#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hlf/geom/cocycle.hpp"

namespace hlf::geom {

struct VarietyConfig {
  VarietySpec variety;
  std::vector<CechCocycle> cocycles;
};

// JSON document with keys name, field, dimension, charts, divisors, cover,
// glue, cocycles, flags. Unknown keys are rejected.
VarietyConfig parse_config(std::string_view json_text);
VarietyConfig load_config(const std::string& path);

}  // namespace hlf::geom
