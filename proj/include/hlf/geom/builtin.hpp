#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "hlf/geom/cocycle.hpp"

namespace hlf::geom {

// Products of projective spaces: "P1", "P2", "P1xP1", "P1xP1xP1", "P3", ...
// Homogeneous coordinates of factor f use letter x, y, z, w; chart j has
// affine coordinates x{i}{j} = x_i / x_j and charts are ordered
// lexicographically in the dehomogenizing indices.
VarietySpec builtin_variety(std::string_view name, Field field);
// O(d_1, ..., d_r) with one degree per factor.
CechCocycle builtin_bundle(const VarietySpec& X, const std::vector<long>& degrees);
// "P1(3)", "P2(-1)", "P1xP1(1,0)".
std::pair<VarietySpec, CechCocycle> builtin(std::string_view text, Field field);
// Factor dimensions of a builtin name.
std::vector<int> builtin_factors(std::string_view name);

// Flags through the torus-fixed points along coordinate strata.
std::vector<Flag> toric_flags(const VarietySpec& X);
// Superset of the flags with a potentially nonzero contribution, in flag-id
// order. Builtins use toric flags, other varieties their declared pool.
std::vector<Flag> enumerate_flags(const VarietySpec& X, const std::vector<CechCocycle>& cocycles);

}  // namespace hlf::geom
