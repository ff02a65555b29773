#pragma once

#include "hlf/laurent/series.hpp"
#include "hlf/tateobj/descriptor.hpp"

namespace hlf::tateobj {

using laurent::CoordTower;
using laurent::NestedSeries;

// Joint tower of two disjoint towers interleaved by sigma.
CoordTower shuffled_tower(const CoordTower& a, const CoordTower& b, const Shuffle& sigma);

// Re-nests x (whose layers appear in `target` in the same relative order)
// as an element of the larger tower `target`.
NestedSeries embed(const NestedSeries& x, const CoordTower& target);

NestedSeries tensor_element(const NestedSeries& v, const NestedSeries& w);
NestedSeries tensor_element(const NestedSeries& v, const NestedSeries& w, const Shuffle& sigma);

// Descriptor of a coordinate tower: all-Tate legs over Vect(base field).
TateDescriptor descriptor_of(const CoordTower& t);

}  // namespace hlf::tateobj
