#pragma once

#include <vector>

#include "hlf/laurent/series.hpp"

namespace hlf::tateobj {

// L(a) = X^a k[[X]] inside a depth-1 space k((X)).
struct Lattice {
  long offset = 0;
  friend bool operator==(const Lattice& a, const Lattice& b) = default;
};

inline bool contains(const Lattice& big, const Lattice& small) { return small.offset >= big.offset; }
inline Lattice lattice_sum(const Lattice& a, const Lattice& b) { return {std::min(a.offset, b.offset)}; }
inline Lattice lattice_intersection(const Lattice& a, const Lattice& b) { return {std::max(a.offset, b.offset)}; }
// dim(big / small), requires small contained in big.
long quotient_dim(const Lattice& big, const Lattice& small);

// Image lattice f L(a) for a unit f of valuation v.
Lattice image_lattice(const laurent::NestedSeries& f, const Lattice& L);

// dim(L2 / f L1) - dim(L2 / L1), computed by rank of the images f X^(a+j)
// in a finite window of L2.
long index_map(const laurent::NestedSeries& f, const Lattice& L1, const Lattice& L2);

// Intersection of the lattices L(offsets[i]); within the monomial family the
// intersection of an unbounded chain is zero, which the witness reports as
// the growing codimension inside L(offsets[0]).
struct IntersectionWitness {
  Lattice intersection;
  long codimension;  // dim(L(offsets[0]) / intersection)
};
IntersectionWitness zero_intersection_witness(const std::vector<long>& offsets);

// Rank of a matrix over an extension field.
long rank(std::vector<std::vector<exactalg::ExtElem>> rows);

}  // namespace hlf::tateobj
