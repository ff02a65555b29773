#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hlf/geom/variety.hpp"

namespace hlf::geom {

// f = constant * prod D_i^(exponents[i]) over the divisor basis.
struct CocycleEntry {
  Scalar constant;
  std::vector<long> exponents;
  friend bool operator==(const CocycleEntry& a, const CocycleEntry& b) = default;
};

class CechCocycle {
 public:
  CechCocycle(std::string label, Field f, int cover_size, int divisor_count);

  const std::string& label() const { return label_; }
  int cover_size() const { return cover_size_; }
  int divisor_count() const { return divisor_count_; }
  const Field& field() const { return field_; }
  void set(int rho, int nu, CocycleEntry e);
  bool has(int rho, int nu) const;
  // Identity on the diagonal.
  CocycleEntry entry(int rho, int nu) const;
  // Fills each missing (nu, rho) with the inverse of (rho, nu).
  void complete_alternating();
  const std::map<std::pair<int, int>, CocycleEntry>& entries() const { return entries_; }
  // Divisors with a nonzero exponent somewhere.
  std::vector<int> support() const;

 private:
  std::string label_;
  Field field_;
  int cover_size_;
  int divisor_count_;
  std::map<std::pair<int, int>, CocycleEntry> entries_;
};

// f_(rho,nu) as a rational function in the coordinates of `chart`.
RatFun cocycle_function(const VarietySpec& X, const CechCocycle& L, int rho, int nu, int chart);
// Alternating, cocycle condition, unit on overlaps, agreement across charts.
void validate_cocycle(const VarietySpec& X, const CechCocycle& L);
// Tensor product of line bundles.
CechCocycle tensor(const CechCocycle& a, const CechCocycle& b);

}  // namespace hlf::geom
