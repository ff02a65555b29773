#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hlf/exactalg/finite_ext.hpp"
#include "hlf/exactalg/ratfun.hpp"

namespace hlf::laurent {

using exactalg::ExtElem;
using exactalg::ExtField;
using exactalg::ExtPoly;
using exactalg::RatFun;

// Upper cutoff meaning "no truncation": the element is a Laurent polynomial.
inline constexpr long kExact = std::numeric_limits<long>::max() / 4;

// Layers innermost -> outermost; k((layers[0]))...((layers[n-1])) over `residue`.
class CoordTower {
 public:
  CoordTower(std::vector<std::string> layers, ExtField residue);
  const std::vector<std::string>& layers() const { return layers_; }
  const ExtField& residue() const { return residue_; }
  int depth() const { return static_cast<int>(layers_.size()); }
  CoordTower prefix(int d) const;
  std::string to_string() const;  // e.g. Q((s))((t))
  friend bool operator==(const CoordTower& a, const CoordTower& b) {
    return a.layers_ == b.layers_ && a.residue_ == b.residue_;
  }
  friend bool operator!=(const CoordTower& a, const CoordTower& b) { return !(a == b); }

 private:
  std::vector<std::string> layers_;
  ExtField residue_;
};

// Truncated iterated Laurent series. Depth 0 is a residue-field scalar. For
// depth >= 1 the element is sum_{e in [val, prec)} c_e X^e + O(X^prec), X the
// outermost layer, each c_e of depth - 1. Coefficients past the stored ones
// are exactly zero up to prec.
class NestedSeries {
 public:
  static NestedSeries zero(const CoordTower& tower);
  static NestedSeries scalar(const CoordTower& tower, const ExtElem& c);  // constant of the tower's depth
  static NestedSeries one(const CoordTower& tower) { return scalar(tower, ExtElem::one(tower.residue())); }
  // X_layer^e for the layer named `var`.
  static NestedSeries monomial(const CoordTower& tower, const std::string& var, long e);
  // Builds a depth >= 1 element from outer coefficients (each of depth - 1).
  static NestedSeries from_coeffs(const CoordTower& tower, std::map<long, NestedSeries> coeffs, long prec);
  static NestedSeries parse(const CoordTower& tower, std::string_view text);

  CoordTower tower() const;
  int depth() const { return depth_; }
  long val() const { return val_; }  // start of the stored window
  long prec() const { return prec_; }
  bool exact() const;
  bool exact_zero() const;
  bool is_zero() const;  // zero within the precision window
  const ExtElem& scalar_value() const;  // depth 0 only
  NestedSeries coeff(long e) const;     // depth >= 1
  const std::vector<NestedSeries>& stored() const { return c_; }

  // Outer valuation and the unit x * X^-v.
  std::pair<long, NestedSeries> valuation_and_unit() const;
  long valuation() const { return valuation_and_unit().first; }
  NestedSeries leading_coeff() const;  // coefficient at the outer valuation

  NestedSeries operator-() const;
  friend NestedSeries operator+(const NestedSeries& a, const NestedSeries& b);
  friend NestedSeries operator-(const NestedSeries& a, const NestedSeries& b);
  friend NestedSeries operator*(const NestedSeries& a, const NestedSeries& b);
  NestedSeries scaled(const ExtElem& c) const;
  NestedSeries shifted(long k) const;  // multiply by X^k
  NestedSeries truncated(long prec) const;
  // Inverse; `want` is the outer cutoff used when this element is exact but
  // not a monomial (the same value is used at inner layers).
  NestedSeries inv(long want = 8) const;

  // Equality on the common precision window at every layer.
  bool agrees_with(const NestedSeries& o) const;
  std::string to_string() const;

 private:
  NestedSeries(std::shared_ptr<const CoordTower> t, int depth) : tower_(std::move(t)), depth_(depth) {}
  void normalize();
  void check_compatible(const NestedSeries& o, const char* op) const;
  const std::string& var() const;

  std::shared_ptr<const CoordTower> tower_;
  int depth_ = 0;
  std::optional<ExtElem> s_;  // depth 0
  long val_ = kExact;
  long prec_ = kExact;
  std::vector<NestedSeries> c_;

  friend NestedSeries expand_poly_pair(const std::shared_ptr<const CoordTower>& t, int depth, const ExtPoly& num,
                                       const ExtPoly& den, long prec);
};

// Expansion of num/den (polynomials in the tower layers) in the tower.
NestedSeries expand_poly_pair(const std::shared_ptr<const CoordTower>& t, int depth, const ExtPoly& num,
                              const ExtPoly& den, long prec);

// Laurent expansion of f in the tower; every variable of f must be a layer.
NestedSeries expand(const RatFun& f, const CoordTower& tower, long prec);
// As above, with each variable of f sent to a polynomial in the layers
// (e.g. x -> c + u for a point with coordinate c).
NestedSeries expand(const RatFun& f, const CoordTower& tower, long prec,
                    const std::map<std::string, ExtPoly>& images);

NestedSeries series_mul(const NestedSeries& a, const NestedSeries& b);
NestedSeries series_inv(const NestedSeries& a, long want = 8);
std::pair<long, NestedSeries> valuation_and_unit(const NestedSeries& x);

}  // namespace hlf::laurent
