#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hlf/exactalg/finite_ext.hpp"
#include "hlf/exactalg/ratfun.hpp"
#include "hlf/laurent/series.hpp"

namespace hlf::milnork {

using exactalg::ExtElem;
using exactalg::ExtField;
using exactalg::Field;
using exactalg::RatFun;
using exactalg::Scalar;
using laurent::CoordTower;
using laurent::NestedSeries;

// A nonzero element of some ambient field: a rational function, a nested
// Laurent series, or an element of a finite extension (a residue field of a
// closed point, which carries only the trivial valuation).
using Entry = std::variant<RatFun, NestedSeries, ExtElem>;

std::string entry_to_string(const Entry& e);
bool entry_is_zero(const Entry& e);
bool entry_is_one(const Entry& e);
Entry entry_mul(const Entry& a, const Entry& b);
Entry entry_pow(const Entry& a, long e);
Entry entry_minus_one_like(const Entry& a);

// A discrete valuation of the ambient field.
//   Variable:    ord along var = centre on a rational function field; residue
//                is the function field in the remaining variables.
//   ClosedPoint: ord at the irreducible m(var) of a univariate function field;
//                residue is k[var]/(m).
//   OuterLayer:  outer valuation of a nested series; residue one layer down.
struct ValuationRef {
  enum class Kind { Variable, ClosedPoint, OuterLayer };
  Kind kind = Kind::OuterLayer;
  std::string var;
  std::optional<Scalar> centre;
  std::optional<ExtField> point;

  static ValuationRef variable(std::string var, std::optional<Scalar> centre = std::nullopt);
  static ValuationRef closed_point(std::string var, ExtField point);
  static ValuationRef outer_layer() { return {}; }
  // [residue field : k] for a closed point, 1 otherwise.
  int residue_degree() const;
  std::string to_string() const;
};

long valuation(const Entry& f, const ValuationRef& v);
// f = pi^m * u with u a v-unit.
std::pair<long, Entry> split(const Entry& f, const ValuationRef& v);
// Image of a v-unit in the residue field.
Entry residue(const Entry& unit, const ValuationRef& v);

struct SymbolTerm {
  long coeff = 0;
  std::vector<Entry> entries;
};

// Formal Z-combination of symbols {f1,...,fn}; no relations are applied
// beyond dropping zero coefficients.
class SymbolSum {
 public:
  explicit SymbolSum(int length = 0) : length_(length) {}
  SymbolSum(long coeff, std::vector<Entry> entries);
  static SymbolSum integer(long n) { return SymbolSum(n, {}); }
  // `3*{t, (s+t)/s} - {u, v}`; `2*{}` is a length-0 term.
  static SymbolSum parse(Field f, std::string_view text);

  int length() const { return length_; }
  const std::vector<SymbolTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  void add(long coeff, std::vector<Entry> entries);
  SymbolSum scaled(long k) const;
  friend SymbolSum operator+(const SymbolSum& a, const SymbolSum& b);
  friend SymbolSum operator-(const SymbolSum& a, const SymbolSum& b) { return a + b.scaled(-1); }

  long integer_value() const;  // length 0 only
  Entry k1_class() const;      // length 1 only: prod f_i^c_i
  std::string to_string() const;

 private:
  int length_;
  std::vector<SymbolTerm> terms_;
};

Entry tame_symbol(const Entry& f, const Entry& g, const ValuationRef& v);
SymbolSum boundary(const SymbolSum& s, const ValuationRef& v);
// Boundaries in the given order down to length 0, then push forward by the
// residue degree of the last step.
long descend(const SymbolSum& s, const std::vector<ValuationRef>& refs);
// Iterated boundary from the outermost layer inward. Rational entries are
// handled along the tower variables, series entries by their outer layers.
long higher_valuation(const SymbolSum& s, const CoordTower& tower, long base_degree = 1);

}  // namespace hlf::milnork
