#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hlf/exactalg/finite_ext.hpp"
#include "hlf/exactalg/ratfun.hpp"

namespace hlf::geom {

using exactalg::ExtField;
using exactalg::Field;
using exactalg::RatFun;
using exactalg::Scalar;

// An affine chart A^n with named coordinates.
struct Chart {
  std::string id;
  std::vector<std::string> coords;
};

// An irreducible divisor, given by a local polynomial equation on every chart
// it meets. A chart with no equation does not meet the divisor.
struct Divisor {
  std::string name;
  std::map<int, RatFun> equations;
};

// U = chart minus the inverted divisors.
struct CoverMember {
  int chart = 0;
  std::vector<int> inverted;
};

// Coordinates of chart `to` written in the coordinates of chart `from`.
struct Glue {
  int from = 0;
  int to = 0;
  std::vector<std::pair<std::string, RatFun>> map;
};

// Saturated flag on one chart with ordered coordinates u_1..u_n (innermost
// first): eta_i = {u_(n-i+1) = c, ..., u_n = c}. The closed point may have a
// non-rational residue field, given as the root of an irreducible in u_1.
struct Flag {
  int chart = 0;
  std::vector<std::string> coords;
  std::vector<Scalar> centre;
  std::optional<ExtField> point;
  std::vector<std::string> labels;  // optional names for eta_1..eta_n

  int dimension() const { return static_cast<int>(coords.size()); }
  int residue_degree() const { return point ? point->degree() : 1; }
  // Human readable member eta_i, i in [0, n].
  std::string member(int i) const;
};

class VarietySpec {
 public:
  std::string name;
  Field field = Field::rationals();
  int dimension = 0;
  std::vector<Chart> charts;
  std::vector<Divisor> divisors;
  std::vector<CoverMember> cover;
  std::vector<Glue> glue;
  std::vector<Flag> declared_flags;
  bool builtin = false;

  int chart_index(std::string_view id) const;
  int divisor_index(std::string_view name) const;
  const Glue* find_glue(int from, int to) const;
  // Local equation of a divisor on a chart, 1 when the divisor misses it.
  RatFun local_equation(int divisor, int chart) const;
  bool meets(int divisor, int chart) const { return divisors[static_cast<std::size_t>(divisor)].equations.count(chart) > 0; }
  // Divisors removed from X to obtain U_alpha.
  std::vector<int> excluded(int alpha) const;
  // Structural checks: coordinates, equations, cover, glue round trips.
  void validate() const;
  // Pulls a function on chart `to` back to chart `from`.
  RatFun transport(const RatFun& f, int from, int to) const;
};

// Chain description, e.g. "U01: (x10, y01) > (x10, 0) > (0, 0)".
std::string describe(const VarietySpec& X, const Flag& f);
// Stable short hash of the description.
std::string flag_id(const VarietySpec& X, const Flag& f);
void validate_flag(const VarietySpec& X, const Flag& f);
// Does eta_i of the flag lie on the divisor?
bool lies_on(const VarietySpec& X, const Flag& f, int i, int divisor);
// Least cover index containing eta_i.
int alpha_of(const VarietySpec& X, const Flag& f, int i);

}  // namespace hlf::geom
