#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hlf/exactalg/multipoly.hpp"

namespace hlf::exactalg {

// num/den with den != 0. Cancellation is best effort: common monomials,
// exact divisibility either way, and univariate gcd. Equality is decided
// by cross-multiplication.
class RatFun {
 public:
  explicit RatFun(Field f) : num_(f), den_(MultiPoly::constant(f, 1)) {}
  RatFun(MultiPoly num);  // NOLINT(google-explicit-constructor)
  RatFun(MultiPoly num, MultiPoly den);
  static RatFun constant(const Scalar& c) { return RatFun(MultiPoly::constant(c)); }
  static RatFun variable(Field f, const std::string& name) { return RatFun(MultiPoly::variable(f, name)); }
  // Polynomial / rational function syntax: identifiers, integers, + - * / ^ and parentheses.
  static RatFun parse(Field f, std::string_view text);

  const Field& field() const { return num_.field(); }
  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  std::vector<std::string> vars() const { return merge_vars(num_.vars(), den_.vars()); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Scalar constant_value() const;

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  friend bool operator==(const RatFun& a, const RatFun& b);
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }
  RatFun inv() const;
  RatFun pow(long e) const;

  RatFun substitute(const std::string& var, const RatFun& value) const;
  RatFun substitute(const std::string& var, const Scalar& value) const;
  // Simultaneous substitution (values may mention the replaced names).
  RatFun substitute_all(const std::vector<std::pair<std::string, RatFun>>& subs) const;

  std::string to_string() const;

 private:
  void canonicalize();
  MultiPoly num_;
  MultiPoly den_;
};

inline std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << f.to_string(); }

enum class RatOp { Add, Mul, Inv, Neg };
RatFun ratfun_arith(RatOp op, const RatFun& a, const RatFun* b = nullptr);

// Lowest var-degree of num minus that of den: the valuation at {var = 0}.
int ord_in_variable(const RatFun& f, const std::string& var);

}  // namespace hlf::exactalg
