#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hlf/exactalg/scalar.hpp"
#include "hlf/exactalg/upoly.hpp"

namespace hlf::exactalg {

using Exponents = std::vector<int>;

// Sparse polynomial over a base field. Variables are kept sorted and only
// variables that actually occur are stored, so equal polynomials compare
// equal structurally.
class MultiPoly {
 public:
  explicit MultiPoly(Field f) : field_(f) {}
  static MultiPoly constant(const Scalar& c);
  static MultiPoly constant(Field f, long c) { return constant(Scalar(f, c)); }
  static MultiPoly variable(Field f, const std::string& name);
  static MultiPoly monomial(const Scalar& c, const std::vector<std::string>& vars, const Exponents& e);
  static MultiPoly from_univariate(const UPoly& p, const std::string& var);

  const Field& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  Scalar constant_value() const;  // requires is_constant()
  bool is_monomial() const { return terms_.size() == 1; }
  bool has_var(const std::string& v) const;
  int total_degree() const;
  int degree_in(const std::string& v) const;      // 0 if absent
  int low_degree_in(const std::string& v) const;  // 0 if absent
  // Lex-largest term (variables in sorted order).
  std::pair<Exponents, Scalar> leading_term() const;
  Exponents monomial_content() const;  // componentwise min exponent

  // p = sum_k coeffs[k] * v^k
  std::map<int, MultiPoly> coeffs_in(const std::string& v) const;
  MultiPoly substitute(const std::string& v, const MultiPoly& value) const;
  MultiPoly substitute(const std::string& v, const Scalar& value) const;
  MultiPoly rename(const std::map<std::string, std::string>& names) const;
  MultiPoly divide_monomial(const std::vector<std::string>& vars, const Exponents& e) const;
  MultiPoly scaled(const Scalar& c) const;
  MultiPoly pow(unsigned e) const;
  UPoly to_univariate(const std::string& v) const;  // requires vars() subset of {v}

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.field_ == b.field_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  std::string to_string() const;

 private:
  MultiPoly(Field f, std::vector<std::string> vars, std::map<Exponents, Scalar> terms);
  void normalize();
  MultiPoly extended(const std::vector<std::string>& vars) const;
  friend std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);

  Field field_;
  std::vector<std::string> vars_;
  std::map<Exponents, Scalar> terms_;
};

// Exact quotient a / b if b divides a, nullopt otherwise.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace hlf::exactalg
