#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hlf/exactalg/scalar.hpp"

namespace hlf::exactalg {

// Dense univariate polynomial, coefficients stored low degree first, no
// trailing zeros.
class UPoly {
 public:
  explicit UPoly(Field f) : field_(f) {}
  UPoly(Field f, std::vector<Scalar> coeffs);
  static UPoly constant(const Scalar& c);
  static UPoly monomial(const Scalar& c, int degree);
  static UPoly x(Field f) { return monomial(Scalar::one(f), 1); }

  const Field& field() const { return field_; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int i) const;
  Scalar leading() const;
  UPoly monic() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  Scalar eval(const Scalar& x) const;
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  Field field_;
  std::vector<Scalar> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b);  // monic, gcd(0,0) = 0
// Returns (g, s, t) with s*a + t*b = g monic.
struct XGcd {
  UPoly g, s, t;
};
XGcd xgcd(const UPoly& a, const UPoly& b);
UPoly powmod(UPoly base, mpz_class e, const UPoly& m);

// Irreducibility test: complete for degree <= 4, Ben-Or style for F_p of any
// degree. Returns false for reducible; `trusted` reports whether the verdict
// is a proof or an unchecked acceptance (large degree over Q).
struct IrreducibilityVerdict {
  bool irreducible;
  bool trusted;  // true when accepted without a full check
};
IrreducibilityVerdict check_irreducible(const UPoly& f);

}  // namespace hlf::exactalg
