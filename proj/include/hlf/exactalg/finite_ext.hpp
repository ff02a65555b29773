#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hlf/exactalg/multipoly.hpp"
#include "hlf/exactalg/upoly.hpp"

namespace hlf::exactalg {

// k[x]/(m) for a monic irreducible m. Degree 1 (m = x) is k itself.
class ExtField {
 public:
  static ExtField base(Field f);
  // Normalizes m to monic; rejects reducible moduli (checked for deg <= 4).
  static ExtField make(const UPoly& modulus);
  // "x^2 - 2" style text in the variable x, or a base field tag.
  static ExtField parse(Field f, std::string_view modulus_text);

  const Field& base_field() const { return d_->base; }
  const UPoly& modulus() const { return d_->modulus; }
  int degree() const { return d_->modulus.degree(); }
  bool trusted() const { return d_->trusted; }  // irreducibility assumed, not proven
  std::string to_string() const;

  friend bool operator==(const ExtField& a, const ExtField& b) {
    return a.d_ == b.d_ || (a.d_->base == b.d_->base && a.d_->modulus == b.d_->modulus);
  }
  friend bool operator!=(const ExtField& a, const ExtField& b) { return !(a == b); }

 private:
  struct Data {
    Field base;
    UPoly modulus;
    bool trusted;
  };
  explicit ExtField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

class ExtElem {
 public:
  ExtElem(ExtField F, UPoly value);
  ExtElem(ExtField F, const Scalar& c);
  static ExtElem zero(const ExtField& F) { return ExtElem(F, Scalar::zero(F.base_field())); }
  static ExtElem one(const ExtField& F) { return ExtElem(F, Scalar::one(F.base_field())); }
  static ExtElem generator(const ExtField& F);
  // "[c0, c1, ...]" (low degree first) or a plain rational.
  static ExtElem parse(const ExtField& F, std::string_view text);

  const ExtField& field() const { return F_; }
  const UPoly& value() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const;
  bool in_base() const { return v_.degree() <= 0; }
  Scalar base_value() const;  // requires in_base()

  ExtElem operator-() const;
  friend ExtElem operator+(const ExtElem& a, const ExtElem& b);
  friend ExtElem operator-(const ExtElem& a, const ExtElem& b);
  friend ExtElem operator*(const ExtElem& a, const ExtElem& b);
  friend ExtElem operator/(const ExtElem& a, const ExtElem& b) { return a * b.inv(); }
  friend bool operator==(const ExtElem& a, const ExtElem& b) { return a.F_ == b.F_ && a.v_ == b.v_; }
  friend bool operator!=(const ExtElem& a, const ExtElem& b) { return !(a == b); }
  ExtElem inv() const;
  ExtElem pow(long e) const;

  std::string to_string() const;

 private:
  ExtField F_;
  UPoly v_;
};

// Determinant of multiplication by e on the extension as a k-vector space.
Scalar field_norm(const ExtElem& e);

// Determinant of a square matrix over k by Gaussian elimination.
Scalar determinant(std::vector<std::vector<Scalar>> m);

// Sparse polynomial over an extension field in a fixed, ordered variable list.
class ExtPoly {
 public:
  ExtPoly(ExtField F, std::vector<std::string> vars) : F_(std::move(F)), vars_(std::move(vars)) {}
  static ExtPoly constant(const ExtField& F, const std::vector<std::string>& vars, const ExtElem& c);
  static ExtPoly variable(const ExtField& F, const std::vector<std::string>& vars, std::size_t index);
  // Maps each variable of p through `images` (every variable of p must be present).
  static ExtPoly from_poly(const MultiPoly& p, const ExtField& F, const std::vector<std::string>& vars,
                           const std::map<std::string, ExtPoly>& images);

  const ExtField& field() const { return F_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, ExtElem>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_monomial() const { return t_.size() == 1; }
  int low_degree(std::size_t index) const;
  // Coefficients in variable `index`, each keeping the full variable list.
  std::map<int, ExtPoly> split(std::size_t index) const;
  // Drops variable `index` (must not occur).
  ExtPoly without(std::size_t index) const;
  ExtPoly shifted_down(std::size_t index, int k) const;  // divide by var^k
  ExtElem constant_value() const;  // requires no variables occurring

  friend ExtPoly operator+(const ExtPoly& a, const ExtPoly& b);
  friend ExtPoly operator-(const ExtPoly& a, const ExtPoly& b);
  friend ExtPoly operator*(const ExtPoly& a, const ExtPoly& b);
  ExtPoly pow(unsigned e) const;
  ExtPoly scaled(const ExtElem& c) const;

 private:
  void add_term(const Exponents& e, const ExtElem& c);
  ExtField F_;
  std::vector<std::string> vars_;
  std::map<Exponents, ExtElem> t_;
};

}  // namespace hlf::exactalg
