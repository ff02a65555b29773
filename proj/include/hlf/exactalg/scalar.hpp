#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hlf::exactalg {

enum class FieldKind { Rational, Prime };

// Tag for the base field k: either Q or F_p with p < 2^16.
class Field {
 public:
  static Field rationals() { return Field(FieldKind::Rational, 0); }
  static Field prime(std::uint32_t p);
  // Accepts "Q", "F5", "F_5", "GF(5)".
  static Field parse(std::string_view tag);

  FieldKind kind() const { return kind_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_rational() const { return kind_ == FieldKind::Rational; }
  std::string tag() const;

  friend bool operator==(const Field& a, const Field& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  Field(FieldKind kind, std::uint32_t p) : kind_(kind), p_(p) {}
  FieldKind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

// Exact element of Q (lowest terms, positive denominator) or F_p (0 <= r < p).
class Scalar {
 public:
  Scalar() : Scalar(Field::rationals(), 0) {}
  Scalar(Field field, long value);
  Scalar(Field field, const mpq_class& value);

  static Scalar zero(Field f) { return Scalar(f, 0L); }
  static Scalar one(Field f) { return Scalar(f, 1L); }
  // Parses an integer or "a/b".
  static Scalar parse(Field f, std::string_view text);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  // The rational value (for F_p the canonical representative as an integer).
  mpq_class to_rational() const;
  std::uint32_t residue() const { return r_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inv() const;
  Scalar pow(long e) const;
  std::string to_string() const;
  std::size_t hash() const;

 private:
  void check_same(const Scalar& o, const char* op) const;
  Field field_;
  mpq_class q_;
  std::uint32_t r_ = 0;
};

// Total order used only for canonical containers (not a field order).
bool canonical_less(const Scalar& a, const Scalar& b);

}  // namespace hlf::exactalg
