#include "hlf/exactalg/scalar.hpp"

#include <cctype>

#include "hlf/error.hpp"

namespace hlf::exactalg {

namespace {

constexpr std::string_view kModule = "exactalg";

std::uint32_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e > 0) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce_mpz(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1U << 16U) || !is_prime(p)) {
    fail(ErrorKind::Precondition, kModule, "Field", "F_p requires a prime p < 65536, got " + std::to_string(p));
  }
  return Field(FieldKind::Prime, p);
}

Field Field::parse(std::string_view tag) {
  if (tag == "Q" || tag == "QQ") return rationals();
  std::string digits;
  std::string_view rest = tag;
  if (rest.substr(0, 3) == "GF(" && rest.size() > 4 && rest.back() == ')') {
    rest = rest.substr(3, rest.size() - 4);
  } else if (rest.substr(0, 2) == "F_") {
    rest = rest.substr(2);
  } else if (!rest.empty() && rest.front() == 'F') {
    rest = rest.substr(1);
  } else {
    fail(ErrorKind::Parse, kModule, "Field.parse", "unknown field tag '" + std::string(tag) + "'");
  }
  if (rest.empty() || rest.size() > 6) {
    fail(ErrorKind::Parse, kModule, "Field.parse", "bad field tag '" + std::string(tag) + "'");
  }
  for (char c : rest) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      fail(ErrorKind::Parse, kModule, "Field.parse", "bad field tag '" + std::string(tag) + "'");
    }
  }
  return prime(static_cast<std::uint32_t>(std::stoul(std::string(rest))));
}

std::string Field::tag() const { return is_rational() ? "Q" : "F" + std::to_string(p_); }

Scalar::Scalar(Field field, long value) : field_(field) {
  if (field_.is_rational()) {
    q_ = value;
  } else {
    r_ = reduce_mpz(mpz_class(value), field_.characteristic());
  }
}

Scalar::Scalar(Field field, const mpq_class& value) : field_(field) {
  if (field_.is_rational()) {
    q_ = value;
    q_.canonicalize();
    return;
  }
  const std::uint32_t p = field_.characteristic();
  const std::uint32_t den = reduce_mpz(value.get_den(), p);
  if (den == 0) {
    fail(ErrorKind::Precondition, kModule, "Scalar", "denominator of " + value.get_str() + " vanishes mod " +
                                                         std::to_string(p));
  }
  const std::uint64_t num = reduce_mpz(value.get_num(), p);
  r_ = static_cast<std::uint32_t>(num * mod_pow(den, p - 2, p) % p);
}

Scalar Scalar::parse(Field f, std::string_view text) {
  std::string s(text);
  try {
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    return Scalar(f, q);
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::Parse, kModule, "Scalar.parse", "not a rational number: '" + s + "'");
  }
}

bool Scalar::is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
bool Scalar::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1 % field_.characteristic(); }

mpq_class Scalar::to_rational() const { return field_.is_rational() ? q_ : mpq_class(r_); }

void Scalar::check_same(const Scalar& o, const char* op) const {
  if (field_ != o.field_) {
    fail(ErrorKind::Precondition, kModule, op, "field mismatch " + field_.tag() + " vs " + o.field_.tag());
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_rational()) {
    r.q_ = -q_;
  } else if (r_ != 0) {
    r.r_ = field_.characteristic() - r_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o, "add");
  if (field_.is_rational()) {
    q_ += o.q_;
  } else {
    r_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r_) + o.r_) % field_.characteristic());
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o, "mul");
  if (field_.is_rational()) {
    q_ *= o.q_;
  } else {
    r_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r_) * o.r_ % field_.characteristic());
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

Scalar Scalar::inv() const {
  if (is_zero()) fail(ErrorKind::Precondition, kModule, "inv", "division by zero scalar");
  Scalar r = *this;
  if (field_.is_rational()) {
    r.q_ = 1 / q_;
    r.q_.canonicalize();
  } else {
    const std::uint32_t p = field_.characteristic();
    r.r_ = mod_pow(r_, p - 2, p);
  }
  return r;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Scalar result = one(field_);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1L) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string Scalar::to_string() const { return field_.is_rational() ? q_.get_str() : std::to_string(r_); }

std::size_t Scalar::hash() const {
  if (!field_.is_rational()) return std::hash<std::uint32_t>{}(r_);
  return std::hash<std::string>{}(q_.get_str());
}

bool canonical_less(const Scalar& a, const Scalar& b) {
  if (a.field().is_rational()) return a.to_rational() < b.to_rational();
  return a.residue() < b.residue();
}

}  // namespace hlf::exactalg
