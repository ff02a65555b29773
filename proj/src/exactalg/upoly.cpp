#include "hlf/exactalg/upoly.hpp"

#include <optional>
#include <sstream>

#include "hlf/error.hpp"

namespace hlf::exactalg {

namespace {

constexpr std::string_view kModule = "exactalg";

void check_field(const UPoly& a, const UPoly& b, const char* op) {
  if (a.field() != b.field()) {
    fail(ErrorKind::Precondition, kModule, op, "field mismatch " + a.field().tag() + " vs " + b.field().tag());
  }
}

}  // namespace

UPoly::UPoly(Field f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) {
  for (const auto& c : c_) {
    if (c.field() != field_) fail(ErrorKind::Precondition, kModule, "UPoly", "coefficient field mismatch");
  }
  trim();
}

UPoly UPoly::constant(const Scalar& c) { return UPoly(c.field(), {c}); }

UPoly UPoly::monomial(const Scalar& c, int degree) {
  std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, Scalar::zero(c.field()));
  v.back() = c;
  return UPoly(c.field(), std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar UPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return Scalar::zero(field_);
  return c_[static_cast<std::size_t>(i)];
}

Scalar UPoly::leading() const { return is_zero() ? Scalar::zero(field_) : c_.back(); }

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  const Scalar inv = leading().inv();
  UPoly r = *this;
  for (auto& c : r.c_) c *= inv;
  return r;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  check_field(a, b, "UPoly.add");
  std::vector<Scalar> v(std::max(a.c_.size(), b.c_.size()), Scalar::zero(a.field_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UPoly(a.field_, std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  check_field(a, b, "UPoly.mul");
  if (a.is_zero() || b.is_zero()) return UPoly(a.field_);
  std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1, Scalar::zero(a.field_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(a.field_, std::move(v));
}

Scalar UPoly::eval(const Scalar& x) const {
  Scalar acc = Scalar::zero(field_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Scalar& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c.to_string();
      continue;
    }
    if (!c.is_one()) os << c.to_string() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  check_field(a, b, "divmod");
  if (b.is_zero()) fail(ErrorKind::Precondition, kModule, "divmod", "division by zero polynomial");
  const Field f = a.field();
  UPoly r = a;
  std::vector<Scalar> q(static_cast<std::size_t>(std::max(0, a.degree() - b.degree() + 1)), Scalar::zero(f));
  const Scalar lead_inv = b.leading().inv();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const Scalar c = r.leading() * lead_inv;
    q[static_cast<std::size_t>(shift)] = c;
    r = r - UPoly::monomial(c, shift) * b;
  }
  return {UPoly(f, std::move(q)), r};
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

XGcd xgcd(const UPoly& a, const UPoly& b) {
  const Field f = a.field();
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(Scalar::one(f)), s1(f);
  UPoly t0(f), t1 = UPoly::constant(Scalar::one(f));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1;
    UPoly t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const UPoly scale = UPoly::constant(r0.leading().inv());
  return {r0 * scale, s0 * scale, t0 * scale};
}

UPoly powmod(UPoly base, mpz_class e, const UPoly& m) {
  UPoly result = divmod(UPoly::constant(Scalar::one(m.field())), m).second;
  base = divmod(base, m).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = divmod(result * base, m).second;
    base = divmod(base * base, m).second;
    e >>= 1;
  }
  return result;
}

namespace {

// Integer monic model g(y) = D^d f(y/D) of a monic rational polynomial.
std::vector<mpz_class> integer_monic_model(const UPoly& f) {
  const UPoly m = f.monic();
  mpz_class lcm_den = 1;
  for (const auto& c : m.coeffs()) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.to_rational().get_den_mpz_t());
  }
  const int d = m.degree();
  std::vector<mpz_class> g(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), lcm_den.get_mpz_t(), static_cast<unsigned long>(d - i));
    mpq_class v = m.coeff(i).to_rational() * scale;
    v.canonicalize();
    g[static_cast<std::size_t>(i)] = v.get_num();
  }
  return g;
}

mpz_class eval_int(const std::vector<mpz_class>& g, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = g.rbegin(); it != g.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Divisors of |n| (n != 0), or nullopt when n is too large to enumerate.
std::optional<std::vector<mpz_class>> divisors(const mpz_class& n) {
  mpz_class a = abs(n);
  if (a > mpz_class("1000000000000")) return std::nullopt;
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
  return out;
}

bool has_integer_root(const std::vector<mpz_class>& g, bool& trusted) {
  if (g[0] == 0) return true;
  auto ds = divisors(g[0]);
  if (!ds) {
    trusted = true;
    return false;
  }
  for (const auto& d : *ds) {
    if (eval_int(g, d) == 0 || eval_int(g, -d) == 0) return true;
  }
  return false;
}

bool has_integer_quadratic_factor(const std::vector<mpz_class>& g, bool& trusted) {
  // g = y^4 + g3 y^3 + g2 y^2 + g1 y + g0 = (y^2 + a y + b)(y^2 + c y + d)
  const mpz_class &g0 = g[0], &g1 = g[1], &g2 = g[2], &g3 = g[3];
  auto ds = divisors(g0);
  if (!ds) {
    trusted = true;
    return false;
  }
  for (const auto& pos : *ds) {
    for (int sgn : {1, -1}) {
      const mpz_class b = pos * sgn;
      const mpz_class d = g0 / b;
      if (d != b) {
        const mpz_class num = g1 - g3 * b;
        const mpz_class den = d - b;
        if (num % den != 0) continue;
        const mpz_class a = num / den;
        const mpz_class c = g3 - a;
        if (b + d + a * c == g2) return true;
      } else {
        if (g1 != g3 * b) continue;
        // a + c = g3, a c = g2 - 2b
        const mpz_class disc = g3 * g3 - 4 * (g2 - 2 * b);
        if (disc < 0) continue;
        mpz_class root;
        mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
        if (root * root == disc && (g3 + root) % 2 == 0) return true;
      }
    }
  }
  return false;
}

}  // namespace

IrreducibilityVerdict check_irreducible(const UPoly& f) {
  const int d = f.degree();
  if (d <= 0) return {false, false};
  if (d == 1) return {true, false};
  if (!f.field().is_rational()) {
    // Ben-Or: f is irreducible iff gcd(f, x^(p^i) - x) = 1 for i <= d/2.
    const UPoly m = f.monic();
    const mpz_class p = f.field().characteristic();
    UPoly xp = UPoly::x(f.field());
    for (int i = 1; i <= d / 2; ++i) {
      xp = powmod(xp, p, m);
      if (gcd(m, xp - UPoly::x(f.field())).degree() > 0) return {false, false};
    }
    return {true, false};
  }
  if (d > 4) return {true, true};
  bool trusted = false;
  const auto g = integer_monic_model(f);
  if (has_integer_root(g, trusted)) return {false, false};
  if (d == 4 && has_integer_quadratic_factor(g, trusted)) return {false, false};
  return {true, trusted};
}

}  // namespace hlf::exactalg
