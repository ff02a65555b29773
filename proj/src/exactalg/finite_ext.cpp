#include "hlf/exactalg/finite_ext.hpp"

#include <cctype>
#include <sstream>

#include "hlf/error.hpp"
#include "hlf/exactalg/ratfun.hpp"

namespace hlf::exactalg {

namespace {

constexpr std::string_view kModule = "exactalg";

}  // namespace

ExtField ExtField::base(Field f) {
  return ExtField(std::make_shared<const Data>(Data{f, UPoly::x(f), false}));
}

ExtField ExtField::make(const UPoly& modulus) {
  if (modulus.degree() < 1) fail(ErrorKind::Precondition, kModule, "ExtField", "modulus must have degree >= 1");
  const UPoly m = modulus.monic();
  const auto verdict = check_irreducible(m);
  if (!verdict.irreducible) {
    fail(ErrorKind::Precondition, kModule, "ExtField", "modulus " + m.to_string() + " is reducible");
  }
  return ExtField(std::make_shared<const Data>(Data{m.field(), m, verdict.trusted}));
}

ExtField ExtField::parse(Field f, std::string_view modulus_text) {
  const RatFun r = RatFun::parse(f, modulus_text);
  if (!r.den().is_constant()) fail(ErrorKind::Parse, kModule, "ExtField.parse", "modulus must be a polynomial");
  const auto vars = r.num().vars();
  if (vars.size() > 1) fail(ErrorKind::Parse, kModule, "ExtField.parse", "modulus must be univariate");
  const std::string v = vars.empty() ? "x" : vars[0];
  const UPoly p = (r.num().scaled(r.den().constant_value().inv())).to_univariate(v);
  if (p.degree() < 1) fail(ErrorKind::Parse, kModule, "ExtField.parse", "modulus must have degree >= 1");
  return make(p);
}

std::string ExtField::to_string() const {
  if (degree() == 1 && d_->modulus.coeff(0).is_zero()) return d_->base.tag();
  return d_->base.tag() + "[x]/(" + d_->modulus.to_string() + ")";
}

ExtElem::ExtElem(ExtField F, UPoly value) : F_(std::move(F)), v_(std::move(value)) {
  if (v_.field() != F_.base_field()) fail(ErrorKind::Precondition, kModule, "ExtElem", "field mismatch");
  if (v_.degree() >= F_.degree()) v_ = divmod(v_, F_.modulus()).second;
}

ExtElem::ExtElem(ExtField F, const Scalar& c) : ExtElem(F, UPoly::constant(c)) {}

ExtElem ExtElem::generator(const ExtField& F) { return ExtElem(F, UPoly::x(F.base_field())); }

ExtElem ExtElem::parse(const ExtField& F, std::string_view text) {
  std::string s(text);
  auto trim = [](std::string x) {
    const auto b = x.find_first_not_of(" \t");
    const auto e = x.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  };
  s = trim(s);
  if (s.empty()) fail(ErrorKind::Parse, kModule, "ExtElem.parse", "empty element");
  if (s.front() != '[') return ExtElem(F, Scalar::parse(F.base_field(), s));
  if (s.back() != ']') fail(ErrorKind::Parse, kModule, "ExtElem.parse", "missing ']' in '" + s + "'");
  std::vector<Scalar> c;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) c.push_back(Scalar::parse(F.base_field(), trim(item)));
  if (static_cast<int>(c.size()) > F.degree()) {
    fail(ErrorKind::Parse, kModule, "ExtElem.parse", "too many coefficients in '" + s + "'");
  }
  return ExtElem(F, UPoly(F.base_field(), std::move(c)));
}

bool ExtElem::is_one() const { return v_.degree() == 0 && v_.coeff(0).is_one(); }

Scalar ExtElem::base_value() const {
  if (!in_base()) fail(ErrorKind::Precondition, kModule, "base_value", "element " + to_string() + " not in base field");
  return v_.coeff(0);
}

ExtElem ExtElem::operator-() const { return ExtElem(F_, -v_); }

namespace {
void check_same(const ExtElem& a, const ExtElem& b, const char* op) {
  if (a.field() != b.field()) {
    fail(ErrorKind::Precondition, kModule, op, "extension mismatch " + a.field().to_string() + " vs " +
                                                   b.field().to_string());
  }
}
}  // namespace

ExtElem operator+(const ExtElem& a, const ExtElem& b) {
  check_same(a, b, "ExtElem.add");
  return ExtElem(a.F_, a.v_ + b.v_);
}

ExtElem operator-(const ExtElem& a, const ExtElem& b) {
  check_same(a, b, "ExtElem.sub");
  return ExtElem(a.F_, a.v_ - b.v_);
}

ExtElem operator*(const ExtElem& a, const ExtElem& b) {
  check_same(a, b, "ExtElem.mul");
  return ExtElem(a.F_, divmod(a.v_ * b.v_, a.F_.modulus()).second);
}

ExtElem ExtElem::inv() const {
  if (is_zero()) fail(ErrorKind::Precondition, kModule, "inv", "inverse of zero extension element");
  const XGcd g = xgcd(v_, F_.modulus());
  if (g.g.degree() != 0) fail(ErrorKind::Invariant, kModule, "inv", "modulus not irreducible");
  return ExtElem(F_, g.s);
}

ExtElem ExtElem::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  ExtElem result = one(F_);
  ExtElem base = *this;
  while (e > 0) {
    if (e & 1L) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::string ExtElem::to_string() const {
  if (F_.degree() == 1) return v_.coeff(0).to_string();
  std::string s = "[";
  for (int i = 0; i < F_.degree(); ++i) {
    if (i > 0) s += ", ";
    s += v_.coeff(i).to_string();
  }
  return s + "]";
}

Scalar determinant(std::vector<std::vector<Scalar>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Scalar::one(Field::rationals());
  const Field f = m[0][0].field();
  Scalar det = Scalar::one(f);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return Scalar::zero(f);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const Scalar inv = m[col][col].inv();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const Scalar factor = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

Scalar field_norm(const ExtElem& e) {
  if (e.is_zero()) fail(ErrorKind::Precondition, kModule, "field_norm", "norm of zero element");
  const ExtField& F = e.field();
  const int d = F.degree();
  std::vector<std::vector<Scalar>> m(static_cast<std::size_t>(d),
                                     std::vector<Scalar>(static_cast<std::size_t>(d), Scalar::zero(F.base_field())));
  ExtElem basis = ExtElem::one(F);
  const ExtElem x = ExtElem::generator(F);
  for (int j = 0; j < d; ++j) {
    const ExtElem col = e * basis;
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.value().coeff(i);
    basis = basis * x;
  }
  return determinant(std::move(m));
}

ExtPoly ExtPoly::constant(const ExtField& F, const std::vector<std::string>& vars, const ExtElem& c) {
  ExtPoly p(F, vars);
  p.add_term(Exponents(vars.size(), 0), c);
  return p;
}

ExtPoly ExtPoly::variable(const ExtField& F, const std::vector<std::string>& vars, std::size_t index) {
  ExtPoly p(F, vars);
  Exponents e(vars.size(), 0);
  e[index] = 1;
  p.add_term(e, ExtElem::one(F));
  return p;
}

ExtPoly ExtPoly::from_poly(const MultiPoly& p, const ExtField& F, const std::vector<std::string>& vars,
                           const std::map<std::string, ExtPoly>& images) {
  std::vector<const ExtPoly*> img;
  for (const auto& v : p.vars()) {
    auto it = images.find(v);
    if (it == images.end()) fail(ErrorKind::Precondition, kModule, "ExtPoly", "no image for variable " + v);
    img.push_back(&it->second);
  }
  ExtPoly acc(F, vars);
  for (const auto& [e, c] : p.terms()) {
    ExtPoly t = constant(F, vars, ExtElem(F, c));
    for (std::size_t i = 0; i < e.size(); ++i) t = t * img[i]->pow(static_cast<unsigned>(e[i]));
    acc = acc + t;
  }
  return acc;
}

void ExtPoly::add_term(const Exponents& e, const ExtElem& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t_.emplace(e, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

int ExtPoly::low_degree(std::size_t index) const {
  int d = -1;
  for (const auto& [e, c] : t_) d = d < 0 ? e[index] : std::min(d, e[index]);
  return std::max(d, 0);
}

std::map<int, ExtPoly> ExtPoly::split(std::size_t index) const {
  std::map<int, ExtPoly> out;
  for (const auto& [e, c] : t_) {
    Exponents ne = e;
    ne[index] = 0;
    out.try_emplace(e[index], F_, vars_).first->second.add_term(ne, c);
  }
  return out;
}

ExtPoly ExtPoly::without(std::size_t index) const {
  std::vector<std::string> nv = vars_;
  nv.erase(nv.begin() + static_cast<std::ptrdiff_t>(index));
  ExtPoly r(F_, nv);
  for (const auto& [e, c] : t_) {
    if (e[index] != 0) fail(ErrorKind::Invariant, kModule, "ExtPoly.without", "variable still occurs");
    Exponents ne = e;
    ne.erase(ne.begin() + static_cast<std::ptrdiff_t>(index));
    r.add_term(ne, c);
  }
  return r;
}

ExtPoly ExtPoly::shifted_down(std::size_t index, int k) const {
  ExtPoly r(F_, vars_);
  for (const auto& [e, c] : t_) {
    Exponents ne = e;
    ne[index] -= k;
    if (ne[index] < 0) fail(ErrorKind::Invariant, kModule, "ExtPoly.shifted_down", "negative exponent");
    r.add_term(ne, c);
  }
  return r;
}

ExtElem ExtPoly::constant_value() const {
  if (t_.empty()) return ExtElem::zero(F_);
  for (const auto& [e, c] : t_) {
    for (int x : e) {
      if (x != 0) fail(ErrorKind::Precondition, kModule, "ExtPoly.constant_value", "polynomial not constant");
    }
  }
  return t_.begin()->second;
}

ExtPoly operator+(const ExtPoly& a, const ExtPoly& b) {
  ExtPoly r = a;
  for (const auto& [e, c] : b.t_) r.add_term(e, c);
  return r;
}

ExtPoly operator-(const ExtPoly& a, const ExtPoly& b) {
  ExtPoly r = a;
  for (const auto& [e, c] : b.t_) r.add_term(e, -c);
  return r;
}

ExtPoly operator*(const ExtPoly& a, const ExtPoly& b) {
  ExtPoly r(a.F_, a.vars_);
  for (const auto& [ea, ca] : a.t_) {
    for (const auto& [eb, cb] : b.t_) {
      Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

ExtPoly ExtPoly::pow(unsigned e) const {
  ExtPoly result = constant(F_, vars_, ExtElem::one(F_));
  ExtPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

ExtPoly ExtPoly::scaled(const ExtElem& c) const {
  ExtPoly r(F_, vars_);
  for (const auto& [e, x] : t_) r.add_term(e, x * c);
  return r;
}

}  // namespace hlf::exactalg
