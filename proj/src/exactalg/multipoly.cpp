#include "hlf/exactalg/multipoly.hpp"

#include <algorithm>
#include <sstream>

#include "hlf/error.hpp"

namespace hlf::exactalg {

namespace {

constexpr std::string_view kModule = "exactalg";

void check_field(const MultiPoly& a, const MultiPoly& b, const char* op) {
  if (a.field() != b.field()) {
    fail(ErrorKind::Precondition, kModule, op, "field mismatch " + a.field().tag() + " vs " + b.field().tag());
  }
}

}  // namespace

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

MultiPoly::MultiPoly(Field f, std::vector<std::string> vars, std::map<Exponents, Scalar> terms)
    : field_(f), vars_(std::move(vars)), terms_(std::move(terms)) {
  normalize();
}

void MultiPoly::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) used[i] = used[i] || e[i] != 0;
  }
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
  std::vector<std::string> nv;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (used[i]) nv.push_back(vars_[i]);
  }
  std::map<Exponents, Scalar> nt;
  for (const auto& [e, c] : terms_) {
    Exponents ne;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (used[i]) ne.push_back(e[i]);
    }
    nt.emplace(std::move(ne), c);
  }
  vars_ = std::move(nv);
  terms_ = std::move(nt);
}

MultiPoly MultiPoly::extended(const std::vector<std::string>& vars) const {
  std::vector<std::size_t> pos;
  for (const auto& v : vars_) {
    pos.push_back(static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin()));
  }
  MultiPoly r(field_);
  r.vars_ = vars;
  for (const auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
    r.terms_.emplace(std::move(ne), c);
  }
  return r;
}

MultiPoly MultiPoly::constant(const Scalar& c) {
  std::map<Exponents, Scalar> t;
  t.emplace(Exponents{}, c);
  return MultiPoly(c.field(), {}, std::move(t));
}

MultiPoly MultiPoly::variable(Field f, const std::string& name) {
  std::map<Exponents, Scalar> t;
  t.emplace(Exponents{1}, Scalar::one(f));
  return MultiPoly(f, {name}, std::move(t));
}

MultiPoly MultiPoly::monomial(const Scalar& c, const std::vector<std::string>& vars, const Exponents& e) {
  if (vars.size() != e.size()) fail(ErrorKind::Precondition, kModule, "monomial", "exponent length mismatch");
  MultiPoly r = constant(c);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (e[i] < 0) fail(ErrorKind::Precondition, kModule, "monomial", "negative exponent");
    r = r * variable(c.field(), vars[i]).pow(static_cast<unsigned>(e[i]));
  }
  return r;
}

MultiPoly MultiPoly::from_univariate(const UPoly& p, const std::string& var) {
  std::map<Exponents, Scalar> t;
  for (int i = 0; i <= p.degree(); ++i) t.emplace(Exponents{i}, p.coeff(i));
  return MultiPoly(p.field(), {var}, std::move(t));
}

Scalar MultiPoly::constant_value() const {
  if (!is_constant()) fail(ErrorKind::Precondition, kModule, "constant_value", "polynomial is not constant");
  return is_zero() ? Scalar::zero(field_) : terms_.begin()->second;
}

bool MultiPoly::has_var(const std::string& v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }

int MultiPoly::total_degree() const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::degree_in(const std::string& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return 0;
  const auto i = static_cast<std::size_t>(it - vars_.begin());
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

int MultiPoly::low_degree_in(const std::string& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return 0;
  const auto i = static_cast<std::size_t>(it - vars_.begin());
  int d = -1;
  for (const auto& [e, c] : terms_) d = d < 0 ? e[i] : std::min(d, e[i]);
  return std::max(d, 0);
}

std::pair<Exponents, Scalar> MultiPoly::leading_term() const {
  if (is_zero()) fail(ErrorKind::Precondition, kModule, "leading_term", "zero polynomial");
  return *terms_.rbegin();
}

Exponents MultiPoly::monomial_content() const {
  Exponents m(vars_.size(), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

std::map<int, MultiPoly> MultiPoly::coeffs_in(const std::string& v) const {
  std::map<int, MultiPoly> out;
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) {
    if (!is_zero()) out.emplace(0, *this);
    return out;
  }
  const auto idx = static_cast<std::size_t>(it - vars_.begin());
  std::map<int, std::map<Exponents, Scalar>> parts;
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    ne[idx] = 0;
    parts[e[idx]].emplace(std::move(ne), c);
  }
  for (auto& [k, t] : parts) out.emplace(k, MultiPoly(field_, vars_, std::move(t)));
  return out;
}

MultiPoly MultiPoly::substitute(const std::string& v, const MultiPoly& value) const {
  check_field(*this, value, "substitute");
  if (!has_var(v)) return *this;
  MultiPoly acc(field_);
  const auto parts = coeffs_in(v);
  // Horner from the top degree down.
  int prev = parts.rbegin()->first;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    acc = acc * value.pow(static_cast<unsigned>(prev - it->first)) + it->second;
    prev = it->first;
  }
  return acc * value.pow(static_cast<unsigned>(prev));
}

MultiPoly MultiPoly::substitute(const std::string& v, const Scalar& value) const {
  return substitute(v, constant(value));
}

MultiPoly MultiPoly::rename(const std::map<std::string, std::string>& names) const {
  MultiPoly acc(field_);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto it = names.find(vars_[i]);
      const std::string& nm = it == names.end() ? vars_[i] : it->second;
      t = t * variable(field_, nm).pow(static_cast<unsigned>(e[i]));
    }
    acc = acc + t;
  }
  return acc;
}

MultiPoly MultiPoly::divide_monomial(const std::vector<std::string>& vars, const Exponents& e) const {
  const auto all = merge_vars(vars_, vars);
  MultiPoly r = extended(all);
  Exponents shift(all.size(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    shift[static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), vars[i]) - all.begin())] += e[i];
  }
  std::map<Exponents, Scalar> nt;
  for (const auto& [ex, c] : r.terms_) {
    Exponents ne = ex;
    for (std::size_t i = 0; i < ne.size(); ++i) {
      ne[i] -= shift[i];
      if (ne[i] < 0) fail(ErrorKind::Precondition, kModule, "divide_monomial", "monomial does not divide");
    }
    nt.emplace(std::move(ne), c);
  }
  return MultiPoly(field_, all, std::move(nt));
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
  auto t = terms_;
  for (auto& [e, x] : t) x *= c;
  return MultiPoly(field_, vars_, std::move(t));
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(Scalar::one(field_));
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

UPoly MultiPoly::to_univariate(const std::string& v) const {
  if (vars_.size() > 1 || (vars_.size() == 1 && vars_[0] != v)) {
    fail(ErrorKind::Precondition, kModule, "to_univariate", "polynomial is not univariate in " + v);
  }
  std::vector<Scalar> c(static_cast<std::size_t>(std::max(0, degree_in(v) + 1)), Scalar::zero(field_));
  for (const auto& [e, x] : terms_) c[static_cast<std::size_t>(e.empty() ? 0 : e[0])] = x;
  return UPoly(field_, std::move(c));
}

MultiPoly MultiPoly::operator-() const { return scaled(-Scalar::one(field_)); }

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  check_field(a, b, "MultiPoly.add");
  if (a.vars_ == b.vars_) {
    auto t = a.terms_;
    for (const auto& [e, c] : b.terms_) {
      auto [it, inserted] = t.emplace(e, c);
      if (!inserted) it->second += c;
    }
    return MultiPoly(a.field_, a.vars_, std::move(t));
  }
  const auto all = merge_vars(a.vars_, b.vars_);
  return a.extended(all) + b.extended(all);
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  check_field(a, b, "MultiPoly.mul");
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.field_);
  if (a.vars_ != b.vars_) {
    const auto all = merge_vars(a.vars_, b.vars_);
    return a.extended(all) * b.extended(all);
  }
  std::map<Exponents, Scalar> t;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      auto [it, inserted] = t.emplace(std::move(e), ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  return MultiPoly(a.field_, a.vars_, std::move(t));
}

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  check_field(a, b, "divide_exact");
  if (b.is_zero()) fail(ErrorKind::Precondition, kModule, "divide_exact", "division by zero polynomial");
  if (a.is_zero()) return MultiPoly(a.field());
  for (const auto& v : b.vars()) {
    if (!a.has_var(v)) return std::nullopt;
  }
  const auto all = merge_vars(a.vars(), b.vars());
  const MultiPoly bb = b.extended(all);
  const auto [lb_e, lb_c] = bb.leading_term();
  const Scalar lb_inv = lb_c.inv();
  MultiPoly r = a.extended(all);
  std::map<Exponents, Scalar> q;
  while (!r.is_zero()) {
    const MultiPoly rr = r.extended(all);
    const auto [lr_e, lr_c] = rr.leading_term();
    Exponents d(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      d[i] = lr_e[i] - lb_e[i];
      if (d[i] < 0) return std::nullopt;
    }
    const Scalar c = lr_c * lb_inv;
    q.emplace(d, c);
    std::map<Exponents, Scalar> mt;
    mt.emplace(d, c);
    r = rr - MultiPoly(a.field(), all, std::move(mt)) * bb;
  }
  return MultiPoly(a.field(), all, std::move(q));
}

std::string MultiPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool is_const = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    std::string cs = c.to_string();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (is_const || cs != "1") {
      os << cs;
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace hlf::exactalg
