#include "hlf/laurent/series.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "hlf/error.hpp"

namespace hlf::laurent {

namespace {

constexpr std::string_view kModule = "laurent";

long sat_add(long a, long b) {
  if (a >= kExact || b >= kExact) return kExact;
  return a + b;
}

}  // namespace

CoordTower::CoordTower(std::vector<std::string> layers, ExtField residue)
    : layers_(std::move(layers)), residue_(std::move(residue)) {
  std::set<std::string> seen;
  for (const auto& l : layers_) {
    if (l.empty()) fail(ErrorKind::Precondition, kModule, "CoordTower", "empty layer name");
    if (!seen.insert(l).second) fail(ErrorKind::Precondition, kModule, "CoordTower", "repeated layer " + l);
  }
}

CoordTower CoordTower::prefix(int d) const {
  return CoordTower(std::vector<std::string>(layers_.begin(), layers_.begin() + d), residue_);
}

std::string CoordTower::to_string() const {
  std::string s = residue_.to_string();
  for (const auto& l : layers_) s += "((" + l + "))";
  return s;
}

// ---- construction ----

NestedSeries NestedSeries::zero(const CoordTower& tower) {
  return NestedSeries::scalar(tower, ExtElem::zero(tower.residue()));
}

NestedSeries NestedSeries::scalar(const CoordTower& tower, const ExtElem& c) {
  if (c.field() != tower.residue()) fail(ErrorKind::Precondition, kModule, "scalar", "residue field mismatch");
  auto t = std::make_shared<const CoordTower>(tower);
  NestedSeries s(t, 0);
  s.s_ = c;
  for (int d = 1; d <= tower.depth(); ++d) {
    NestedSeries up(t, d);
    if (!c.is_zero()) {
      up.val_ = 0;
      up.c_.push_back(std::move(s));
    }
    s = std::move(up);
  }
  return s;
}

NestedSeries NestedSeries::monomial(const CoordTower& tower, const std::string& var, long e) {
  const auto& L = tower.layers();
  auto it = std::find(L.begin(), L.end(), var);
  if (it == L.end()) fail(ErrorKind::Precondition, kModule, "monomial", "no layer named " + var);
  const int idx = static_cast<int>(it - L.begin());
  auto t = std::make_shared<const CoordTower>(tower);
  NestedSeries s(t, 0);
  s.s_ = ExtElem::one(tower.residue());
  for (int d = 1; d <= tower.depth(); ++d) {
    NestedSeries up(t, d);
    up.val_ = (d - 1 == idx) ? e : 0;
    up.c_.push_back(std::move(s));
    s = std::move(up);
  }
  return s;
}

NestedSeries NestedSeries::from_coeffs(const CoordTower& tower, std::map<long, NestedSeries> coeffs, long prec) {
  if (tower.depth() < 1) fail(ErrorKind::Precondition, kModule, "from_coeffs", "depth must be >= 1");
  auto t = std::make_shared<const CoordTower>(tower);
  NestedSeries r(t, tower.depth());
  r.prec_ = prec;
  const CoordTower inner = tower.prefix(tower.depth() - 1);
  if (!coeffs.empty()) {
    r.val_ = coeffs.begin()->first;
    const long hi = coeffs.rbegin()->first;
    for (long e = r.val_; e <= hi; ++e) {
      auto it = coeffs.find(e);
      if (it == coeffs.end()) {
        r.c_.push_back(zero(inner));
      } else {
        if (it->second.tower() != inner) {
          fail(ErrorKind::Precondition, kModule, "from_coeffs", "coefficient tower mismatch");
        }
        r.c_.push_back(it->second);
      }
    }
  }
  // rebind coefficient towers to the shared prefix chain
  std::function<void(NestedSeries&)> rebind = [&](NestedSeries& x) {
    x.tower_ = t;
    for (auto& c : x.c_) rebind(c);
  };
  for (auto& c : r.c_) rebind(c);
  r.normalize();
  return r;
}

CoordTower NestedSeries::tower() const { return tower_->prefix(depth_); }

const std::string& NestedSeries::var() const { return tower_->layers()[static_cast<std::size_t>(depth_ - 1)]; }

bool NestedSeries::exact() const {
  if (depth_ == 0) return true;
  if (prec_ < kExact) return false;
  return std::all_of(c_.begin(), c_.end(), [](const NestedSeries& c) { return c.exact(); });
}

bool NestedSeries::exact_zero() const {
  if (depth_ == 0) return s_->is_zero();
  return c_.empty() && prec_ >= kExact;
}

bool NestedSeries::is_zero() const {
  if (depth_ == 0) return s_->is_zero();
  return std::all_of(c_.begin(), c_.end(), [](const NestedSeries& c) { return c.is_zero(); });
}

const ExtElem& NestedSeries::scalar_value() const {
  if (depth_ != 0) fail(ErrorKind::Precondition, kModule, "scalar_value", "series has positive depth");
  return *s_;
}

NestedSeries NestedSeries::coeff(long e) const {
  if (depth_ == 0) fail(ErrorKind::Precondition, kModule, "coeff", "depth-0 element has no coefficients");
  if (!c_.empty() && e >= val_ && e < val_ + static_cast<long>(c_.size())) {
    return c_[static_cast<std::size_t>(e - val_)];
  }
  NestedSeries z(tower_, depth_ - 1);
  if (depth_ - 1 == 0) z.s_ = ExtElem::zero(tower_->residue());
  return z;
}

void NestedSeries::normalize() {
  if (depth_ == 0) return;
  if (prec_ < kExact && !c_.empty() && val_ + static_cast<long>(c_.size()) > prec_) {
    const long keep = std::max(0L, prec_ - val_);
    c_.resize(static_cast<std::size_t>(keep), coeff(kExact));
  }
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].exact_zero()) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<long>(lead);
  }
  while (!c_.empty() && c_.back().exact_zero()) c_.pop_back();
  if (c_.empty()) val_ = prec_;
}

void NestedSeries::check_compatible(const NestedSeries& o, const char* op) const {
  if (depth_ != o.depth_ || (tower_ != o.tower_ && tower() != o.tower())) {
    fail(ErrorKind::Precondition, kModule, op, "tower mismatch " + tower().to_string() + " vs " + o.tower().to_string());
  }
}

// ---- arithmetic ----

NestedSeries NestedSeries::operator-() const { return scaled(-ExtElem::one(tower_->residue())); }

NestedSeries NestedSeries::scaled(const ExtElem& c) const {
  NestedSeries r = *this;
  if (depth_ == 0) {
    r.s_ = *s_ * c;
    return r;
  }
  for (auto& x : r.c_) x = x.scaled(c);
  r.normalize();
  return r;
}

NestedSeries operator+(const NestedSeries& a, const NestedSeries& b) {
  a.check_compatible(b, "add");
  if (a.depth_ == 0) {
    NestedSeries r = a;
    r.s_ = *a.s_ + *b.s_;
    return r;
  }
  NestedSeries r(a.tower_, a.depth_);
  r.prec_ = std::min(a.prec_, b.prec_);
  if (a.c_.empty() && b.c_.empty()) {
    r.normalize();
    return r;
  }
  const long lo = a.c_.empty() ? b.val_ : (b.c_.empty() ? a.val_ : std::min(a.val_, b.val_));
  const long a_end = a.c_.empty() ? lo : a.val_ + static_cast<long>(a.c_.size());
  const long b_end = b.c_.empty() ? lo : b.val_ + static_cast<long>(b.c_.size());
  const long hi = std::min(r.prec_, std::max(a_end, b_end));
  r.val_ = lo;
  for (long e = lo; e < hi; ++e) r.c_.push_back(a.coeff(e) + b.coeff(e));
  r.normalize();
  return r;
}

NestedSeries operator-(const NestedSeries& a, const NestedSeries& b) { return a + (-b); }

NestedSeries operator*(const NestedSeries& a, const NestedSeries& b) {
  a.check_compatible(b, "mul");
  if (a.depth_ == 0) {
    NestedSeries r = a;
    r.s_ = *a.s_ * *b.s_;
    return r;
  }
  NestedSeries r(a.tower_, a.depth_);
  if (a.exact_zero() || b.exact_zero()) {
    r.prec_ = kExact;
    r.normalize();
    return r;
  }
  r.prec_ = std::min(sat_add(a.val_, b.prec_), sat_add(a.prec_, b.val_));
  if (a.c_.empty() || b.c_.empty()) {
    r.normalize();
    return r;
  }
  const long lo = a.val_ + b.val_;
  const long hi = std::min(r.prec_, lo + static_cast<long>(a.c_.size() + b.c_.size()) - 1);
  r.val_ = lo;
  for (long e = lo; e < hi; ++e) {
    NestedSeries acc = a.coeff(kExact);  // exact zero of depth - 1
    const long k = e - lo;
    for (long i = std::max(0L, k - static_cast<long>(b.c_.size()) + 1);
         i <= std::min(k, static_cast<long>(a.c_.size()) - 1); ++i) {
      acc = acc + a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(k - i)];
    }
    r.c_.push_back(std::move(acc));
  }
  r.normalize();
  return r;
}

NestedSeries NestedSeries::shifted(long k) const {
  if (depth_ == 0) fail(ErrorKind::Precondition, kModule, "shifted", "depth-0 element");
  NestedSeries r = *this;
  if (!r.c_.empty()) r.val_ += k;
  r.prec_ = sat_add(r.prec_, k);
  if (r.c_.empty()) r.val_ = r.prec_;
  return r;
}

NestedSeries NestedSeries::truncated(long p) const {
  if (depth_ == 0) return *this;
  NestedSeries r = *this;
  r.prec_ = std::min(r.prec_, p);
  r.normalize();
  return r;
}

std::pair<long, NestedSeries> NestedSeries::valuation_and_unit() const {
  if (depth_ == 0) fail(ErrorKind::Precondition, kModule, "valuation_and_unit", "depth-0 element");
  std::size_t k = 0;
  while (k < c_.size() && c_[k].is_zero()) {
    if (!c_[k].exact_zero()) {
      fail(ErrorKind::Precondition, kModule, "valuation_and_unit",
           "precision exhausted: coefficient of " + var() + "^" + std::to_string(val_ + static_cast<long>(k)) +
               " is not determined");
    }
    ++k;
  }
  if (k == c_.size()) fail(ErrorKind::Precondition, kModule, "valuation_and_unit", "precision exhausted");
  const long v = val_ + static_cast<long>(k);
  NestedSeries u = *this;
  u.c_.erase(u.c_.begin(), u.c_.begin() + static_cast<std::ptrdiff_t>(k));
  u.val_ = 0;
  u.prec_ = sat_add(prec_, -v);
  return {v, u};
}

NestedSeries NestedSeries::leading_coeff() const {
  auto [v, u] = valuation_and_unit();
  return u.c_.front();
}

NestedSeries NestedSeries::inv(long want) const {
  if (depth_ == 0) {
    NestedSeries r = *this;
    r.s_ = s_->inv();
    return r;
  }
  auto [v, u] = valuation_and_unit();
  const NestedSeries c0inv = u.c_.front().inv(want);
  NestedSeries r(tower_, depth_);
  if (u.c_.size() == 1 && prec_ >= kExact) {
    r.val_ = -v;
    r.prec_ = kExact;
    r.c_.push_back(c0inv);
    r.normalize();
    return r;
  }
  const long p_res = prec_ >= kExact ? std::max(want, -v + 1) : prec_ - 2 * v;
  const long K = p_res + v;
  std::vector<NestedSeries> b;
  b.reserve(static_cast<std::size_t>(K));
  b.push_back(c0inv);
  for (long j = 1; j < K; ++j) {
    NestedSeries acc = coeff(kExact);
    for (long i = 1; i <= j && i < static_cast<long>(u.c_.size()); ++i) {
      acc = acc + u.c_[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j - i)];
    }
    b.push_back(-(c0inv * acc));
  }
  r.val_ = -v;
  r.prec_ = p_res;
  r.c_ = std::move(b);
  r.normalize();
  return r;
}

bool NestedSeries::agrees_with(const NestedSeries& o) const {
  check_compatible(o, "agrees_with");
  if (depth_ == 0) return *s_ == *o.s_;
  const long P = std::min(prec_, o.prec_);
  long lo = kExact;
  long hi = -kExact;
  for (const NestedSeries* x : {this, &o}) {
    if (x->c_.empty()) continue;
    lo = std::min(lo, x->val_);
    hi = std::max(hi, x->val_ + static_cast<long>(x->c_.size()));
  }
  for (long e = lo; e < std::min(hi, P); ++e) {
    if (!coeff(e).agrees_with(o.coeff(e))) return false;
  }
  return true;
}

// ---- text ----

std::string NestedSeries::to_string() const {
  if (depth_ == 0) return s_->to_string();
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].exact_zero()) continue;
    if (!out.empty()) out += " + ";
    const std::string cs = c_[i].to_string();
    out += depth_ == 1 ? cs : "(" + cs + ")";
    out += "*" + var() + "^" + std::to_string(val_ + static_cast<long>(i));
  }
  if (prec_ < kExact) {
    if (!out.empty()) out += " + ";
    out += "O(" + var() + "^" + std::to_string(prec_) + ")";
  }
  return out.empty() ? "0" : out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth == 0 && s.substr(i, 3) == " + ") {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 3;
      i += 2;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

long parse_long(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, kModule, "NestedSeries.parse", std::string("bad ") + what + " '" + s + "'");
  }
}

}  // namespace

NestedSeries NestedSeries::parse(const CoordTower& tower, std::string_view text) {
  const std::string s = trim(text);
  if (tower.depth() == 0) return scalar(tower, ExtElem::parse(tower.residue(), s));
  const std::string& X = tower.layers().back();
  const CoordTower inner = tower.prefix(tower.depth() - 1);
  std::map<long, NestedSeries> coeffs;
  long prec = kExact;
  if (s == "0") return from_coeffs(tower, {}, kExact);
  for (const auto& term : split_top(s)) {
    const std::string big_o = "O(" + X + "^";
    if (term.rfind(big_o, 0) == 0 && term.back() == ')') {
      prec = parse_long(term.substr(big_o.size(), term.size() - big_o.size() - 1), "precision");
      continue;
    }
    const std::string tail = "*" + X + "^";
    const auto pos = term.rfind(tail);
    if (pos == std::string::npos) {
      fail(ErrorKind::Parse, kModule, "NestedSeries.parse", "term '" + term + "' lacks '" + tail + "'");
    }
    const long e = parse_long(term.substr(pos + tail.size()), "exponent");
    std::string coef = term.substr(0, pos);
    if (inner.depth() > 0) {
      if (coef.size() < 2 || coef.front() != '(' || coef.back() != ')') {
        fail(ErrorKind::Parse, kModule, "NestedSeries.parse", "inner coefficient must be parenthesized: '" + coef + "'");
      }
      coef = coef.substr(1, coef.size() - 2);
    }
    if (!coeffs.emplace(e, parse(inner, coef)).second) {
      fail(ErrorKind::Parse, kModule, "NestedSeries.parse", "repeated exponent " + std::to_string(e));
    }
  }
  return from_coeffs(tower, std::move(coeffs), prec);
}

// ---- expansion ----

NestedSeries expand_poly_pair(const std::shared_ptr<const CoordTower>& t, int depth, const ExtPoly& num,
                              const ExtPoly& den, long prec) {
  if (den.is_zero()) fail(ErrorKind::Precondition, kModule, "expand", "not expandable in this tower order");
  if (depth == 0) {
    NestedSeries r(t, 0);
    r.s_ = num.constant_value() / den.constant_value();
    return r;
  }
  NestedSeries r(t, depth);
  if (num.is_zero()) {
    r.prec_ = kExact;
    r.normalize();
    return r;
  }
  const auto idx = static_cast<std::size_t>(depth - 1);
  const int a = num.low_degree(idx);
  const int b = den.low_degree(idx);
  const long v = a - b;
  auto Ns = num.split(idx);
  auto Ds = den.split(idx);
  std::map<int, ExtPoly> N;
  std::map<int, ExtPoly> D;
  for (auto& [k, p] : Ns) N.emplace(k, p.without(idx));
  for (auto& [k, p] : Ds) D.emplace(k, p.without(idx));
  const ExtPoly& Db = D.at(b);
  r.val_ = v;
  if (den.is_monomial()) {
    r.prec_ = kExact;
    const int top = N.rbegin()->first;
    for (int k = a; k <= top; ++k) {
      auto it = N.find(k);
      if (it == N.end()) {
        r.c_.push_back(r.coeff(kExact));
      } else {
        r.c_.push_back(expand_poly_pair(t, depth - 1, it->second, Db, prec));
      }
    }
    r.normalize();
    return r;
  }
  const long P = std::max(prec, v + 1);
  const long K = P - v;
  const ExtPoly zero_inner(t->residue(), Db.vars());
  auto get = [&](const std::map<int, ExtPoly>& m, long k) -> const ExtPoly& {
    auto it = m.find(static_cast<int>(k));
    return it == m.end() ? zero_inner : it->second;
  };
  // c_j = P_j / Db^(j+1) with
  // P_j = N_{a+j} Db^j - sum_{i>=1} D_{b+i} P_{j-i} Db^(i-1)
  std::vector<ExtPoly> Pj;
  std::vector<ExtPoly> Dpow{ExtPoly::constant(t->residue(), Db.vars(), ExtElem::one(t->residue()))};
  for (long j = 0; j < K; ++j) {
    Dpow.push_back(Dpow.back() * Db);
    ExtPoly p = get(N, a + j) * Dpow[static_cast<std::size_t>(j)];
    for (long i = 1; i <= j; ++i) {
      const ExtPoly& Di = get(D, b + i);
      if (Di.is_zero()) continue;
      p = p - Di * Pj[static_cast<std::size_t>(j - i)] * Dpow[static_cast<std::size_t>(i - 1)];
    }
    Pj.push_back(p);
    r.c_.push_back(expand_poly_pair(t, depth - 1, p, Dpow[static_cast<std::size_t>(j + 1)], prec));
  }
  r.prec_ = P;
  r.normalize();
  return r;
}

NestedSeries expand(const RatFun& f, const CoordTower& tower, long prec,
                    const std::map<std::string, ExtPoly>& images) {
  if (f.is_zero()) fail(ErrorKind::Precondition, kModule, "expand", "expansion of zero");
  if (prec < 1) fail(ErrorKind::Precondition, kModule, "expand", "precision must be >= 1");
  const auto& F = tower.residue();
  const ExtPoly num = ExtPoly::from_poly(f.num(), F, tower.layers(), images);
  const ExtPoly den = ExtPoly::from_poly(f.den(), F, tower.layers(), images);
  auto t = std::make_shared<const CoordTower>(tower);
  return expand_poly_pair(t, tower.depth(), num, den, prec);
}

NestedSeries expand(const RatFun& f, const CoordTower& tower, long prec) {
  std::map<std::string, ExtPoly> images;
  const auto& L = tower.layers();
  for (const auto& v : f.vars()) {
    auto it = std::find(L.begin(), L.end(), v);
    if (it == L.end()) {
      fail(ErrorKind::Precondition, kModule, "expand", "variable " + v + " is not a layer of " + tower.to_string());
    }
    images.emplace(v, ExtPoly::variable(tower.residue(), L, static_cast<std::size_t>(it - L.begin())));
  }
  if (tower.residue().base_field() != f.field()) {
    fail(ErrorKind::Precondition, kModule, "expand", "field mismatch");
  }
  return expand(f, tower, prec, images);
}

NestedSeries series_mul(const NestedSeries& a, const NestedSeries& b) { return a * b; }
NestedSeries series_inv(const NestedSeries& a, long want) { return a.inv(want); }
std::pair<long, NestedSeries> valuation_and_unit(const NestedSeries& x) { return x.valuation_and_unit(); }

}  // namespace hlf::laurent
