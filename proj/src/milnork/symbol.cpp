#include "hlf/milnork/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hlf/error.hpp"

namespace hlf::milnork {

namespace {

constexpr std::string_view kModule = "milnork";

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void mismatch(const char* op) {
  fail(ErrorKind::Precondition, kModule, op, "entries live in different kinds of ambient field");
}

NestedSeries series_pow(const NestedSeries& x, long e) {
  NestedSeries base = e < 0 ? x.inv() : x;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  NestedSeries acc = NestedSeries::one(x.tower().prefix(x.depth()));
  while (k > 0) {
    if (k & 1UL) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

// Rethrows series precision failures with a request for more terms.
template <class F>
auto with_precision_hint(const char* op, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    const std::string what = e.what();
    if (what.find("precision") != std::string::npos) {
      fail(ErrorKind::Precondition, kModule, op, "more precision needed (" + what + ")");
    }
    throw;
  }
}

std::pair<long, RatFun> split_ratfun(const RatFun& f, const ValuationRef& v) {
  const Field F = f.field();
  const RatFun x = RatFun::variable(F, v.var);
  if (v.kind == ValuationRef::Kind::Variable) {
    if (!v.centre || v.centre->is_zero()) {
      const long m = exactalg::ord_in_variable(f, v.var);
      return {m, f / x.pow(m)};
    }
    const RatFun shifted = f.substitute(v.var, x + RatFun::constant(*v.centre));
    const long m = exactalg::ord_in_variable(shifted, v.var);
    return {m, f / (x - RatFun::constant(*v.centre)).pow(m)};
  }
  // closed point: count factors of the modulus
  for (const auto& name : f.vars()) {
    if (name != v.var) {
      fail(ErrorKind::Precondition, kModule, "valuation",
           "closed-point valuation needs a function of " + v.var + " only, got " + f.to_string());
    }
  }
  if (f.is_zero()) fail(ErrorKind::Precondition, kModule, "valuation", "valuation of zero undefined");
  const auto& m = v.point->modulus();
  auto count = [&](exactalg::UPoly p) {
    long k = 0;
    for (;;) {
      auto [q, r] = exactalg::divmod(p, m);
      if (!r.is_zero()) return k;
      p = q;
      ++k;
    }
  };
  const long k = count(f.num().to_univariate(v.var)) - count(f.den().to_univariate(v.var));
  const RatFun pm(exactalg::MultiPoly::from_univariate(m, v.var));
  return {k, f / pm.pow(k)};
}

}  // namespace

// ---- entries ----

std::string entry_to_string(const Entry& e) {
  return std::visit([](const auto& x) { return x.to_string(); }, e);
}

bool entry_is_zero(const Entry& e) {
  return std::visit(overloaded{[](const RatFun& x) { return x.is_zero(); },
                               [](const NestedSeries& x) { return x.exact_zero(); },
                               [](const ExtElem& x) { return x.is_zero(); }},
                    e);
}

bool entry_is_one(const Entry& e) {
  return std::visit(overloaded{[](const RatFun& x) { return x.is_constant() && x.constant_value() == Scalar::one(x.field()); },
                               [](const NestedSeries& x) {
                                 return x.exact() && (x - NestedSeries::one(x.tower().prefix(x.depth()))).exact_zero();
                               },
                               [](const ExtElem& x) { return x.is_one(); }},
                    e);
}

Entry entry_mul(const Entry& a, const Entry& b) {
  if (a.index() != b.index()) mismatch("entry_mul");
  return std::visit(overloaded{[&](const RatFun& x) -> Entry { return x * std::get<RatFun>(b); },
                               [&](const NestedSeries& x) -> Entry { return x * std::get<NestedSeries>(b); },
                               [&](const ExtElem& x) -> Entry { return x * std::get<ExtElem>(b); }},
                    a);
}

Entry entry_pow(const Entry& a, long e) {
  return std::visit(overloaded{[&](const RatFun& x) -> Entry { return x.pow(e); },
                               [&](const NestedSeries& x) -> Entry { return series_pow(x, e); },
                               [&](const ExtElem& x) -> Entry { return x.pow(e); }},
                    a);
}

Entry entry_minus_one_like(const Entry& a) {
  return std::visit(
      overloaded{[](const RatFun& x) -> Entry { return RatFun::constant(-Scalar::one(x.field())); },
                 [](const NestedSeries& x) -> Entry { return -NestedSeries::one(x.tower().prefix(x.depth())); },
                 [](const ExtElem& x) -> Entry { return -ExtElem::one(x.field()); }},
      a);
}

// ---- valuations ----

ValuationRef ValuationRef::variable(std::string var, std::optional<Scalar> centre) {
  ValuationRef r;
  r.kind = Kind::Variable;
  r.var = std::move(var);
  r.centre = std::move(centre);
  return r;
}

ValuationRef ValuationRef::closed_point(std::string var, ExtField point) {
  ValuationRef r;
  r.kind = Kind::ClosedPoint;
  r.var = std::move(var);
  r.point = std::move(point);
  return r;
}

int ValuationRef::residue_degree() const { return kind == Kind::ClosedPoint ? point->degree() : 1; }

std::string ValuationRef::to_string() const {
  switch (kind) {
    case Kind::Variable:
      return "ord_" + var + (centre && !centre->is_zero() ? "@" + centre->to_string() : "");
    case Kind::ClosedPoint:
      return "ord_(" + point->modulus().to_string() + ")(" + var + ")";
    case Kind::OuterLayer:
      return "ord_outer";
  }
  return "?";
}

std::pair<long, Entry> split(const Entry& f, const ValuationRef& v) {
  if (entry_is_zero(f)) fail(ErrorKind::Precondition, kModule, "valuation", "valuation of zero undefined");
  return std::visit(
      overloaded{[&](const RatFun& x) -> std::pair<long, Entry> {
                   if (v.kind == ValuationRef::Kind::OuterLayer) {
                     fail(ErrorKind::Precondition, kModule, "valuation", "outer-layer valuation on a rational function");
                   }
                   auto [m, u] = split_ratfun(x, v);
                   return {m, Entry(std::move(u))};
                 },
                 [&](const NestedSeries& x) -> std::pair<long, Entry> {
                   if (v.kind != ValuationRef::Kind::OuterLayer) {
                     fail(ErrorKind::Precondition, kModule, "valuation", "series entries use the outer-layer valuation");
                   }
                   if (x.depth() == 0) fail(ErrorKind::Precondition, kModule, "valuation", "depth-0 series has no valuation");
                   auto [m, u] = with_precision_hint("valuation", [&] { return x.valuation_and_unit(); });
                   return {m, Entry(std::move(u))};
                 },
                 [&](const ExtElem&) -> std::pair<long, Entry> {
                   fail(ErrorKind::Precondition, kModule, "valuation", "residue-field element carries no valuation");
                 }},
      f);
}

long valuation(const Entry& f, const ValuationRef& v) { return split(f, v).first; }

Entry residue(const Entry& unit, const ValuationRef& v) {
  return std::visit(
      overloaded{[&](const RatFun& x) -> Entry {
                   if (v.kind == ValuationRef::Kind::Variable) {
                     return x.substitute(v.var, v.centre ? *v.centre : Scalar::zero(x.field()));
                   }
                   if (v.kind != ValuationRef::Kind::ClosedPoint) mismatch("residue");
                   const ExtElem n(*v.point, x.num().to_univariate(v.var));
                   const ExtElem d(*v.point, x.den().to_univariate(v.var));
                   if (n.is_zero() || d.is_zero()) {
                     fail(ErrorKind::Precondition, kModule, "residue", x.to_string() + " is not a unit at the point");
                   }
                   return n / d;
                 },
                 [&](const NestedSeries& x) -> Entry {
                   if (v.kind != ValuationRef::Kind::OuterLayer) mismatch("residue");
                   return with_precision_hint("residue", [&] {
                     if (x.valuation() != 0) {
                       fail(ErrorKind::Precondition, kModule, "residue", "not a unit: " + x.to_string());
                     }
                     return x.coeff(0);
                   });
                 },
                 [&](const ExtElem&) -> Entry { mismatch("residue"); }},
      unit);
}

// ---- symbol sums ----

SymbolSum::SymbolSum(long coeff, std::vector<Entry> entries) : length_(static_cast<int>(entries.size())) {
  add(coeff, std::move(entries));
}

void SymbolSum::add(long coeff, std::vector<Entry> entries) {
  if (static_cast<int>(entries.size()) != length_) {
    fail(ErrorKind::Precondition, kModule, "SymbolSum", "term of length " + std::to_string(entries.size()) +
                                                            " in a sum of length " + std::to_string(length_));
  }
  for (const auto& e : entries) {
    if (entry_is_zero(e)) fail(ErrorKind::Precondition, kModule, "SymbolSum", "zero entry in a symbol");
  }
  if (coeff == 0) return;
  // {..., 1, ...} vanishes
  for (const auto& e : entries) {
    if (entry_is_one(e)) return;
  }
  terms_.push_back({coeff, std::move(entries)});
}

SymbolSum SymbolSum::scaled(long k) const {
  SymbolSum out(length_);
  for (const auto& t : terms_) out.add(t.coeff * k, t.entries);
  return out;
}

SymbolSum operator+(const SymbolSum& a, const SymbolSum& b) {
  if (a.length_ != b.length_) fail(ErrorKind::Precondition, kModule, "SymbolSum", "length mismatch in sum");
  SymbolSum out = a;
  for (const auto& t : b.terms_) out.terms_.push_back(t);
  return out;
}

long SymbolSum::integer_value() const {
  if (length_ != 0) fail(ErrorKind::Precondition, kModule, "integer_value", "symbol sum has positive length");
  long s = 0;
  for (const auto& t : terms_) s += t.coeff;
  return s;
}

Entry SymbolSum::k1_class() const {
  if (length_ != 1) fail(ErrorKind::Precondition, kModule, "k1_class", "length-1 symbol sum required");
  if (terms_.empty()) fail(ErrorKind::Precondition, kModule, "k1_class", "empty sum has no ambient field");
  Entry acc = entry_pow(terms_[0].entries[0], terms_[0].coeff);
  for (std::size_t i = 1; i < terms_.size(); ++i) acc = entry_mul(acc, entry_pow(terms_[i].entries[0], terms_[i].coeff));
  return acc;
}

std::string SymbolSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    long c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (c < 0) c = -c;
    if (c != 1) os << c << "*";
    os << "{";
    for (std::size_t i = 0; i < t.entries.size(); ++i) os << (i ? ", " : "") << entry_to_string(t.entries[i]);
    os << "}";
    first = false;
  }
  return os.str();
}

SymbolSum SymbolSum::parse(Field f, std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto bad = [&](const std::string& why) {
    fail(ErrorKind::Parse, kModule, "SymbolSum.parse", why + " at offset " + std::to_string(pos));
  };
  std::vector<SymbolTerm> terms;
  skip();
  if (text.substr(pos) == "0") return SymbolSum(0);
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) {
      if (first) bad("empty symbol sum");
      break;
    }
    long sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      bad("expected '+' or '-'");
    }
    long coeff = 1;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t e = pos;
      while (e < text.size() && std::isdigit(static_cast<unsigned char>(text[e]))) ++e;
      coeff = std::stol(std::string(text.substr(pos, e - pos)));
      pos = e;
      skip();
      if (pos >= text.size() || text[pos] != '*') bad("expected '*' after coefficient");
      ++pos;
      skip();
    }
    if (pos >= text.size() || text[pos] != '{') bad("expected '{'");
    ++pos;
    std::vector<Entry> entries;
    std::string cur;
    int depth = 0;
    bool closed = false;
    while (pos < text.size()) {
      const char c = text[pos++];
      if (depth == 0 && (c == ',' || c == '}')) {
        if (cur.find_first_not_of(" \t") != std::string::npos) {
          entries.emplace_back(RatFun::parse(f, cur));
        } else if (c == ',' || !entries.empty()) {
          bad("empty entry");
        }
        cur.clear();
        if (c == '}') {
          closed = true;
          break;
        }
        continue;
      }
      if (c == '(') ++depth;
      if (c == ')') --depth;
      cur += c;
    }
    if (!closed) bad("unterminated '{'");
    terms.push_back({sign * coeff, std::move(entries)});
    first = false;
  }
  SymbolSum out(static_cast<int>(terms.front().entries.size()));
  for (auto& t : terms) out.add(t.coeff, std::move(t.entries));
  return out;
}

// ---- boundary ----

Entry tame_symbol(const Entry& f, const Entry& g, const ValuationRef& v) {
  if (entry_is_zero(f) || entry_is_zero(g)) fail(ErrorKind::Precondition, kModule, "tame_symbol", "zero input");
  auto [a, u] = split(f, v);
  auto [b, w] = split(g, v);
  Entry r = entry_mul(entry_pow(residue(u, v), b), entry_pow(residue(w, v), -a));
  if ((a * b) % 2 != 0) r = entry_mul(r, entry_minus_one_like(r));
  return r;
}

SymbolSum boundary(const SymbolSum& s, const ValuationRef& v) {
  const int n = s.length();
  if (n < 1) fail(ErrorKind::Precondition, kModule, "boundary", "boundary of a length-0 symbol");
  SymbolSum out(n - 1);
  for (const auto& term : s.terms()) {
    std::vector<long> m(static_cast<std::size_t>(n));
    std::vector<Entry> units;
    units.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      auto [mj, uj] = split(term.entries[static_cast<std::size_t>(j)], v);
      m[static_cast<std::size_t>(j)] = mj;
      units.push_back(std::move(uj));
    }
    // every nonempty choice of pi-slots, each slot contributing m_j
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
      long c = term.coeff;
      int first = -1;
      for (int j = 0; j < n; ++j) {
        if (mask & (1U << j)) {
          c *= m[static_cast<std::size_t>(j)];
          if (first < 0) first = j;
        }
      }
      if (c == 0) continue;
      // extra pi's become -1; the remaining pi moves to the last slot
      if ((n - 1 - first) % 2 != 0) c = -c;
      std::vector<Entry> res;
      res.reserve(static_cast<std::size_t>(n - 1));
      for (int j = 0; j < n; ++j) {
        if (j == first) continue;
        const Entry& e = (mask & (1U << j)) ? entry_minus_one_like(units[static_cast<std::size_t>(j)])
                                            : units[static_cast<std::size_t>(j)];
        res.push_back(residue(e, v));
      }
      out.add(c, std::move(res));
    }
  }
  return out;
}

long descend(const SymbolSum& s, const std::vector<ValuationRef>& refs) {
  if (static_cast<int>(refs.size()) != s.length()) {
    fail(ErrorKind::Precondition, kModule, "descend",
         "symbol length " + std::to_string(s.length()) + " but " + std::to_string(refs.size()) + " valuations");
  }
  SymbolSum cur = s;
  for (const auto& r : refs) cur = boundary(cur, r);
  return cur.integer_value() * (refs.empty() ? 1 : refs.back().residue_degree());
}

long higher_valuation(const SymbolSum& s, const CoordTower& tower, long base_degree) {
  if (s.length() != tower.depth()) {
    fail(ErrorKind::Precondition, kModule, "higher_valuation",
         "symbol length " + std::to_string(s.length()) + " differs from tower depth " + std::to_string(tower.depth()));
  }
  bool rational = false;
  bool series = false;
  for (const auto& t : s.terms()) {
    for (const auto& e : t.entries) {
      rational |= std::holds_alternative<RatFun>(e);
      series |= std::holds_alternative<NestedSeries>(e);
      if (std::holds_alternative<ExtElem>(e)) {
        fail(ErrorKind::Precondition, kModule, "higher_valuation", "residue-field entries have no tower");
      }
    }
  }
  if (rational && series) mismatch("higher_valuation");
  std::vector<ValuationRef> refs;
  for (int d = tower.depth() - 1; d >= 0; --d) {
    refs.push_back(rational ? ValuationRef::variable(tower.layers()[static_cast<std::size_t>(d)])
                            : ValuationRef::outer_layer());
  }
  if (rational) {
    for (const auto& t : s.terms()) {
      for (const auto& e : t.entries) {
        for (const auto& name : std::get<RatFun>(e).vars()) {
          const auto& L = tower.layers();
          if (std::find(L.begin(), L.end(), name) == L.end()) {
            fail(ErrorKind::Precondition, kModule, "higher_valuation", "variable " + name + " is not a tower layer");
          }
        }
      }
    }
  }
  return descend(s, refs) * base_degree;
}

}  // namespace hlf::milnork
