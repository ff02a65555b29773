#include "hlf/geom/variety.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <set>

#include "hlf/error.hpp"

namespace hlf::geom {

namespace {

constexpr std::string_view kModule = "geom";

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool subset_of(const std::vector<std::string>& vars, const std::vector<std::string>& allowed) {
  return std::all_of(vars.begin(), vars.end(),
                     [&](const std::string& v) { return std::find(allowed.begin(), allowed.end(), v) != allowed.end(); });
}

// Degree <= 3 primality; multivariate cases only rule out monomial factors.
void check_prime(const exactalg::MultiPoly& p, const std::string& what) {
  if (p.is_constant()) fail(ErrorKind::Precondition, kModule, "validate", what + " is constant");
  const int d = p.total_degree();
  if (d == 1) return;
  if (p.vars().size() == 1) {
    if (d > 3) return;
    if (!exactalg::check_irreducible(p.to_univariate(p.vars()[0])).irreducible) {
      fail(ErrorKind::Precondition, kModule, "validate", what + " = " + p.to_string() + " is not prime");
    }
    return;
  }
  const auto mc = p.monomial_content();
  if (std::any_of(mc.begin(), mc.end(), [](int e) { return e > 0; })) {
    fail(ErrorKind::Precondition, kModule, "validate", what + " = " + p.to_string() + " has a coordinate factor");
  }
}

}  // namespace

std::string Flag::member(int i) const {
  const int n = dimension();
  if (i == 0) return "generic";
  std::string s = "{";
  bool first = true;
  for (int k = n - i; k < n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    s += first ? "" : ", ";
    first = false;
    if (k == 0 && point) {
      s += point->modulus().to_string(coords[idx]) + " = 0";
    } else {
      s += coords[idx] + " = " + centre[idx].to_string();
    }
  }
  return s + "}";
}

int VarietySpec::chart_index(std::string_view id) const {
  for (std::size_t i = 0; i < charts.size(); ++i) {
    if (charts[i].id == id) return static_cast<int>(i);
  }
  fail(ErrorKind::Precondition, kModule, "chart_index", "unknown chart '" + std::string(id) + "'");
}

int VarietySpec::divisor_index(std::string_view nm) const {
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    if (divisors[i].name == nm) return static_cast<int>(i);
  }
  fail(ErrorKind::Precondition, kModule, "divisor_index", "unknown divisor '" + std::string(nm) + "'");
}

const Glue* VarietySpec::find_glue(int from, int to) const {
  for (const auto& g : glue) {
    if (g.from == from && g.to == to) return &g;
  }
  return nullptr;
}

RatFun VarietySpec::local_equation(int divisor, int chart) const {
  const auto& eqs = divisors.at(static_cast<std::size_t>(divisor)).equations;
  const auto it = eqs.find(chart);
  return it == eqs.end() ? RatFun::constant(Scalar::one(field)) : it->second;
}

std::vector<int> VarietySpec::excluded(int alpha) const {
  const auto& m = cover.at(static_cast<std::size_t>(alpha));
  std::set<int> out(m.inverted.begin(), m.inverted.end());
  for (int d = 0; d < static_cast<int>(divisors.size()); ++d) {
    if (!meets(d, m.chart)) out.insert(d);
  }
  return {out.begin(), out.end()};
}

RatFun VarietySpec::transport(const RatFun& f, int from, int to) const {
  if (from == to) return f;
  const Glue* g = find_glue(from, to);
  if (!g) {
    fail(ErrorKind::Precondition, kModule, "transport",
         "no glue from " + charts[static_cast<std::size_t>(from)].id + " to " + charts[static_cast<std::size_t>(to)].id);
  }
  return f.substitute_all(g->map);
}

void VarietySpec::validate() const {
  const auto bad = [](const std::string& msg) { fail(ErrorKind::Precondition, kModule, "validate", msg); };
  if (dimension < 1) bad("dimension must be positive");
  if (charts.empty()) bad("no charts");
  std::set<std::string> ids;
  for (const auto& c : charts) {
    if (!ids.insert(c.id).second) bad("repeated chart id " + c.id);
    if (static_cast<int>(c.coords.size()) != dimension) bad("chart " + c.id + " has the wrong number of coordinates");
    std::set<std::string> names;
    for (const auto& x : c.coords) {
      if (!is_identifier(x)) bad("bad coordinate name '" + x + "'");
      if (!names.insert(x).second) bad("repeated coordinate " + x + " in chart " + c.id);
    }
  }
  const int nc = static_cast<int>(charts.size());
  std::set<std::string> dnames;
  for (const auto& d : divisors) {
    if (!dnames.insert(d.name).second) bad("repeated divisor " + d.name);
    if (d.equations.empty()) bad("divisor " + d.name + " meets no chart");
    for (const auto& [c, eq] : d.equations) {
      if (c < 0 || c >= nc) bad("divisor " + d.name + " on unknown chart");
      if (!eq.den().is_constant()) bad("equation of " + d.name + " is not a polynomial");
      if (!subset_of(eq.vars(), charts[static_cast<std::size_t>(c)].coords)) {
        bad("equation of " + d.name + " uses foreign coordinates on " + charts[static_cast<std::size_t>(c)].id);
      }
      check_prime(eq.num(), "equation of " + d.name + " on " + charts[static_cast<std::size_t>(c)].id);
    }
  }
  if (cover.empty()) bad("empty cover");
  for (const auto& m : cover) {
    if (m.chart < 0 || m.chart >= nc) bad("cover member on unknown chart");
    for (int d : m.inverted) {
      if (d < 0 || d >= static_cast<int>(divisors.size())) bad("cover member inverts an unknown divisor");
    }
  }
  for (const auto& g : glue) {
    if (g.from < 0 || g.from >= nc || g.to < 0 || g.to >= nc || g.from == g.to) bad("glue between unknown charts");
    const auto& src = charts[static_cast<std::size_t>(g.from)].coords;
    const auto& dst = charts[static_cast<std::size_t>(g.to)].coords;
    std::vector<std::string> keys;
    for (const auto& [k, v] : g.map) {
      keys.push_back(k);
      if (!subset_of(v.vars(), src)) bad("glue value for " + k + " uses foreign coordinates");
    }
    std::vector<std::string> sorted_keys = keys;
    std::vector<std::string> sorted_dst = dst;
    std::sort(sorted_keys.begin(), sorted_keys.end());
    std::sort(sorted_dst.begin(), sorted_dst.end());
    if (sorted_keys != sorted_dst) bad("glue must give every coordinate of the target chart");
  }
  // transitions are mutually inverse
  for (const auto& g : glue) {
    if (!find_glue(g.to, g.from)) continue;
    for (const auto& x : charts[static_cast<std::size_t>(g.from)].coords) {
      const RatFun there = transport(RatFun::variable(field, x), g.to, g.from);
      const RatFun back = transport(there, g.from, g.to);
      if (back != RatFun::variable(field, x)) {
        fail(ErrorKind::Invariant, kModule, "validate",
             "glue " + charts[static_cast<std::size_t>(g.from)].id + " <-> " + charts[static_cast<std::size_t>(g.to)].id +
                 " does not round-trip on " + x);
      }
    }
  }
  for (const auto& f : declared_flags) validate_flag(*this, f);
}

std::string describe(const VarietySpec& X, const Flag& f) {
  std::string s = X.charts.at(static_cast<std::size_t>(f.chart)).id + "[";
  for (std::size_t i = 0; i < f.coords.size(); ++i) s += (i ? "," : "") + f.coords[i];
  s += "]";
  for (int i = 0; i <= f.dimension(); ++i) s += (i ? " > " : ": ") + f.member(i);
  return s;
}

std::string flag_id(const VarietySpec& X, const Flag& f) {
  // FNV-1a, 64 bit
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : describe(X, f)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void validate_flag(const VarietySpec& X, const Flag& f) {
  const auto bad = [](const std::string& msg) { fail(ErrorKind::Precondition, kModule, "validate_flag", msg); };
  if (f.chart < 0 || f.chart >= static_cast<int>(X.charts.size())) bad("flag on unknown chart");
  const auto& cc = X.charts[static_cast<std::size_t>(f.chart)].coords;
  if (f.dimension() != X.dimension) bad("flag is not saturated: needs " + std::to_string(X.dimension) + " coordinates");
  auto a = f.coords;
  auto b = cc;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) bad("flag coordinates must be a permutation of the chart coordinates");
  if (f.centre.size() != f.coords.size()) bad("flag centre has the wrong length");
  for (const auto& c : f.centre) {
    if (c.field() != X.field) bad("flag centre over the wrong field");
  }
  if (f.point && f.point->base_field() != X.field) bad("closed point residue field over the wrong base");
  if (!f.labels.empty() && static_cast<int>(f.labels.size()) != f.dimension()) bad("labels must name eta_1..eta_n");
}

bool lies_on(const VarietySpec& X, const Flag& f, int i, int divisor) {
  if (!X.meets(divisor, f.chart)) return false;
  if (i == 0) return false;
  const int n = f.dimension();
  RatFun g = X.local_equation(divisor, f.chart);
  for (int k = n - i; k < n; ++k) {
    if (k == 0 && f.point) continue;
    g = g.substitute(f.coords[static_cast<std::size_t>(k)], f.centre[static_cast<std::size_t>(k)]);
  }
  if (i == n && f.point) {
    return exactalg::ExtElem(*f.point, g.num().to_univariate(f.coords[0])).is_zero();
  }
  return g.is_zero();
}

int alpha_of(const VarietySpec& X, const Flag& f, int i) {
  for (int alpha = 0; alpha < static_cast<int>(X.cover.size()); ++alpha) {
    const auto ex = X.excluded(alpha);
    if (std::none_of(ex.begin(), ex.end(), [&](int d) { return lies_on(X, f, i, d); })) return alpha;
  }
  fail(ErrorKind::Invariant, kModule, "alpha_of", f.member(i) + " lies in no cover member; the cover does not cover");
}

}  // namespace hlf::geom
