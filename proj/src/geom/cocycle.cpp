#include "hlf/geom/cocycle.hpp"

#include <algorithm>
#include <set>

#include "hlf/error.hpp"

namespace hlf::geom {

namespace {

constexpr std::string_view kModule = "geom";

std::string pair_name(int r, int v) { return "(" + std::to_string(r) + "," + std::to_string(v) + ")"; }

CocycleEntry inverse(const CocycleEntry& e) {
  CocycleEntry out{e.constant.inv(), e.exponents};
  for (auto& x : out.exponents) x = -x;
  return out;
}

CocycleEntry product(const CocycleEntry& a, const CocycleEntry& b) {
  CocycleEntry out{a.constant * b.constant, a.exponents};
  for (std::size_t i = 0; i < out.exponents.size(); ++i) out.exponents[i] += b.exponents[i];
  return out;
}

}  // namespace

CechCocycle::CechCocycle(std::string label, Field f, int cover_size, int divisor_count)
    : label_(std::move(label)), field_(f), cover_size_(cover_size), divisor_count_(divisor_count) {}

void CechCocycle::set(int rho, int nu, CocycleEntry e) {
  if (rho < 0 || nu < 0 || rho >= cover_size_ || nu >= cover_size_) {
    fail(ErrorKind::Precondition, kModule, "CechCocycle", "index " + pair_name(rho, nu) + " outside the cover");
  }
  if (static_cast<int>(e.exponents.size()) != divisor_count_) {
    fail(ErrorKind::Precondition, kModule, "CechCocycle", "exponent vector length differs from the divisor basis");
  }
  if (e.constant.field() != field_ || e.constant.is_zero()) {
    fail(ErrorKind::Precondition, kModule, "CechCocycle", "constant must be a nonzero scalar of the base field");
  }
  if (rho == nu) {
    const bool trivial = e.constant == Scalar::one(field_) &&
                         std::all_of(e.exponents.begin(), e.exponents.end(), [](long x) { return x == 0; });
    if (!trivial) fail(ErrorKind::Precondition, kModule, "CechCocycle", "diagonal entry " + pair_name(rho, nu) + " must be 1");
    return;
  }
  entries_[{rho, nu}] = std::move(e);
}

bool CechCocycle::has(int rho, int nu) const { return rho == nu || entries_.count({rho, nu}) > 0; }

CocycleEntry CechCocycle::entry(int rho, int nu) const {
  if (rho == nu) return {Scalar::one(field_), std::vector<long>(static_cast<std::size_t>(divisor_count_), 0)};
  const auto it = entries_.find({rho, nu});
  if (it == entries_.end()) {
    fail(ErrorKind::Precondition, kModule, "CechCocycle", "missing entry " + pair_name(rho, nu) + " of " + label_);
  }
  return it->second;
}

void CechCocycle::complete_alternating() {
  for (int r = 0; r < cover_size_; ++r) {
    for (int v = 0; v < cover_size_; ++v) {
      if (r != v && !has(r, v) && has(v, r)) entries_[{r, v}] = inverse(entries_.at({v, r}));
    }
  }
}

std::vector<int> CechCocycle::support() const {
  std::set<int> s;
  for (const auto& [k, e] : entries_) {
    for (std::size_t i = 0; i < e.exponents.size(); ++i) {
      if (e.exponents[i] != 0) s.insert(static_cast<int>(i));
    }
  }
  return {s.begin(), s.end()};
}

RatFun cocycle_function(const VarietySpec& X, const CechCocycle& L, int rho, int nu, int chart) {
  const CocycleEntry e = L.entry(rho, nu);
  RatFun f = RatFun::constant(e.constant);
  for (std::size_t i = 0; i < e.exponents.size(); ++i) {
    if (e.exponents[i] != 0) f = f * X.local_equation(static_cast<int>(i), chart).pow(e.exponents[i]);
  }
  return f;
}

void validate_cocycle(const VarietySpec& X, const CechCocycle& L) {
  const int m = static_cast<int>(X.cover.size());
  if (L.cover_size() != m || L.divisor_count() != static_cast<int>(X.divisors.size()) || L.field() != X.field) {
    fail(ErrorKind::Precondition, kModule, "validate_cocycle", L.label() + " does not match the variety");
  }
  for (int r = 0; r < m; ++r) {
    for (int v = 0; v < m; ++v) {
      if (!L.has(r, v)) {
        fail(ErrorKind::Precondition, kModule, "validate_cocycle", L.label() + " lacks entry " + pair_name(r, v));
      }
    }
  }
  for (int r = 0; r < m; ++r) {
    for (int v = r + 1; v < m; ++v) {
      if (!(L.entry(v, r) == inverse(L.entry(r, v)))) {
        fail(ErrorKind::Precondition, kModule, "validate_cocycle",
             L.label() + " is not alternating at " + pair_name(r, v));
      }
    }
  }
  for (int r = 0; r < m; ++r) {
    for (int v = 0; v < m; ++v) {
      for (int u = 0; u < m; ++u) {
        if (!(product(L.entry(r, v), L.entry(v, u)) == L.entry(r, u))) {
          fail(ErrorKind::Invariant, kModule, "validate_cocycle",
               L.label() + " violates the cocycle condition on " + pair_name(r, v) + "," + std::to_string(u));
        }
      }
    }
  }
  // entries are units on the overlaps
  for (const auto& [k, e] : L.entries()) {
    const auto a = X.excluded(k.first);
    const auto b = X.excluded(k.second);
    for (std::size_t i = 0; i < e.exponents.size(); ++i) {
      if (e.exponents[i] == 0) continue;
      const int d = static_cast<int>(i);
      if (std::find(a.begin(), a.end(), d) == a.end() && std::find(b.begin(), b.end(), d) == b.end()) {
        fail(ErrorKind::Precondition, kModule, "validate_cocycle",
             L.label() + pair_name(k.first, k.second) + " has zeros or poles along " +
                 X.divisors[i].name + " inside the overlap");
      }
    }
  }
  // each entry is one rational function, whichever chart presents it
  for (const auto& [k, e] : L.entries()) {
    for (const auto& g : X.glue) {
      const RatFun on_to = cocycle_function(X, L, k.first, k.second, g.to);
      const RatFun on_from = cocycle_function(X, L, k.first, k.second, g.from);
      if (X.transport(on_to, g.from, g.to) != on_from) {
        fail(ErrorKind::Invariant, kModule, "validate_cocycle",
             L.label() + pair_name(k.first, k.second) + " reads differently on " +
                 X.charts[static_cast<std::size_t>(g.from)].id + " and " + X.charts[static_cast<std::size_t>(g.to)].id);
      }
    }
  }
}

CechCocycle tensor(const CechCocycle& a, const CechCocycle& b) {
  if (a.cover_size() != b.cover_size() || a.divisor_count() != b.divisor_count() || a.field() != b.field()) {
    fail(ErrorKind::Precondition, kModule, "tensor", "cocycles on different covers");
  }
  CechCocycle out(a.label() + "*" + b.label(), a.field(), a.cover_size(), a.divisor_count());
  for (const auto& [k, e] : a.entries()) out.set(k.first, k.second, product(e, b.entry(k.first, k.second)));
  for (const auto& [k, e] : b.entries()) {
    if (!out.has(k.first, k.second)) out.set(k.first, k.second, product(a.entry(k.first, k.second), e));
  }
  return out;
}

}  // namespace hlf::geom
