#include "hlf/adele/engine.hpp"

#include <exception>
#include <thread>

#include "hlf/error.hpp"
#include "hlf/milnork/symbol.hpp"
#include "hlf/tateobj/element.hpp"
#include "hlf/tateobj/lattice.hpp"

namespace hlf::adele {

namespace {

constexpr std::string_view kModule = "adele";
constexpr long kPrecisions[] = {8, 16, 32, 64, 128};

using exactalg::ExtElem;
using exactalg::ExtField;
using exactalg::ExtPoly;
using exactalg::Scalar;

bool is_precision_error(const Error& e) { return std::string(e.what()).find("precision") != std::string::npos; }

ExtField residue_of(const VarietySpec& X, const Flag& f) { return f.point ? *f.point : ExtField::base(X.field); }

// centre of coordinate k as an element of the residue field
ExtElem centre_of(const VarietySpec& X, const Flag& f, std::size_t k) {
  const ExtField F = residue_of(X, f);
  if (k == 0 && f.point) return ExtElem::generator(F);
  return ExtElem(F, f.centre[k]);
}

long sign_for(int n) { return (static_cast<long>(n) * (n + 1) / 2) % 2 == 0 ? 1 : -1; }

}  // namespace

FlagTower flag_tower(const VarietySpec& X, const Flag& f) {
  geom::validate_flag(X, f);
  const ExtField F = residue_of(X, f);
  FlagTower T{f, CoordTower(f.coords, F), {}, f.residue_degree()};
  for (std::size_t k = 0; k < f.coords.size(); ++k) {
    T.images.emplace(f.coords[k], ExtPoly::variable(F, f.coords, k) + ExtPoly::constant(F, f.coords, centre_of(X, f, k)));
  }
  return T;
}

NestedSeries expand_at(const FlagTower& T, const RatFun& f, long prec) {
  return laurent::expand(f, T.tower, prec > 0 ? prec : kPrecisions[0], T.images);
}

std::vector<RatFun> flag_entries(const VarietySpec& X, const Flag& f, const std::vector<CechCocycle>& Ls) {
  const int n = f.dimension();
  if (static_cast<int>(Ls.size()) != n) {
    fail(ErrorKind::Precondition, kModule, "flag_entries",
         std::to_string(Ls.size()) + " line bundles on a variety of dimension " + std::to_string(n));
  }
  std::vector<int> alpha;
  for (int i = 0; i <= n; ++i) alpha.push_back(geom::alpha_of(X, f, i));
  std::vector<RatFun> out;
  for (int q = 1; q <= n; ++q) {
    out.push_back(geom::cocycle_function(X, Ls[static_cast<std::size_t>(q - 1)], alpha[static_cast<std::size_t>(q)],
                                         alpha[static_cast<std::size_t>(q - 1)], f.chart));
  }
  return out;
}

long v_index(const VarietySpec& X, const Flag& f, const RatFun& entry) {
  const FlagTower T = flag_tower(X, f);
  if (T.tower.depth() != 1) fail(ErrorKind::Precondition, kModule, "v_index", "the index route needs a curve");
  for (long p : kPrecisions) {
    try {
      const NestedSeries x = expand_at(T, entry, p);
      const long v = x.valuation();
      if (x.prec() < std::max(0L, v) + 1) continue;
      return tateobj::index_map(x, tateobj::Lattice{0}, tateobj::Lattice{std::min(0L, v) - 1}) * T.residue_degree;
    } catch (const Error& e) {
      if (!is_precision_error(e)) throw;
    }
  }
  fail(ErrorKind::Precondition, kModule, "v_index", "precision exhausted expanding " + entry.to_string());
}

long v_tate(const VarietySpec& X, const Flag& f, const std::vector<RatFun>& entries) {
  const FlagTower T = flag_tower(X, f);
  if (static_cast<int>(entries.size()) != T.tower.depth()) {
    fail(ErrorKind::Precondition, kModule, "v_tate", "need one entry per layer");
  }
  for (const auto& e : entries) {
    if (e.is_zero()) fail(ErrorKind::Precondition, kModule, "v_tate", "zero entry");
  }
  std::optional<long> value;
  std::string last;
  for (long p : kPrecisions) {
    std::vector<milnork::Entry> series;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      try {
        series.emplace_back(expand_at(T, entries[k], p));
      } catch (const Error& e) {
        fail(ErrorKind::Precondition, kModule, "v_tate",
             "cannot expand entry " + entries[k].to_string() + " in " + T.tower.to_string() + ": " + e.what());
      }
    }
    try {
      value = milnork::higher_valuation(milnork::SymbolSum(1, std::move(series)), T.tower, T.residue_degree);
      break;
    } catch (const Error& e) {
      if (!is_precision_error(e)) throw;
      last = e.what();
    }
  }
  if (!value) fail(ErrorKind::Precondition, kModule, "v_tate", "precision exhausted: " + last);
  if (entries.size() == 1) {
    const long idx = v_index(X, f, entries[0]);
    if (idx != *value) {
      fail(ErrorKind::Invariant, kModule, "v_tate",
           "index route " + std::to_string(idx) + " disagrees with boundary route " + std::to_string(*value));
    }
  }
  return *value;
}

long v_ger_flag(const VarietySpec& X, const Flag& f, const std::vector<RatFun>& entries) {
  geom::validate_flag(X, f);
  const int n = f.dimension();
  std::vector<milnork::ValuationRef> refs;
  for (int k = n - 1; k >= 0; --k) {
    const auto idx = static_cast<std::size_t>(k);
    if (k == 0 && f.point) {
      refs.push_back(milnork::ValuationRef::closed_point(f.coords[0], *f.point));
    } else {
      refs.push_back(milnork::ValuationRef::variable(f.coords[idx], f.centre[idx]));
    }
  }
  std::vector<milnork::Entry> es(entries.begin(), entries.end());
  return milnork::descend(milnork::SymbolSum(1, std::move(es)), refs);
}

ContributionReport intersection(const VarietySpec& X, const std::vector<CechCocycle>& Ls, const EngineOptions& opt) {
  const int n = X.dimension;
  if (static_cast<int>(Ls.size()) != n) {
    fail(ErrorKind::Precondition, kModule, "intersection",
         "need " + std::to_string(n) + " line bundles, got " + std::to_string(Ls.size()));
  }
  for (const auto& L : Ls) geom::validate_cocycle(X, L);
  const auto flags = geom::enumerate_flags(X, Ls);

  std::vector<FlagContribution> rows(flags.size());
  std::vector<std::exception_ptr> errors(flags.size());
  const auto work = [&](std::size_t i) {
    try {
      const Flag& f = flags[i];
      FlagContribution c;
      c.id = geom::flag_id(X, f);
      c.chain = geom::describe(X, f);
      const auto entries = flag_entries(X, f, Ls);
      for (const auto& e : entries) c.entries.push_back(e.to_string());
      c.tate = v_tate(X, f, entries);
      c.gersten = v_ger_flag(X, f, entries);
      if (n == 1) c.index_route = v_index(X, f, entries[0]);
      rows[i] = std::move(c);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, opt.jobs));
  if (jobs == 1 || flags.size() < 2) {
    for (std::size_t i = 0; i < flags.size(); ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(jobs, flags.size()); ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < flags.size(); i += jobs) work(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ContributionReport r;
  r.kind = n == 1 ? "degree" : "intersection";
  r.variety = X.name;
  for (const auto& L : Ls) r.bundles.push_back(L.label());
  r.sign = sign_for(n);
  r.label = X.builtin ? "intersection number" : "formula value, not an intersection number";
  long st = 0;
  long sg = 0;
  for (auto& c : rows) {
    st += c.tate;
    sg += c.gersten;
    if (c.tate != 0 || c.gersten != 0 || opt.keep_zero) r.flags.push_back(std::move(c));
  }
  r.total = r.sign * st;
  r.gersten_total = r.sign * sg;
  r.routes_agree = st == sg;
  for (const auto& c : r.flags) {
    if (c.tate != c.gersten || (c.index_route && *c.index_route != c.tate)) r.routes_agree = false;
  }
  return r;
}

ContributionReport degree(const VarietySpec& X, const CechCocycle& L, const EngineOptions& opt) {
  if (X.dimension != 1) fail(ErrorKind::Precondition, kModule, "degree", "degree needs a curve");
  return intersection(X, {L}, opt);
}

long v_ger(const VarietySpec& X, const std::vector<CechCocycle>& Ls, const EngineOptions& opt) {
  return intersection(X, Ls, opt).gersten_total;
}

// ---- tubular neighbourhoods ----

LambdaFactor lambda_factor(const VarietySpec& X, const Flag& f, int i, long prec, const std::optional<RatFun>& twist) {
  geom::validate_flag(X, f);
  const int n = f.dimension();
  if (i < 1 || i > n) {
    fail(ErrorKind::Precondition, kModule, "lambda_factor",
         "members " + std::to_string(i) + "," + std::to_string(i - 1) + " are not a codimension-1 coordinate pair");
  }
  if (prec < 1) fail(ErrorKind::Precondition, kModule, "lambda_factor", "precision must be positive");
  const auto k = static_cast<std::size_t>(n - i);
  const std::string var = f.coords[k];
  const ExtField F = residue_of(X, f);
  const CoordTower tower({var}, F);
  std::map<std::string, ExtPoly> images;
  images.emplace(var, ExtPoly::variable(F, {var}, 0) + ExtPoly::constant(F, {var}, centre_of(X, f, k)));
  NestedSeries t = NestedSeries::one(tower);
  long shift = 0;
  if (twist) {
    for (const auto& v : twist->vars()) {
      if (v != var) {
        fail(ErrorKind::Precondition, kModule, "lambda_factor", "twist " + twist->to_string() + " is not a function of " + var);
      }
    }
    t = laurent::expand(*twist, tower, 2 * prec + 8, images);
    shift = t.valuation();
  }
  LambdaFactor out{tateobj::TateDescriptor::tate(tateobj::BaseCategory::vect(F.to_string()), {var}), var, {}};
  for (long p = 1; p <= prec; ++p) {
    Window w{-p + shift, p + shift, {}};
    for (long e = -p; e < p; ++e) w.basis.push_back(t.shifted(e).truncated(w.hi));
    out.windows.push_back(std::move(w));
  }
  return out;
}

TubularReport tubular_check(const VarietySpec& X, const Flag& f, long prec, bool reversed) {
  if (prec < 1) fail(ErrorKind::Precondition, kModule, "tubular_check", "precision must be positive");
  const FlagTower T = flag_tower(X, f);
  const int n = f.dimension();
  TubularReport r;
  const auto lhs = tateobj::descriptor_of(T.tower);
  std::vector<LambdaFactor> factors;  // factors[i-1] between eta_i and eta_(i-1)
  for (int i = 1; i <= n; ++i) factors.push_back(lambda_factor(X, f, i, prec));
  // innermost factor first: eta_n over eta_(n-1)
  std::vector<int> order;
  for (int i = n; i >= 1; --i) order.push_back(i);
  if (reversed) std::reverse(order.begin(), order.end());
  auto rhs = factors[static_cast<std::size_t>(order[0] - 1)].descriptor;
  for (std::size_t j = 1; j < order.size(); ++j) {
    rhs = tateobj::tensor_descriptor(rhs, factors[static_cast<std::size_t>(order[j] - 1)].descriptor);
  }
  r.adele_descriptor = lhs.tower_string();
  r.tensor_descriptor = rhs.tower_string();
  r.descriptors_match = lhs == rhs;
  if (!r.descriptors_match) {
    r.diffs.push_back("descriptor mismatch: " + r.adele_descriptor + " vs " + r.tensor_descriptor);
    return r;
  }

  // separable test functions g(w) in each coordinate, w = u - centre
  const ExtField F = T.tower.residue();
  const auto sample = [&](std::size_t k, int which) {
    const RatFun u = RatFun::variable(X.field, f.coords[k]);
    const RatFun one = RatFun::constant(Scalar::one(X.field));
    const RatFun w = (k == 0 && f.point) ? u : u - RatFun::constant(f.centre[k]);
    switch (which % 5) {
      case 0:
        return w;
      case 1:
        return one / (one - w);
      case 2:
        return (one + w).pow(2);
      case 3:
        return one / w + one + one;
      default:
        return (one + one + w) / (one + RatFun::constant(Scalar(X.field, 3L)) * w * w);
    }
  };
  const auto factor_series = [&](std::size_t k, int which) {
    const std::string& var = f.coords[k];
    const CoordTower tw({var}, F);
    std::map<std::string, ExtPoly> images;
    images.emplace(var, ExtPoly::variable(F, {var}, 0) + ExtPoly::constant(F, {var}, centre_of(X, f, k)));
    return laurent::expand(sample(k, which), tw, prec, images);
  };
  struct Item {
    std::string name;
    RatFun fn;
    NestedSeries tensor;
  };
  std::vector<Item> items;
  for (int a = 0; a < 5; ++a) {
    for (int mixed = 0; mixed < 2; ++mixed) {
      RatFun fn = RatFun::constant(Scalar::one(X.field));
      std::optional<NestedSeries> acc;
      std::string name;
      for (std::size_t k = 0; k < f.coords.size(); ++k) {
        const int which = a + (mixed ? static_cast<int>(k) : 0);
        fn = fn * sample(k, which);
        const NestedSeries s = factor_series(k, which);
        acc = acc ? tateobj::tensor_element(*acc, s) : s;
        name += (k ? "*" : "") + sample(k, which).to_string();
      }
      items.push_back({name, fn, *acc});
    }
  }
  r.products_match = true;
  for (std::size_t a = 0; a < items.size(); ++a) {
    const NestedSeries direct = expand_at(T, items[a].fn, prec);
    ++r.checked;
    if (!direct.agrees_with(items[a].tensor)) {
      r.products_match = false;
      r.diffs.push_back("element " + items[a].name + " differs");
    }
    for (std::size_t b = a + 1; b < items.size(); ++b) {
      const NestedSeries lhs_prod = expand_at(T, items[a].fn * items[b].fn, prec);
      const NestedSeries rhs_prod = items[a].tensor * items[b].tensor;
      ++r.checked;
      if (!lhs_prod.agrees_with(rhs_prod)) {
        r.products_match = false;
        r.diffs.push_back("product " + items[a].name + " x " + items[b].name + " differs");
      }
    }
  }
  r.ok = r.descriptors_match && r.products_match;
  return r;
}

}  // namespace hlf::adele
