#include <functional>
#include <random>

#include "hlf/adele/engine.hpp"
#include "hlf/cli/run.hpp"
#include "hlf/error.hpp"
#include "hlf/lcadual/descriptor.hpp"
#include "hlf/lcadual/haar.hpp"
#include "hlf/milnork/symbol.hpp"
#include "hlf/tateobj/element.hpp"
#include "hlf/tateobj/lattice.hpp"

namespace hlf::cli {

namespace {

using exactalg::Field;
using exactalg::RatFun;
using exactalg::Scalar;

struct Counter {
  SuiteResult r;
  void expect(bool ok, const std::string& what) {
    ++r.checked;
    if (!ok && r.ok) {
      r.ok = false;
      r.detail = what;
    }
  }
};

SuiteResult suite(const std::string& name, const std::function<void(Counter&)>& body) {
  Counter c;
  c.r.name = name;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.r.ok = false;
    c.r.detail = e.what();
  }
  return c.r;
}

}  // namespace

std::vector<SuiteResult> selfcheck(int jobs) {
  const Field Q = Field::rationals();
  const Field F5 = Field::prime(5);
  const adele::EngineOptions opt{jobs, false};
  std::vector<SuiteResult> out;

  out.push_back(suite("builtin cocycles", [&](Counter& c) {
    for (const char* name : {"P1", "P2", "P1xP1", "P1xP1xP1"}) {
      for (Field f : {Q, F5}) {
        const auto X = geom::builtin_variety(name, f);
        X.validate();
        std::vector<long> deg(geom::builtin_factors(name).size(), 2);
        geom::validate_cocycle(X, geom::builtin_bundle(X, deg));
        c.expect(true, name);
      }
    }
  }));

  out.push_back(suite("degree additivity and routes", [&](Counter& c) {
    for (Field f : {Q, F5}) {
      const auto P1 = geom::builtin_variety("P1", f);
      for (long a = -3; a <= 3; ++a) {
        const auto La = geom::builtin_bundle(P1, {a});
        const auto ra = adele::degree(P1, La, opt);
        c.expect(ra.routes_agree, "routes differ on P1(" + std::to_string(a) + ")");
        for (long b = -3; b <= 3; ++b) {
          const auto Lb = geom::builtin_bundle(P1, {b});
          c.expect(adele::degree(P1, geom::tensor(La, Lb), opt).total == ra.total + adele::degree(P1, Lb, opt).total,
                   "degree not additive");
        }
      }
    }
  }));

  out.push_back(suite("intersection symmetry, bilinearity, routes", [&](Counter& c) {
    const auto X = geom::builtin_variety("P1xP1", Q);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> k(-2, 2);
    const auto tot = [&](const std::vector<long>& a, const std::vector<long>& b) {
      const auto r = adele::intersection(X, {geom::builtin_bundle(X, a), geom::builtin_bundle(X, b)}, opt);
      c.expect(r.routes_agree, "routes differ");
      return r.total;
    };
    for (int i = 0; i < 6; ++i) {
      const std::vector<long> a{k(rng), k(rng)}, b{k(rng), k(rng)}, d{k(rng), k(rng)};
      c.expect(tot(a, b) == tot(b, a), "not symmetric");
      c.expect(tot({a[0] + b[0], a[1] + b[1]}, d) == tot(a, d) + tot(b, d), "not bilinear");
    }
    const auto P2 = geom::builtin_variety("P2", Q);
    for (long a = -2; a <= 2; ++a) {
      const auto r = adele::intersection(P2, {geom::builtin_bundle(P2, {a}), geom::builtin_bundle(P2, {1})}, opt);
      c.expect(r.routes_agree, "routes differ on P2");
    }
  }));

  out.push_back(suite("index map", [&](Counter& c) {
    const laurent::CoordTower T({"t"}, exactalg::ExtField::base(Q));
    for (const char* u : {"t^3*(1+t)", "t^-2/(1-t)", "2+t", "(1+t^2)/t"}) {
      const auto f = laurent::expand(RatFun::parse(Q, u), T, 24);
      const long v = f.valuation();
      for (long a : {-2L, 0L, 3L}) {
        c.expect(tateobj::index_map(f, {a}, {std::min(a, a + v) - 1}) == v, std::string("index of ") + u);
      }
      const auto g = laurent::expand(RatFun::parse(Q, "t*(3+t)"), T, 24);
      c.expect(tateobj::index_map(f * g, {0}, {-6}) == v + 1, "index not multiplicative");
    }
  }));

  out.push_back(suite("shuffle composition", [&](Counter& c) {
    for (int total = 0; total <= 5; ++total)
      for (int n = 0; n <= total; ++n)
        for (int m = 0; n + m <= total; ++m)
          for (const auto& s : tateobj::Shuffle::all(n, m))
            for (const auto& t : tateobj::Shuffle::all(n + m, total - n - m)) {
              const auto p = tateobj::shuffle_compose(s, t);
              c.expect(tateobj::composite_lhs(s, t) == tateobj::composite_rhs(p.sigma_prime, p.tau_prime),
                       "composite mismatch " + s.to_string() + " " + t.to_string());
            }
  }));

  out.push_back(suite("tubular decomposition", [&](Counter& c) {
    for (const char* name : {"P1xP1", "P2"}) {
      const auto X = geom::builtin_variety(name, Q);
      for (const auto& f : geom::toric_flags(X)) c.expect(adele::tubular_check(X, f, 2).ok, geom::describe(X, f));
    }
  }));

  out.push_back(suite("symbol calculus", [&](Counter& c) {
    const auto t = milnork::ValuationRef::variable("t");
    for (const char* f : {"t", "2*t^3", "(1+t)/t^2", "3/(t-1)", "t^2 + t + 5"}) {
      const RatFun x = RatFun::parse(Q, f);
      const RatFun one = RatFun::constant(Scalar::one(Q));
      const auto s = milnork::tame_symbol(x, one - x, t);
      c.expect(milnork::entry_is_one(s), std::string("Steinberg fails for ") + f);
    }
    const laurent::CoordTower ST({"s", "t"}, exactalg::ExtField::base(Q));
    const auto hv = [&](const char* text) { return milnork::higher_valuation(milnork::SymbolSum::parse(Q, text), ST); };
    c.expect(hv("{s, t}") == -hv("{t, s}"), "not antisymmetric");
    c.expect(hv("{s^2*t, t}") == 2 * hv("{s, t}") + hv("{t, t}"), "not multiplicative");
    c.expect(hv("{1 + s, 2 - t}") == 0, "units do not vanish");
  }));

  out.push_back(suite("duality", [&](Counter& c) {
    for (const auto& a : lcadual::atom_catalogue()) c.expect(lcadual::dual(lcadual::dual(a)) == a, a.to_string());
    for (const auto& row : lcadual::exchange_table()) c.expect(lcadual::check_row_atomwise(row), row.left);
    for (long n = 1; n <= 24; ++n) {
      const auto G = lcadual::FinAb::from_cyclic({n, 2});
      c.expect(lcadual::double_dual_is_iso(G) && lcadual::pontryagin_dual(G).dual == G, G.to_string());
    }
  }));

  out.push_back(suite("haar", [&](Counter& c) {
    for (long a = 1; a <= 12; ++a) {
      const RatFun f = RatFun::parse(Q, "t");
      const RatFun g = RatFun::constant(Scalar(Q, a)) * RatFun::parse(Q, "(1 + t)");
      c.expect(lcadual::adelic_pairing(f, g).product == 1, "product formula");
    }
    c.expect(lcadual::pairing_vanishing_witness("Z").constant_one, "Z((t))");
    c.expect(lcadual::pairing_vanishing_witness("T").constant_one, "T((t))");
  }));
  return out;
}

}  // namespace hlf::cli
