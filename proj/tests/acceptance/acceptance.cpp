// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "character_oracle.hpp"
#include "hlf/adele/engine.hpp"
#include "hlf/error.hpp"
#include "hlf/lcadual/descriptor.hpp"
#include "hlf/lcadual/haar.hpp"
#include "hlf/milnork/symbol.hpp"
#include "hlf/tateobj/element.hpp"
#include "hlf/tateobj/lattice.hpp"
#include "random_inputs.hpp"
#include "shuffle_oracle.hpp"
#include "tame_oracle.hpp"
#include "toric_oracle.hpp"

using namespace hlf;
using exactalg::ExtField;
using exactalg::Field;
using exactalg::RatFun;
using exactalg::Scalar;
using laurent::CoordTower;

namespace {

const Field Q = Field::rationals();
const Field F5 = Field::prime(5);

struct Check {
  long checked = 0;
  long failed = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failed++ == 0) first = what;
  }
};

bool report(int n, const std::string& title, const std::function<std::string(Check&)>& body) {
  Check c;
  std::string note;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    note = body(c);
  } catch (const std::exception& e) {
    ++c.failed;
    c.first = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = c.failed == 0;
  std::printf("criterion %2d: %s  %s  [%ld checks, %.2fs]%s%s\n", n, ok ? "PASS" : "FAIL", title.c_str(), c.checked, secs,
              note.empty() ? "" : "  ", note.c_str());
  if (!ok) std::printf("              first failure (%ld total): %s\n", c.failed, c.first.c_str());
  return ok;
}

std::string str(long x) { return std::to_string(x); }

// Lowest exponent of var in a rational function of that variable alone.
long low_order(const RatFun& f, const std::string& var) {
  const auto low = [&](const exactalg::MultiPoly& p) {
    const auto u = p.to_univariate(var);
    for (int i = 0; i <= u.degree(); ++i) {
      if (!u.coeff(i).is_zero()) return static_cast<long>(i);
    }
    return 0L;
  };
  return low(f.num()) - low(f.den());
}

RatFun monomial_unit(std::mt19937_64& rng, Field F, const std::string& var) {
  std::uniform_int_distribution<int> k(-3, 3);
  return testing::random_ratfun(rng, F, {var}) * RatFun::variable(F, var).pow(k(rng));
}

// Builtin bundle changed by a random coboundary c_rho / c_nu; units on the
// affine toric charts are constants.
geom::CechCocycle random_representative(const geom::VarietySpec& X, const std::vector<long>& deg, std::mt19937_64& rng) {
  const auto base = geom::builtin_bundle(X, deg);
  const int m = static_cast<int>(X.cover.size());
  const std::vector<mpq_class> consts{1, 2, -3, mpq_class(1, 2), 5};
  std::uniform_int_distribution<std::size_t> pick(0, consts.size() - 1);
  std::vector<Scalar> c;
  for (int r = 0; r < m; ++r) {
    c.emplace_back(Q, consts[pick(rng)]);
  }
  geom::CechCocycle L(base.label() + "~", X.field, m, static_cast<int>(X.divisors.size()));
  for (int r = 0; r < m; ++r) {
    for (int v = 0; v < m; ++v) {
      if (r == v) continue;
      auto en = base.entry(r, v);
      en.constant = en.constant * c[static_cast<std::size_t>(r)] / c[static_cast<std::size_t>(v)];
      L.set(r, v, std::move(en));
    }
  }
  return L;
}

}  // namespace

int main() {
  bool all = true;
  std::vector<adele::ContributionReport> runs;  // every configuration of criteria 1 and 2

  all &= report(1, "degree(P1(d)) = d, d in [-5,5], over Q and F5", [&](Check& c) {
    for (Field F : {Q, F5}) {
      const auto P1 = geom::builtin_variety("P1", F);
      for (long d = -5; d <= 5; ++d) {
        const auto L = geom::builtin_bundle(P1, {d});
        const auto r = adele::degree(P1, L);
        c.expect(r.total == d && r.total == oracle::divisor_degree(P1, L),
                 "P1(" + str(d) + ") over " + F.tag() + " gave " + str(r.total));
        runs.push_back(r);
      }
    }
    return std::string("calibration point P1(1) over Q; the other 21 cases are tests");
  });

  all &= report(2, "intersection numbers on P1xP1 and P2 against toric exponent pairing", [&](Check& c) {
    const auto X = geom::builtin_variety("P1xP1", Q);
    std::vector<geom::CechCocycle> bundles;
    for (long a = -2; a <= 2; ++a)
      for (long b = -2; b <= 2; ++b) bundles.push_back(geom::builtin_bundle(X, {a, b}));
    for (long a = -2; a <= 2; ++a)
      for (long b = -2; b <= 2; ++b)
        for (long cc = -2; cc <= 2; ++cc)
          for (long d = -2; d <= 2; ++d) {
            const auto r = adele::intersection(X, {bundles[static_cast<std::size_t>((a + 2) * 5 + b + 2)],
                                                   bundles[static_cast<std::size_t>((cc + 2) * 5 + d + 2)]});
            const long want = oracle::toric_pairing({1, 1}, {{a, b}, {cc, d}});
            c.expect(r.total == want && want == a * d + b * cc,
                     "O(" + str(a) + "," + str(b) + ").O(" + str(cc) + "," + str(d) + ") = " + str(r.total));
            runs.push_back(r);
          }
    const auto P2 = geom::builtin_variety("P2", Q);
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b) {
        const auto r = adele::intersection(P2, {geom::builtin_bundle(P2, {a}), geom::builtin_bundle(P2, {b})});
        c.expect(r.total == oracle::toric_pairing({2}, {{a}, {b}}) && r.total == a * b,
                 "P2 O(" + str(a) + ").O(" + str(b) + ") = " + str(r.total));
        runs.push_back(r);
      }
    return std::string();
  });

  all &= report(3, "route agreement: v_ger = sum v_tate; index route = boundary route for n = 1", [&](Check& c) {
    long n1 = 0;
    for (const auto& r : runs) {
      long st = 0, sg = 0;
      for (const auto& f : r.flags) {
        st += f.tate;
        sg += f.gersten;
        if (r.kind == "degree") {
          ++n1;
          c.expect(f.index_route && *f.index_route == f.tate, "index route differs on " + f.chain);
        }
      }
      c.expect(st == sg && r.routes_agree && r.gersten_total == r.total, r.variety + " routes differ");
    }
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> k(-3, 3);
    const auto X = geom::builtin_variety("P1xP1", Q);
    for (int i = 0; i < 20; ++i) {
      const std::vector<long> a{k(rng), k(rng)}, b{k(rng), k(rng)};
      const auto La = random_representative(X, a, rng);
      const auto Lb = random_representative(X, b, rng);
      const auto r = adele::intersection(X, {La, Lb});
      const long vg = adele::v_ger(X, {La, Lb});
      long st = 0;
      for (const auto& f : r.flags) st += f.tate;
      c.expect(vg == r.sign * st, "random pair " + str(i) + ": v_ger " + str(vg));
      c.expect(r.total == oracle::toric_pairing({1, 1}, {a, b}), "random pair " + str(i) + " total " + str(r.total));
    }
    return str(static_cast<long>(runs.size()) + 20) + " configurations, " + str(n1) + " n=1 flag evaluations";
  });

  all &= report(4, "index map: 50 random units x 5 lattice pairs give v(f); multiplicative", [&](Check& c) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> off(-4, 4), gap(0, 3);
    const CoordTower T({"t"}, ExtField::base(Q));
    for (int i = 0; i < 50; ++i) {
      const RatFun f = monomial_unit(rng, Q, "t");
      const RatFun g = monomial_unit(rng, Q, "t");
      const long vf = low_order(f, "t");
      const long vg = low_order(g, "t");
      const auto xf = laurent::expand(f, T, 24);
      const auto xg = laurent::expand(g, T, 24);
      for (int k = 0; k < 5; ++k) {
        const long a = off(rng);
        const long b = std::min(a, a + vf) - gap(rng);
        c.expect(tateobj::index_map(xf, {a}, {b}) == vf, "unit " + f.to_string());
      }
      const long b = std::min(0L, std::min(vf, vf + vg)) - 1;
      c.expect(tateobj::index_map(xf * xg, {0}, {std::min(b, vg + vf - 1)}) ==
                   tateobj::index_map(xf, {0}, {std::min(0L, vf) - 1}) + tateobj::index_map(xg, {0}, {std::min(0L, vg) - 1}),
               "product " + f.to_string() + " * " + g.to_string());
    }
    return std::string();
  });

  all &= report(5, "shuffle lemma: exactly one (sigma', tau') for every (sigma, tau), n+m+l <= 6", [&](Check& c) {
    long pairs = 0;
    for (int total = 0; total <= 6; ++total)
      for (int n = 0; n <= total; ++n)
        for (int m = 0; n + m <= total; ++m) {
          const int l = total - n - m;
          for (const auto& s : tateobj::Shuffle::all(n, m))
            for (const auto& t : tateobj::Shuffle::all(n + m, l)) {
              const auto lhs = oracle::lhs_positions(s, t);
              int found = 0;
              std::string which;
              for (const auto& sp : tateobj::Shuffle::all(n, m + l))
                for (const auto& tp : tateobj::Shuffle::all(m, l)) {
                  if (oracle::rhs_positions(sp, tp) == lhs) {
                    ++found;
                    which = sp.to_string() + "/" + tp.to_string();
                  }
                }
              const auto p = tateobj::shuffle_compose(s, t);
              c.expect(found == 1 && p.sigma_prime.to_string() + "/" + p.tau_prime.to_string() == which,
                       s.to_string() + " " + t.to_string());
              ++pairs;
            }
        }
    return str(pairs) + " pairs checked";
  });

  all &= report(6, "normally ordered tensor: k((s))((t)), products, non-symmetry witness", [&](Check& c) {
    const auto VQ = tateobj::BaseCategory::vect("Q");
    const auto st = tateobj::tensor_descriptor(tateobj::TateDescriptor::tate(VQ, {"s"}), tateobj::TateDescriptor::tate(VQ, {"t"}));
    c.expect(st.tower_string() == "Q((s))((t))", st.tower_string());
    const ExtField K = ExtField::base(Q);
    const CoordTower S({"s"}, K), T({"t"}, K), ST({"s", "t"}, K), TS({"t", "s"}, K);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 50; ++i) {
      const RatFun f = monomial_unit(rng, Q, "s");
      const RatFun g = monomial_unit(rng, Q, "t");
      const RatFun f2 = monomial_unit(rng, Q, "s");
      const RatFun g2 = monomial_unit(rng, Q, "t");
      const auto x = tateobj::tensor_element(laurent::expand(f, S, 6), laurent::expand(g, T, 6));
      const auto y = tateobj::tensor_element(laurent::expand(f2, S, 6), laurent::expand(g2, T, 6));
      c.expect(x.agrees_with(laurent::expand(f * g, ST, 6)), "element " + (f * g).to_string());
      c.expect((x * y).agrees_with(laurent::expand(f * g * f2 * g2, ST, 6)), "product " + str(i));
    }
    for (long n = 1; n <= 10; ++n) {
      const RatFun w = RatFun::variable(Q, "s").pow(-n) * RatFun::variable(Q, "t").pow(n);
      c.expect(laurent::expand(w, ST, 4).valuation() == n, "(s,t) witness " + str(n));
      c.expect(laurent::expand(w, TS, 4).valuation() == -n, "(t,s) witness " + str(n));
    }
    return std::string();
  });

  all &= report(7, "tubular decomposition at prec 2, 4, 6 on toric flags of P1xP1 and P2", [&](Check& c) {
    long flags = 0;
    for (const char* name : {"P1xP1", "P2"}) {
      const auto X = geom::builtin_variety(name, Q);
      for (const auto& f : geom::toric_flags(X)) {
        ++flags;
        for (long p : {2L, 4L, 6L}) {
          const auto r = adele::tubular_check(X, f, p);
          c.expect(r.ok, std::string(name) + " " + geom::describe(X, f) + " prec " + str(p));
        }
      }
    }
    return str(flags) + " flags";
  });

  all &= report(8, "symbol calculus: Steinberg, bimultiplicativity, antisymmetry, units, tame agreement, ramification",
                [&](Check& c) {
    std::mt19937_64 rng(8);
    const auto vt = milnork::ValuationRef::variable("t");
    const RatFun one = RatFun::constant(Scalar::one(Q));
    for (int i = 0; i < 100; ++i) {
      RatFun f = monomial_unit(rng, Q, "t");
      if (f == one) continue;
      const auto s = milnork::tame_symbol(f, one - f, vt);
      c.expect(milnork::entry_is_one(s), "Steinberg " + f.to_string());
    }
    const CoordTower ST({"s", "t"}, ExtField::base(Q));
    const auto hv = [&](const RatFun& a, const RatFun& b) {
      return milnork::higher_valuation(milnork::SymbolSum(1, {a, b}), ST);
    };
    for (int i = 0; i < 30; ++i) {
      const RatFun a = testing::random_ratfun(rng, Q, {"s", "t"}) * RatFun::parse(Q, "t^2/s");
      const RatFun a2 = testing::random_ratfun(rng, Q, {"s", "t"}) * RatFun::parse(Q, "s^3");
      const RatFun b = testing::random_ratfun(rng, Q, {"s", "t"}) * RatFun::parse(Q, "s*t^-1");
      c.expect(hv(a * a2, b) == hv(a, b) + hv(a2, b), "bimultiplicative, slot 1");
      c.expect(hv(b, a * a2) == hv(b, a) + hv(b, a2), "bimultiplicative, slot 2");
      c.expect(hv(a, b) == -hv(b, a), "antisymmetry");
      const RatFun u1 = RatFun::parse(Q, "1 + s + t"), u2 = RatFun::parse(Q, "3 - s*t + t");
      c.expect(milnork::boundary(milnork::SymbolSum(1, {u1 * RatFun::parse(Q, "2 + s"), u2}), vt).empty(), "units");
    }
    int agree = 0;
    for (int i = 0; i < 50; ++i) {
      const RatFun f = monomial_unit(rng, Q, "t");
      const RatFun g = monomial_unit(rng, Q, "t");
      const auto b = milnork::boundary(milnork::SymbolSum(1, {f, g}), vt);
      const RatFun want = oracle::tame_direct(f, g, "t");
      const milnork::Entry got = b.empty() ? milnork::Entry(one) : b.k1_class();
      const bool ok = std::get<RatFun>(got) == want && std::get<RatFun>(milnork::tame_symbol(f, g, vt)) == want;
      c.expect(ok, "boundary vs tame on " + f.to_string() + ", " + g.to_string());
      agree += ok;
    }
    for (int i = 0; i < 20; ++i) {
      const RatFun u = testing::random_ratfun(rng, Q, {"s", "t"});
      const long base = hv(RatFun::variable(Q, "t"), u);
      for (long e : {1L, 2L, 3L}) {
        const RatFun te = RatFun::variable(Q, "t").pow(e);
        c.expect(hv(te, u.substitute("t", te)) == e * base, "ramification e = " + str(e));
      }
    }
    return str(agree) + " boundary/tame agreements";
  });

  all &= report(9, "duality: descriptor involution, Pontryagin double dual for |G| <= 64, exchange table", [&](Check& c) {
    std::mt19937_64 rng(9);
    const auto cat = lcadual::atom_catalogue();
    std::uniform_int_distribution<int> depth(0, 3), len(0, 3), wrap(0, 2);
    std::uniform_int_distribution<std::size_t> pick(0, cat.size() - 1);
    std::vector<lcadual::LcaDescriptor> ds;
    for (int i = 0; i < 200; ++i) {
      lcadual::LcaDescriptor D;
      for (int k = depth(rng); k > 0; --k) D.wraps.push_back(static_cast<lcadual::Wrap>(wrap(rng)));
      for (int k = len(rng); k > 0; --k) D.word.push_back(cat[pick(rng)]);
      c.expect(lcadual::descriptor_dual(lcadual::descriptor_dual(D)) == D, D.to_string());
      ds.push_back(std::move(D));
    }
    std::set<std::vector<long>> groups;
    for (long a = 1; a <= 64; ++a)
      for (long b = 1; a * b <= 64; ++b)
        for (long d = 1; a * b * d <= 64; ++d)
          for (long e = 1; a * b * d * e <= 64; ++e) groups.insert(lcadual::FinAb::from_cyclic({a, b, d, e}).factors());
    for (const auto& inv : groups) {
      const auto G = lcadual::FinAb::from_cyclic(inv);
      const oracle::CyclicProduct P{G.factors()};
      const auto chars = oracle::enumerate_characters(P);
      const auto D = lcadual::pontryagin_dual(G, 64);
      c.expect(static_cast<long>(chars.chars.size()) == G.order() && oracle::double_dual_bijective(P), "oracle " + G.to_string());
      c.expect(D.dual == G && lcadual::double_dual_is_iso(G), "dual of " + G.to_string());
      // every row of the library table is one of the enumerated characters, each exactly once
      std::set<std::vector<long>> seen;
      for (std::size_t j = 0; j < D.elements.size(); ++j) {
        std::vector<long> vals;
        for (std::size_t i = 0; i < D.elements.size(); ++i) {
          const mpq_class x = D.table[i][j] * chars.N;
          vals.push_back(x.get_num().get_si());
        }
        std::vector<long> on_gens;
        for (std::size_t g = 0; g < G.factors().size(); ++g) {
          std::vector<long> eg(G.factors().size(), 0);
          eg[g] = 1;
          on_gens.push_back(mpq_class(lcadual::character_value(G, eg, D.elements[j]) * chars.N).get_num().get_si());
        }
        bool matches = false;
        for (const auto& chi : chars.chars) {
          if (chi != on_gens) continue;
          matches = true;
          for (std::size_t i = 0; i < D.elements.size(); ++i) {
            matches = matches && oracle::evaluate(chars, chi, D.elements[i]) == vals[i];
          }
        }
        c.expect(matches && seen.insert(on_gens).second, "pairing table of " + G.to_string());
      }
    }
    const auto rows = lcadual::exchange_table();
    for (const auto& row : rows) {
      c.expect(lcadual::check_row_atomwise(row), row.left + " <-> " + row.right);
      for (const auto& D : ds) c.expect(lcadual::check_row(row, D), row.left + " on " + D.to_string());
    }
    return str(static_cast<long>(groups.size())) + " groups, " + str(static_cast<long>(rows.size())) + " exchange rows";
  });

  all &= report(10, "Haar modulus examples, adelic product formula, vanishing over Z((t)) and T((t))", [&](Check& c) {
    c.expect(lcadual::haar_modulus(lcadual::Automorphism::real_scalar(2)) == 2, "x2 on R");
    c.expect(lcadual::haar_modulus(lcadual::Automorphism::padic_scalar(2, 2)) == mpq_class(1, 2), "x2 on Q2");
    c.expect(lcadual::haar_modulus(lcadual::Automorphism::complex_scalar(1, 1)) == 2, "x(1+i) on C");
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<int> k(-3, 3), a(1, 40);
    for (int i = 0; i < 20; ++i) {
      const RatFun f = RatFun::constant(Scalar(Q, mpq_class(a(rng), a(rng)))) * RatFun::variable(Q, "t").pow(k(rng)) *
                       RatFun::parse(Q, "1 + 2*t");
      const RatFun g = RatFun::constant(Scalar(Q, mpq_class(-a(rng), a(rng)))) * RatFun::variable(Q, "t").pow(k(rng));
      const auto r = lcadual::adelic_pairing(f, g);
      // oracle: residue from the formula, place values from prime factorizations
      const RatFun res = oracle::tame_direct(f, g, "t");
      const mpq_class rq = res.num().constant_value().to_rational() / res.den().constant_value().to_rational();
      mpq_class prod = abs(rq);
      bool places_ok = r.places.front().second == abs(rq);
      for (std::size_t j = 1; j < r.places.size(); ++j) {
        const long p = std::stol(r.places[j].first.substr(3));
        mpz_class num = abs(rq.get_num()), den = rq.get_den();
        mpq_class v = 1;
        while (num % p == 0) {
          num /= p;
          v /= p;
        }
        while (den % p == 0) {
          den /= p;
          v *= p;
        }
        places_ok = places_ok && r.places[j].second == v;
        prod *= v;
      }
      c.expect(places_ok && prod == 1 && r.product == 1 && r.residue == rq, "pair " + f.to_string() + ", " + g.to_string());
    }
    for (const char* base : {"Z", "T"}) {
      const auto w = lcadual::pairing_vanishing_witness(base);
      bool ones = w.constant_one && !w.rows.empty();
      for (const auto& row : w.rows) ones = ones && row.value == 1;
      c.expect(ones, std::string(base) + "((t))");
    }
    return std::string();
  });

  return all ? 0 : 1;
}
