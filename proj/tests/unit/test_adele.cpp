#include <gtest/gtest.h>

#include <random>

#include "hlf/adele/engine.hpp"
#include "hlf/error.hpp"
#include "hlf/geom/config.hpp"
#include "toric_oracle.hpp"

using namespace hlf::adele;
using hlf::Error;
using hlf::exactalg::Field;
using hlf::exactalg::Scalar;
using hlf::geom::builtin_bundle;
using hlf::geom::builtin_variety;

namespace {

const Field Q = Field::rationals();
const Field F5 = Field::prime(5);

Flag point_flag(const VarietySpec& X, const char* chart, std::vector<std::string> coords) {
  Flag f;
  f.chart = X.chart_index(chart);
  f.coords = std::move(coords);
  f.centre.assign(f.coords.size(), Scalar::zero(X.field));
  return f;
}

RatFun rf(const char* s) { return RatFun::parse(Q, s); }

long pair_total(const VarietySpec& X, std::vector<long> a, std::vector<long> b) {
  return intersection(X, {builtin_bundle(X, a), builtin_bundle(X, b)}).total;
}

}  // namespace

TEST(VTate, Examples) {
  const auto P1 = builtin_variety("P1", Q);
  const auto f = point_flag(P1, "U0", {"x10"});
  for (long d = -4; d <= 4; ++d) {
    const RatFun e = RatFun::variable(Q, "x10").pow(d);
    EXPECT_EQ(v_tate(P1, f, {e}), d);
    EXPECT_EQ(v_index(P1, f, e), d);
  }
  const auto X = builtin_variety("P1xP1", Q);
  const auto g = point_flag(X, "U00", {"x10", "y10"});
  EXPECT_EQ(std::abs(v_tate(X, g, {rf("y10"), rf("x10")})), 1);
  EXPECT_EQ(v_tate(X, g, {rf("y10"), rf("x10")}), v_ger_flag(X, g, {rf("y10"), rf("x10")}));
  EXPECT_EQ(v_tate(X, g, {rf("1 + x10"), rf("3 - y10")}), 0);
  EXPECT_THROW(v_tate(X, g, {rf("0"), rf("x10")}), Error);
}

TEST(VTate, ClosedPointOfDegreeTwo) {
  const auto cfg = hlf::geom::load_config(std::string(HLF_CONFIG_DIR) + "/p1_refined.json");
  const auto& X = cfg.variety;
  const Flag f = X.declared_flags.back();
  EXPECT_EQ(f.residue_degree(), 2);
  EXPECT_EQ(v_tate(X, f, {rf("t^2 + 1")}), 2);
  EXPECT_EQ(v_ger_flag(X, f, {rf("t^2 + 1")}), 2);
  EXPECT_EQ(v_tate(X, f, {rf("(t^2 + 1)^-3 * (t - 5)")}), -6);
  EXPECT_EQ(v_tate(X, f, {rf("t")}), 0);
}

TEST(Degree, ProjectiveLine) {
  for (Field F : {Q, F5}) {
    const auto P1 = builtin_variety("P1", F);
    for (long d = -5; d <= 5; ++d) {
      const auto L = builtin_bundle(P1, {d});
      const auto r = degree(P1, L);
      EXPECT_EQ(r.total, d);
      EXPECT_EQ(r.total, hlf::oracle::divisor_degree(P1, L));
      EXPECT_EQ(r.sign, -1);
      EXPECT_TRUE(r.routes_agree);
      EXPECT_EQ(r.label, "intersection number");
      for (const auto& c : r.flags) ASSERT_TRUE(c.index_route.has_value());
    }
  }
}

TEST(Degree, Additive) {
  const auto P1 = builtin_variety("P1", Q);
  for (long a = -3; a <= 3; ++a) {
    for (long b = -3; b <= 3; ++b) {
      const auto L = tensor(builtin_bundle(P1, {a}), builtin_bundle(P1, {b}));
      EXPECT_EQ(degree(P1, L).total, hlf::oracle::divisor_degree(P1, L));
      EXPECT_EQ(degree(P1, L).total, a + b);
    }
  }
}

TEST(Degree, RefinedCoverAndLabel) {
  const auto cfg = hlf::geom::load_config(std::string(HLF_CONFIG_DIR) + "/p1_refined.json");
  const auto r = degree(cfg.variety, cfg.cocycles[0]);
  EXPECT_EQ(r.total, 1);
  EXPECT_TRUE(r.routes_agree);
  EXPECT_EQ(r.label, "formula value, not an intersection number");
  EXPECT_EQ(degree(cfg.variety, tensor(cfg.cocycles[0], cfg.cocycles[0])).total, 2);
}

TEST(Degree, NeedsCurve) {
  const auto X = builtin_variety("P1xP1", Q);
  EXPECT_THROW(degree(X, builtin_bundle(X, {1, 0})), Error);
  EXPECT_THROW(intersection(X, {builtin_bundle(X, {1, 0})}), Error);
}

TEST(Intersection, ProductOfLines) {
  const auto X = builtin_variety("P1xP1", Q);
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; c += 2)
        for (long d = -1; d <= 1; ++d) {
          const auto r = intersection(X, {builtin_bundle(X, {a, b}), builtin_bundle(X, {c, d})});
          EXPECT_EQ(r.total, hlf::oracle::toric_pairing({1, 1}, {{a, b}, {c, d}})) << a << b << c << d;
          EXPECT_EQ(r.total, a * d + b * c);
          EXPECT_TRUE(r.routes_agree);
          EXPECT_EQ(r.sign, -1);
        }
}

TEST(Intersection, ProjectivePlane) {
  for (Field F : {Q, F5}) {
    const auto X = builtin_variety("P2", F);
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b) {
        const auto r = intersection(X, {builtin_bundle(X, {a}), builtin_bundle(X, {b})});
        EXPECT_EQ(r.total, hlf::oracle::toric_pairing({2}, {{a}, {b}}));
        EXPECT_EQ(r.gersten_total, r.total);
      }
  }
}

TEST(Intersection, ThreeFolds) {
  const auto X = builtin_variety("P1xP1xP1", Q);
  const auto r = intersection(X, {builtin_bundle(X, {1, 0, 0}), builtin_bundle(X, {0, 1, 0}), builtin_bundle(X, {0, 0, 1})});
  EXPECT_EQ(r.sign, 1);
  EXPECT_EQ(r.total, 1);
  EXPECT_TRUE(r.routes_agree);
  const auto P3 = builtin_variety("P3", Q);
  EXPECT_EQ(intersection(P3, {builtin_bundle(P3, {2}), builtin_bundle(P3, {-1}), builtin_bundle(P3, {3})}).total, -6);
}

TEST(Intersection, SymmetryAndBilinearity) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> k(-3, 3);
  const auto X = builtin_variety("P1xP1", Q);
  for (int i = 0; i < 10; ++i) {
    const std::vector<long> a{k(rng), k(rng)}, b{k(rng), k(rng)}, c{k(rng), k(rng)};
    EXPECT_EQ(pair_total(X, a, b), pair_total(X, b, a));
    const std::vector<long> ab{a[0] + b[0], a[1] + b[1]};
    EXPECT_EQ(pair_total(X, ab, c), pair_total(X, a, c) + pair_total(X, b, c));
  }
}

TEST(Intersection, ConfigMatchesBuiltin) {
  const auto cfg = hlf::geom::load_config(std::string(HLF_CONFIG_DIR) + "/p1xp1.json");
  const auto r = intersection(cfg.variety, cfg.cocycles);
  EXPECT_EQ(r.total, 1);
  EXPECT_TRUE(r.routes_agree);
  const auto L = tensor(cfg.cocycles[0], cfg.cocycles[1]);
  EXPECT_EQ(intersection(cfg.variety, {L, L}).total, 2);
}

TEST(Intersection, ParallelIsDeterministic) {
  const auto X = builtin_variety("P1xP1", Q);
  const std::vector<CechCocycle> Ls{builtin_bundle(X, {2, -1}), builtin_bundle(X, {1, 3})};
  const auto a = intersection(X, Ls, {1, true});
  const auto b = intersection(X, Ls, {4, true});
  ASSERT_EQ(a.flags.size(), b.flags.size());
  EXPECT_EQ(a.flags.size(), 8u);
  for (std::size_t i = 0; i < a.flags.size(); ++i) {
    EXPECT_EQ(a.flags[i].id, b.flags[i].id);
    EXPECT_EQ(a.flags[i].tate, b.flags[i].tate);
  }
  EXPECT_EQ(a.total, b.total);
  EXPECT_TRUE(std::is_sorted(a.flags.begin(), a.flags.end(), [](const auto& x, const auto& y) { return x.id < y.id; }));
  EXPECT_EQ(v_ger(X, Ls), a.total);
}

TEST(Lambda, Factors) {
  const auto X = builtin_variety("P1xP1", Q);
  const auto f = point_flag(X, "U00", {"x10", "y10"});
  const auto outer = lambda_factor(X, f, 1, 3);
  EXPECT_EQ(outer.var, "y10");
  EXPECT_EQ(outer.descriptor.to_string(), "Tate(y10)@Vect(Q)");
  EXPECT_EQ(lambda_factor(X, f, 2, 3).var, "x10");
  ASSERT_EQ(outer.windows.size(), 3u);
  EXPECT_EQ(outer.windows[2].lo, -3);
  EXPECT_EQ(outer.windows[2].hi, 3);
  const auto scaled = lambda_factor(X, f, 1, 3, rf("7"));
  for (std::size_t j = 0; j < scaled.windows[1].basis.size(); ++j) {
    EXPECT_TRUE(scaled.windows[1].basis[j].agrees_with(outer.windows[1].basis[j].scaled(hlf::exactalg::ExtElem(outer.windows[1].basis[j].tower().residue(), Scalar(Q, 7L)))));
  }
  const auto shifted = lambda_factor(X, f, 1, 3, rf("y10^2"));
  for (std::size_t p = 0; p < 3; ++p) {
    EXPECT_EQ(shifted.windows[p].lo, outer.windows[p].lo + 2);
    EXPECT_EQ(shifted.windows[p].hi, outer.windows[p].hi + 2);
    EXPECT_EQ(shifted.windows[p].basis.front().valuation(), outer.windows[p].lo + 2);
  }
  EXPECT_THROW(lambda_factor(X, f, 3, 3), Error);
  EXPECT_THROW(lambda_factor(X, f, 1, 3, rf("x10")), Error);
}

TEST(Tubular, ToricFlags) {
  for (const char* name : {"P1", "P2", "P1xP1"}) {
    const auto X = builtin_variety(name, Q);
    for (const auto& f : hlf::geom::toric_flags(X)) {
      for (long p : {2L, 4L}) {
        const auto r = tubular_check(X, f, p);
        EXPECT_TRUE(r.ok) << name << " " << hlf::geom::describe(X, f);
        EXPECT_GT(r.checked, 0);
      }
    }
  }
}

TEST(Tubular, SwappedOrderFails) {
  const auto X = builtin_variety("P1xP1", Q);
  const auto f = point_flag(X, "U00", {"x10", "y10"});
  const auto r = tubular_check(X, f, 4, true);
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.diffs.empty());
  EXPECT_NE(r.diffs[0].find("descriptor mismatch"), std::string::npos);
  const auto P1 = builtin_variety("P1", Q);
  EXPECT_TRUE(tubular_check(P1, point_flag(P1, "U0", {"x10"}), 4, true).ok);
}

TEST(Tubular, NonRationalPoint) {
  const auto cfg = hlf::geom::load_config(std::string(HLF_CONFIG_DIR) + "/p1_refined.json");
  EXPECT_TRUE(tubular_check(cfg.variety, cfg.variety.declared_flags.back(), 4).ok);
}
