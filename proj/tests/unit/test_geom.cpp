#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "hlf/error.hpp"
#include "hlf/geom/builtin.hpp"
#include "hlf/geom/config.hpp"
#include "random_inputs.hpp"

using namespace hlf::geom;
using hlf::Error;
using hlf::ErrorKind;

namespace {

const Field Q = Field::rationals();

std::string config_path(const char* name) { return std::string(HLF_CONFIG_DIR) + "/" + name; }

Flag point_flag(const VarietySpec& X, const char* chart, std::vector<std::string> coords) {
  Flag f;
  f.chart = X.chart_index(chart);
  f.coords = std::move(coords);
  f.centre.assign(f.coords.size(), Scalar::zero(X.field));
  return f;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Invariant;
}

}  // namespace

TEST(Builtin, Shapes) {
  EXPECT_EQ(builtin_variety("P1", Q).cover.size(), 2u);
  EXPECT_EQ(builtin_variety("P2", Q).cover.size(), 3u);
  EXPECT_EQ(builtin_variety("P1xP1", Q).cover.size(), 4u);
  EXPECT_EQ(builtin_variety("P1xP1xP1", Q).dimension, 3);
  EXPECT_THROW(builtin_variety("Q2", Q), Error);
  EXPECT_THROW(builtin("P1(1,2)", Q), Error);
}

TEST(Builtin, LineBundles) {
  auto [X, L] = builtin("P1(1)", Q);
  const auto e = L.entry(0, 1);
  EXPECT_EQ(std::abs(e.exponents[0]), 1);
  EXPECT_EQ(e.exponents[0], -e.exponents[1]);
  auto [X0, L0] = builtin("P1(0)", Q);
  EXPECT_TRUE(L0.support().empty());
  // exterior tensor of the two rulings
  const auto Y = builtin_variety("P1xP1", Q);
  const auto L11 = builtin_bundle(Y, {1, 1});
  const auto T = tensor(builtin_bundle(Y, {1, 0}), builtin_bundle(Y, {0, 1}));
  for (int r = 0; r < 4; ++r) {
    for (int v = 0; v < 4; ++v) EXPECT_TRUE(L11.entry(r, v) == T.entry(r, v));
  }
}

TEST(Builtin, CocyclesValidate) {
  for (const char* name : {"P1", "P2", "P3", "P1xP1", "P1xP2", "P1xP1xP1"}) {
    for (Field f : {Q, Field::prime(5)}) {
      const auto X = builtin_variety(name, f);
      X.validate();
      std::vector<long> deg(builtin_factors(name).size());
      for (std::size_t i = 0; i < deg.size(); ++i) deg[i] = static_cast<long>(i) * 2 - 1;
      EXPECT_NO_THROW(validate_cocycle(X, builtin_bundle(X, deg))) << name;
    }
  }
}

TEST(Cocycle, RejectsBadInput) {
  const auto X = builtin_variety("P1", Q);
  CechCocycle L("bad", Q, 2, 2);
  EXPECT_THROW(L.set(0, 0, {Scalar(Q, 2L), {0, 0}}), Error);
  L.set(0, 1, {Scalar::one(Q), {1, -1}});
  L.set(1, 0, {Scalar::one(Q), {1, -1}});  // not the inverse
  EXPECT_EQ(kind_of([&] { validate_cocycle(X, L); }), ErrorKind::Precondition);
  CechCocycle M("partial", Q, 2, 2);
  M.set(0, 1, {Scalar::one(Q), {1, -1}});
  EXPECT_THROW(validate_cocycle(X, M), Error);
  M.complete_alternating();
  EXPECT_NO_THROW(validate_cocycle(X, M));
  // a pole inside U_0 cap U_1 is not allowed... on P1 the overlap excludes both points, so use P2
  const auto P2 = builtin_variety("P2", Q);
  auto N = builtin_bundle(P2, {1});
  auto e = N.entry(0, 1);
  e.exponents[2] += 1;
  N.set(0, 1, e);
  EXPECT_THROW(validate_cocycle(P2, N), Error);
}

TEST(Glue, RoundTripOnRandomFunctions) {
  std::mt19937_64 rng(7);
  for (const char* name : {"P1xP1", "P2"}) {
    const auto X = builtin_variety(name, Q);
    for (const auto& g : X.glue) {
      for (int k = 0; k < 3; ++k) {
        const auto f = hlf::testing::random_ratfun(rng, Q, X.charts[static_cast<std::size_t>(g.from)].coords, 2);
        EXPECT_EQ(X.transport(X.transport(f, g.to, g.from), g.from, g.to), f);
      }
    }
  }
}

TEST(Alpha, Examples) {
  const auto X = builtin_variety("P1", Q);
  const auto origin = point_flag(X, "U0", {"x10"});
  const auto inf = point_flag(X, "U1", {"x01"});
  EXPECT_EQ(alpha_of(X, origin, 1), 0);
  EXPECT_EQ(alpha_of(X, inf, 1), 1);
  EXPECT_EQ(alpha_of(X, origin, 0), 0);
  EXPECT_EQ(alpha_of(X, inf, 0), 0);
  // the smallest member wins when several contain the point
  Flag one = origin;
  one.centre = {Scalar(Q, 1L)};
  EXPECT_EQ(alpha_of(X, one, 1), 0);
}

TEST(Alpha, CoverNotCovering) {
  auto X = builtin_variety("P1", Q);
  X.cover.pop_back();
  EXPECT_EQ(kind_of([&] { alpha_of(X, point_flag(X, "U1", {"x01"}), 1); }), ErrorKind::Invariant);
}

TEST(Flags, ToricEnumeration) {
  const auto X = builtin_variety("P1xP1", Q);
  const auto a = builtin_bundle(X, {1, 0});
  const auto b = builtin_bundle(X, {0, 1});
  const auto fl = enumerate_flags(X, {a, b});
  EXPECT_EQ(fl.size(), 8u);
  std::set<std::string> points;
  for (const auto& f : fl) points.insert(X.charts[static_cast<std::size_t>(f.chart)].id);
  EXPECT_EQ(points.size(), 4u);
  const auto fl2 = enumerate_flags(X, {b, a});
  ASSERT_EQ(fl2.size(), fl.size());
  for (std::size_t i = 0; i < fl.size(); ++i) EXPECT_EQ(flag_id(X, fl[i]), flag_id(X, fl2[i]));
  EXPECT_TRUE(enumerate_flags(X, {builtin_bundle(X, {0, 0})}).empty());
  const auto P1 = builtin_variety("P1", Q);
  EXPECT_EQ(enumerate_flags(P1, {builtin_bundle(P1, {3})}).size(), 2u);
}

TEST(Flags, DescribeAndIds) {
  const auto X = builtin_variety("P1xP1", Q);
  const auto f = point_flag(X, "U00", {"x10", "y10"});
  EXPECT_EQ(describe(X, f), "U00[x10,y10]: generic > {y10 = 0} > {x10 = 0, y10 = 0}");
  EXPECT_EQ(flag_id(X, f).size(), 16u);
  EXPECT_TRUE(lies_on(X, f, 1, X.divisor_index("y1")));
  EXPECT_FALSE(lies_on(X, f, 1, X.divisor_index("x1")));
  EXPECT_TRUE(lies_on(X, f, 2, X.divisor_index("x1")));
  Flag g = f;
  g.coords = {"x10", "x10"};
  EXPECT_THROW(validate_flag(X, g), Error);
}

TEST(Config, LoadsFullExample) {
  const auto cfg = load_config(config_path("p1xp1.json"));
  EXPECT_EQ(cfg.variety.dimension, 2);
  EXPECT_EQ(cfg.cocycles.size(), 2u);
  EXPECT_FALSE(cfg.variety.builtin);
  EXPECT_EQ(cfg.variety.declared_flags.size(), 8u);
  EXPECT_EQ(enumerate_flags(cfg.variety, cfg.cocycles).size(), 8u);
  const auto r = load_config(config_path("p1_refined.json"));
  EXPECT_EQ(r.variety.cover.size(), 3u);
  EXPECT_EQ(r.variety.declared_flags.back().residue_degree(), 2);
}

TEST(Config, StrictKeys) {
  const std::string base = R"({"name":"A1","field":"Q","dimension":1,"charts":[{"id":"A","coords":["t"]}],
    "divisors":[{"name":"o","equations":{"A":"t"}}],"cover":[{"chart":"A"}] EXTRA })";
  const auto with = [&](const std::string& extra) {
    std::string s = base;
    s.replace(s.find("EXTRA"), 5, extra);
    return s;
  };
  EXPECT_NO_THROW(parse_config(with("")));
  EXPECT_EQ(kind_of([&] { parse_config(with(R"(, "colour": 3)")); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([&] { parse_config("{ not json"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([&] { parse_config(R"({"name":"x"})"); }), ErrorKind::Parse);
  // no candidate flags
  const auto cfg = parse_config(with(""));
  EXPECT_EQ(kind_of([&] { enumerate_flags(cfg.variety, {}); }), ErrorKind::Precondition);
  // divisor that is not prime
  std::string s = with("");
  s.replace(s.find("\"t\"}"), 3, "\"t^2 - 1\"");
  EXPECT_EQ(kind_of([&] { parse_config(s); }), ErrorKind::Precondition);
}

TEST(Config, NonAlternatingRejected) {
  const std::string doc = R"({"name":"P1","field":"Q","dimension":1,
    "charts":[{"id":"A","coords":["t"]},{"id":"B","coords":["s"]}],
    "divisors":[{"name":"zero","equations":{"A":"t"}},{"name":"inf","equations":{"B":"s"}}],
    "cover":[{"chart":"A"},{"chart":"B"}],
    "glue":[{"from":"A","to":"B","map":{"s":"1/t"}},{"from":"B","to":"A","map":{"t":"1/s"}}],
    "cocycles":[{"label":"L","entries":[{"rho":0,"nu":1,"exponents":{"inf":1,"zero":-1}},
                                        {"rho":1,"nu":0,"exponents":{"inf":1,"zero":-1}}]}]})";
  EXPECT_EQ(kind_of([&] { parse_config(doc); }), ErrorKind::Precondition);
}

TEST(Config, GlueMustRoundTrip) {
  const std::string doc = R"({"name":"P1","field":"Q","dimension":1,
    "charts":[{"id":"A","coords":["t"]},{"id":"B","coords":["s"]}],
    "divisors":[{"name":"zero","equations":{"A":"t"}},{"name":"inf","equations":{"B":"s"}}],
    "cover":[{"chart":"A"},{"chart":"B"}],
    "glue":[{"from":"A","to":"B","map":{"s":"1/t"}},{"from":"B","to":"A","map":{"t":"2/s"}}]})";
  EXPECT_EQ(kind_of([&] { parse_config(doc); }), ErrorKind::Invariant);
}
