#include <gtest/gtest.h>

#include <random>

#include "hlf/error.hpp"
#include "hlf/laurent/series.hpp"
#include "random_inputs.hpp"

using namespace hlf::laurent;
using hlf::exactalg::Field;
using hlf::testing::random_ratfun;

namespace {

const Field Q = Field::rationals();
const ExtField K = ExtField::base(Q);
const CoordTower T({"t"}, K);
const CoordTower ST({"s", "t"}, K);
const CoordTower TS({"t", "s"}, K);

RatFun rf(const char* s) { return RatFun::parse(Q, s); }
NestedSeries ps(const CoordTower& tw, const char* s) { return NestedSeries::parse(tw, s); }

}  // namespace

TEST(Expand, GeometricSeries) {
  const NestedSeries x = expand(rf("1/(1-t)"), T, 4);
  EXPECT_EQ(x.to_string(), "1*t^0 + 1*t^1 + 1*t^2 + 1*t^3 + O(t^4)");
  EXPECT_TRUE(x.agrees_with(ps(T, "1*t^0 + 1*t^1 + 1*t^2 + 1*t^3 + O(t^4)")));
}

TEST(Expand, OrderDependence) {
  const NestedSeries a = expand(rf("1/(s+t)"), ST, 3);
  EXPECT_EQ(a.to_string(), "(1*s^-1)*t^0 + (-1*s^-2)*t^1 + (1*s^-3)*t^2 + O(t^3)");
  const NestedSeries b = expand(rf("1/(s+t)"), TS, 3);
  EXPECT_EQ(b.to_string(), "(1*t^-1)*s^0 + (-1*t^-2)*s^1 + (1*t^-3)*s^2 + O(s^3)");
}

TEST(Expand, ErrorsOnForeignVariable) {
  EXPECT_THROW(expand(rf("1/(u+t)"), ST, 3), hlf::Error);
  EXPECT_THROW(expand(rf("0"), ST, 3), hlf::Error);
}

TEST(Series, ValuationAndUnit) {
  auto [v, u] = valuation_and_unit(expand(rf("t^-2 + 1"), T, 5));
  EXPECT_EQ(v, -2);
  EXPECT_TRUE(u.agrees_with(expand(rf("1 + t^2"), T, 5)));
  auto [v2, u2] = valuation_and_unit(expand(rf("s*t^3"), ST, 5));
  EXPECT_EQ(v2, 3);
  EXPECT_EQ(u2.to_string(), "(1*s^1)*t^0");
  const NestedSeries x = expand(rf("(s+t)/s^2"), ST, 5);
  auto [v3, u3] = valuation_and_unit(x);
  EXPECT_EQ(v3, 0);
  EXPECT_EQ(u3.leading_coeff().valuation(), -1);
}

TEST(Series, PrecisionExhausted) {
  EXPECT_THROW(ps(T, "O(t^3)").valuation_and_unit(), hlf::Error);
}

TEST(Series, MulAndInvExamples) {
  EXPECT_TRUE((expand(rf("1+t"), T, 5) * expand(rf("1-t"), T, 5)).agrees_with(expand(rf("1-t^2"), T, 5)));
  EXPECT_EQ((NestedSeries::monomial(T, "t", -1) * NestedSeries::monomial(T, "t", 1)).to_string(), "1*t^0");
  EXPECT_EQ(series_inv(expand(rf("1+t"), T, 4), 4).to_string(), "1*t^0 + -1*t^1 + 1*t^2 + -1*t^3 + O(t^4)");
  EXPECT_EQ(series_inv(expand(rf("t^2"), T, 4)).to_string(), "1*t^-2");
  EXPECT_THROW(NestedSeries::monomial(T, "t", 1) * NestedSeries::monomial(ST, "t", 1), hlf::Error);
}

TEST(Series, ProductMatchesJointExpansion) {
  std::mt19937_64 rng(17);
  for (const CoordTower* tw : {&T, &ST, &TS}) {
    for (int i = 0; i < 50; ++i) {
      const auto vars = tw->layers();
      const RatFun f = random_ratfun(rng, Q, vars);
      const RatFun g = random_ratfun(rng, Q, vars);
      if (f.is_zero() || g.is_zero()) continue;
      const NestedSeries lhs = series_mul(expand(f, *tw, 6), expand(g, *tw, 6));
      ASSERT_TRUE(lhs.agrees_with(expand(f * g, *tw, 6))) << f << " * " << g;
      ASSERT_TRUE(series_inv(expand(f, *tw, 6)).agrees_with(expand(f.inv(), *tw, 6))) << f;
    }
  }
}

TEST(Series, PrecisionMonotone) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 50; ++i) {
    const RatFun f = random_ratfun(rng, Q, {"s", "t"});
    if (f.is_zero()) continue;
    ASSERT_TRUE(expand(f, ST, 3).agrees_with(expand(f, ST, 7)));
    ASSERT_EQ(expand(f, ST, 3).valuation(), hlf::exactalg::ord_in_variable(f, "t"));
  }
}

TEST(Series, ValuationAdditive) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const RatFun f = random_ratfun(rng, Q, {"s", "t"});
    const RatFun g = random_ratfun(rng, Q, {"s", "t"});
    if (f.is_zero() || g.is_zero()) continue;
    const NestedSeries a = expand(f, ST, 5);
    const NestedSeries b = expand(g, ST, 5);
    ASSERT_EQ((a * b).valuation(), a.valuation() + b.valuation());
  }
}

TEST(Series, OrderWitnessSequence) {
  for (int n = 1; n <= 10; ++n) {
    const RatFun x = rf("t/s").pow(n);
    EXPECT_EQ(expand(x, ST, 2).valuation(), n);
    EXPECT_EQ(expand(x, TS, 2).valuation(), -n);
  }
}

TEST(Series, TextRoundTrip) {
  std::mt19937_64 rng(29);
  const CoordTower STU({"s", "t", "u"}, K);
  for (int i = 0; i < 30; ++i) {
    const RatFun f = random_ratfun(rng, Q, {"s", "t", "u"});
    if (f.is_zero()) continue;
    const NestedSeries x = expand(f, STU, 3);
    const NestedSeries y = NestedSeries::parse(STU, x.to_string());
    ASSERT_EQ(y.to_string(), x.to_string());
    ASSERT_TRUE(x.agrees_with(y));
  }
  EXPECT_THROW(ps(ST, "1*t^0"), hlf::Error);
  EXPECT_THROW(ps(T, "1*t^0 + 2*t^0"), hlf::Error);
}

TEST(Series, ExtensionCoefficients) {
  const ExtField L = ExtField::parse(Q, "x^2 - 2");
  const CoordTower tw({"u"}, L);
  const ExtElem r2 = ExtElem::generator(L);
  // x -> sqrt2 + u turns x^2 - 2 into 2 sqrt2 u + u^2
  std::map<std::string, ExtPoly> images;
  images.emplace("x", ExtPoly::constant(L, {"u"}, r2) + ExtPoly::variable(L, {"u"}, 0));
  const NestedSeries e = expand(rf("x^2 - 2"), tw, 4, images);
  EXPECT_EQ(e.valuation(), 1);
  EXPECT_EQ(e.leading_coeff().scalar_value(), r2 + r2);
  EXPECT_EQ(NestedSeries::parse(tw, e.to_string()).to_string(), e.to_string());
}
