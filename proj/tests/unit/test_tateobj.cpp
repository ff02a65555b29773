#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hlf/error.hpp"
#include "hlf/tateobj/descriptor.hpp"
#include "hlf/tateobj/element.hpp"
#include "hlf/tateobj/lattice.hpp"
#include "random_inputs.hpp"
#include "shuffle_oracle.hpp"

using namespace hlf::tateobj;
using hlf::exactalg::ExtField;
using hlf::exactalg::Field;
using hlf::exactalg::RatFun;
using hlf::laurent::expand;
using hlf::testing::random_ratfun;

namespace {

const Field Q = Field::rationals();
const ExtField K = ExtField::base(Q);
const BaseCategory VQ = BaseCategory::vect("Q");

RatFun rf(const char* s) { return RatFun::parse(Q, s); }

TateDescriptor tate1(const std::string& v) { return TateDescriptor::tate(VQ, {v}); }

TateDescriptor random_descriptor(std::mt19937_64& rng, int max_depth) {
  std::uniform_int_distribution<int> len(0, max_depth);
  std::uniform_int_distribution<int> kind(0, 2);
  std::vector<Leg> legs;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    const int k = kind(rng);
    legs.push_back(k == 0 ? Leg::ind() : k == 1 ? Leg::pro() : Leg::tate("x" + std::to_string(i)));
  }
  return TateDescriptor(VQ, legs);
}

}  // namespace

TEST(Descriptor, TextRoundTrip) {
  const auto d = TateDescriptor::parse("Tate(s).Tate(t)@Vect(Q)");
  EXPECT_EQ(d.depth(), 2);
  EXPECT_EQ(d.tower_string(), "Q((s))((t))");
  EXPECT_EQ(d.to_string(), "Tate(s).Tate(t)@Vect(Q)");
  const auto e = TateDescriptor::parse("Pro.Tate(s).Ind@LCA");
  EXPECT_EQ(TateDescriptor::parse(e.to_string()), e);
  EXPECT_EQ(TateDescriptor::parse("unit@Vect(F5)").size(), 0);
  EXPECT_THROW(TateDescriptor::parse("Tate(s).Tate(s)@Vect(Q)"), hlf::Error);
  EXPECT_THROW(TateDescriptor::parse("Tate(s)"), hlf::Error);
  EXPECT_THROW(TateDescriptor::parse("Foo@Vect(Q)"), hlf::Error);
}

TEST(Descriptor, TensorExamples) {
  const auto s = tate1("s");
  const auto t = tate1("t");
  EXPECT_EQ(tensor_descriptor(s, t).tower_string(), "Q((s))((t))");
  EXPECT_EQ(tensor_descriptor(s, t, Shuffle::parse(1, 1, "RL")).tower_string(), "Q((t))((s))");
  const auto v = TateDescriptor::parse("Tate(a).Pro.Tate(b)@Vect(Q)");
  EXPECT_EQ(tensor_descriptor(v, TateDescriptor::unit(VQ)), v);
  EXPECT_EQ(tensor_descriptor(TateDescriptor::unit(VQ), v), v);
  EXPECT_THROW(tensor_descriptor(s, TateDescriptor::tate(BaseCategory::vect("F5"), {"t"})), hlf::Error);
  EXPECT_THROW(tensor_descriptor(s, t, Shuffle::parse(2, 0, "LL")), hlf::Error);
}

TEST(Descriptor, NonSymmetryWitness) {
  const auto s = tate1("s");
  const auto t = tate1("t");
  EXPECT_NE(tensor_descriptor(s, t), tensor_descriptor(s, t, Shuffle::parse(1, 1, "RL")));
  EXPECT_EQ(tensor_all(s, t).size(), 2u);
}

TEST(Descriptor, TrivialTensorAssociative) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto a = random_descriptor(rng, 2);
    auto b = TateDescriptor::parse("Ind.Tate(y0)@Vect(Q)");
    auto c = TateDescriptor::parse("Tate(z0).Pro@Vect(Q)");
    EXPECT_EQ(tensor_descriptor(tensor_descriptor(a, b), c), tensor_descriptor(a, tensor_descriptor(b, c)));
  }
}

TEST(Descriptor, DualInvolution) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto d = random_descriptor(rng, 4);
    const auto dd = dualize_descriptor(d);
    EXPECT_EQ(dualize_descriptor(dd), d);
    EXPECT_EQ(dd.depth(), d.depth());
  }
  EXPECT_EQ(dualize_descriptor(TateDescriptor::parse("Pro@Vect(Q)")), TateDescriptor::parse("Ind@Vect(Q)"));
  const auto tt = TateDescriptor::tate(VQ, {"a", "b", "c"});
  EXPECT_EQ(dualize_descriptor(tt), tt);
  EXPECT_THROW(dualize_descriptor(TateDescriptor::parse("Ind@Opaque(X)")), hlf::Error);
}

TEST(Descriptor, Hom) {
  std::mt19937_64 rng(8);
  const auto unit = TateDescriptor::unit(VQ);
  const auto v = TateDescriptor::parse("Tate(a).Ind@Vect(Q)");
  EXPECT_EQ(hom_descriptor(unit, v), v);
  EXPECT_EQ(hom_descriptor(tate1("s"), tate1("t")).depth(), 2);
  for (int i = 0; i < 20; ++i) {
    const auto u = random_descriptor(rng, 3);
    EXPECT_EQ(hom_descriptor(u, unit), dualize_descriptor(u));
  }
  EXPECT_THROW(hom_descriptor(TateDescriptor::parse("Ind@LCA"), TateDescriptor::parse("Pro@LCA")), hlf::Error);
}

TEST(Shuffle, Basics) {
  EXPECT_THROW(Shuffle::parse(2, 1, "LRR"), hlf::Error);
  EXPECT_THROW(Shuffle::parse(1, 1, "LX"), hlf::Error);
  EXPECT_EQ(Shuffle::all(2, 2).size(), 6u);
  EXPECT_EQ(Shuffle::all(0, 3).size(), 1u);
}

TEST(Shuffle, ComposeTrivial) {
  for (int n = 0; n <= 2; ++n) {
    for (int m = 0; m <= 2; ++m) {
      for (int l = 0; l <= 2; ++l) {
        const auto p = shuffle_compose(Shuffle::trivial(n, m), Shuffle::trivial(n + m, l));
        EXPECT_EQ(p.sigma_prime, Shuffle::trivial(n, m + l));
        EXPECT_EQ(p.tau_prime, Shuffle::trivial(m, l));
      }
    }
  }
}

TEST(Shuffle, ComposeExhaustive) {
  long cases = 0;
  for (int total = 0; total <= 6; ++total) {
    for (int n = 0; n <= total; ++n) {
      for (int m = 0; n + m <= total; ++m) {
        const int l = total - n - m;
        for (const auto& sigma : Shuffle::all(n, m)) {
          for (const auto& tau : Shuffle::all(n + m, l)) {
            const auto lhs = hlf::oracle::lhs_positions(sigma, tau);
            int solutions = 0;
            std::string found;
            for (const auto& sp : Shuffle::all(n, m + l)) {
              for (const auto& tp : Shuffle::all(m, l)) {
                if (hlf::oracle::rhs_positions(sp, tp) == lhs) {
                  ++solutions;
                  found = sp.to_string() + "/" + tp.to_string();
                }
              }
            }
            ASSERT_EQ(solutions, 1);
            const auto p = shuffle_compose(sigma, tau);
            EXPECT_EQ(p.sigma_prime.to_string() + "/" + p.tau_prime.to_string(), found);
            ++cases;
          }
        }
      }
    }
  }
  EXPECT_GT(cases, 1000);
}

TEST(Element, Examples) {
  const CoordTower S({"s"}, K);
  const CoordTower T({"t"}, K);
  const CoordTower ST({"s", "t"}, K);
  const auto x = tensor_element(expand(rf("1+s"), S, 6), expand(rf("t^-1+1"), T, 6));
  EXPECT_TRUE(x.agrees_with(expand(rf("t^-1 + 1 + s/t + s"), ST, 6)));
  const auto geo = expand(rf("1+s+s^2+s^3"), S, 6);
  const CoordTower empty({}, K);
  EXPECT_TRUE(tensor_element(geo, NestedSeries::one(empty)).agrees_with(geo));
  EXPECT_THROW(tensor_element(expand(rf("s"), S, 3), expand(rf("1+s"), S, 3)), hlf::Error);
}

TEST(Element, ShuffledProductMatchesJointExpansion) {
  std::mt19937_64 rng(21);
  const CoordTower S({"s"}, K);
  const CoordTower T({"t"}, K);
  const CoordTower TS({"t", "s"}, K);
  for (int i = 0; i < 30; ++i) {
    const RatFun f = random_ratfun(rng, Q, {"s"});
    const RatFun g = random_ratfun(rng, Q, {"t"});
    const auto x = tensor_element(expand(f, S, 6), expand(g, T, 6), Shuffle::parse(1, 1, "RL"));
    EXPECT_EQ(x.tower(), TS);
    EXPECT_TRUE(x.agrees_with(expand(f * g, TS, 6))) << f << " " << g;
  }
}

TEST(Element, Associativity) {
  std::mt19937_64 rng(3);
  const CoordTower S({"s"}, K);
  const CoordTower T({"t"}, K);
  const CoordTower U({"u"}, K);
  const CoordTower STU({"s", "t", "u"}, K);
  for (int i = 0; i < 20; ++i) {
    const RatFun f = random_ratfun(rng, Q, {"s"});
    const RatFun g = random_ratfun(rng, Q, {"t"});
    const RatFun h = random_ratfun(rng, Q, {"u"});
    const auto a = expand(f, S, 5);
    const auto b = expand(g, T, 5);
    const auto c = expand(h, U, 5);
    const auto left = tensor_element(tensor_element(a, b), c);
    const auto right = tensor_element(a, tensor_element(b, c));
    const auto direct = expand(f * g * h, STU, 5);
    EXPECT_TRUE(left.agrees_with(right));
    EXPECT_TRUE(left.agrees_with(direct));
  }
}

TEST(Element, Bilinear) {
  std::mt19937_64 rng(9);
  const CoordTower S({"s"}, K);
  const CoordTower T({"t"}, K);
  for (int i = 0; i < 20; ++i) {
    const auto a = expand(random_ratfun(rng, Q, {"s"}), S, 6);
    const auto a2 = expand(random_ratfun(rng, Q, {"s"}), S, 6);
    const auto b = expand(random_ratfun(rng, Q, {"t"}), T, 6);
    EXPECT_TRUE(tensor_element(a + a2, b).agrees_with(tensor_element(a, b) + tensor_element(a2, b)));
  }
}

TEST(Lattice, IndexExample) {
  const CoordTower T({"t"}, K);
  EXPECT_EQ(index_map(expand(rf("t^3*(1+t)"), T, 10), Lattice{0}, Lattice{-1}), 3);
  EXPECT_EQ(index_map(NestedSeries::one(T), Lattice{2}, Lattice{-4}), 0);
}

TEST(Lattice, IndexPreconditions) {
  const CoordTower T({"t"}, K);
  try {
    index_map(expand(rf("t^-2"), T, 10), Lattice{0}, Lattice{1});
    FAIL();
  } catch (const hlf::Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("L1 = L(0) not in L2 = L(1)"), std::string::npos) << msg;
    EXPECT_NE(msg.find("f L1 = L(-2)"), std::string::npos) << msg;
  }
  EXPECT_THROW(index_map(expand(rf("t^-2"), T, 10), Lattice{0}, Lattice{-1}), hlf::Error);
}

TEST(Lattice, RandomUnitsGiveValuation) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> off(-3, 3);
  std::uniform_int_distribution<int> gap(0, 2);
  const CoordTower T({"t"}, K);
  for (int i = 0; i < 50; ++i) {
    const RatFun f = random_ratfun(rng, Q, {"t"});
    const long v = hlf::exactalg::ord_in_variable(f, "t");
    const auto x = expand(f, T, 12);
    for (int k = 0; k < 5; ++k) {
      const long a = off(rng);
      const long b = std::min(a, a + v) - gap(rng);
      EXPECT_EQ(index_map(x, Lattice{a}, Lattice{b}), v);
    }
  }
}

TEST(Lattice, IndexMultiplicative) {
  std::mt19937_64 rng(23);
  const CoordTower T({"t"}, K);
  for (int i = 0; i < 30; ++i) {
    const RatFun f = random_ratfun(rng, Q, {"t"});
    const RatFun g = random_ratfun(rng, Q, {"t"});
    const long a = 0;
    const auto xf = expand(f, T, 14);
    const auto xg = expand(g, T, 14);
    const auto xfg = expand(f * g, T, 14);
    const long b = std::min({a, a + xf.valuation(), a + xg.valuation(), a + xfg.valuation()}) - 1;
    EXPECT_EQ(index_map(xfg, Lattice{a}, Lattice{b}),
              index_map(xf, Lattice{a}, Lattice{b}) + index_map(xg, Lattice{a}, Lattice{b}));
  }
}

TEST(Lattice, IndexOverExtension) {
  const ExtField F = ExtField::parse(Q, "x^2 - 2");
  const CoordTower T({"t"}, F);
  const auto f = NestedSeries::parse(T, "[0,1]*t^-2 + 1*t^0 + O(t^8)");
  EXPECT_EQ(index_map(f, Lattice{3}, Lattice{0}), -2);
}

TEST(Lattice, ContainmentAndWitness) {
  EXPECT_TRUE(contains(Lattice{-1}, Lattice{2}));
  EXPECT_FALSE(contains(Lattice{2}, Lattice{-1}));
  EXPECT_EQ(lattice_sum(Lattice{1}, Lattice{4}), Lattice{1});
  EXPECT_EQ(quotient_dim(Lattice{-1}, Lattice{2}), 3);
  EXPECT_THROW(quotient_dim(Lattice{2}, Lattice{-1}), hlf::Error);
  std::vector<long> chain;
  for (long k = 0; k < 20; ++k) {
    chain.push_back(k);
    EXPECT_EQ(zero_intersection_witness(chain).codimension, k);
  }
}
