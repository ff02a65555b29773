#pragma once

#include <map>
#include <numeric>
#include <vector>

namespace hlf::oracle {

// A finite abelian group presented as Z/n_1 + ... + Z/n_k (any n_i >= 1).
struct CyclicProduct {
  std::vector<long> n;

  long order() const {
    long s = 1;
    for (long x : n) s *= x;
    return s;
  }
  std::vector<std::vector<long>> elements() const {
    std::vector<std::vector<long>> out{{}};
    for (long m : n) {
      std::vector<std::vector<long>> next;
      for (const auto& e : out)
        for (long x = 0; x < m; ++x) {
          auto f = e;
          f.push_back(x);
          next.push_back(f);
        }
      out = next;
    }
    return out;
  }
  long element_order(const std::vector<long>& a) const {
    long o = 1;
    for (std::size_t i = 0; i < n.size(); ++i) o = std::lcm(o, n[i] / std::gcd(a[i], n[i]));
    return o;
  }
  // Number of elements of each order; a complete isomorphism invariant.
  std::map<long, long> order_statistics() const {
    std::map<long, long> s;
    for (const auto& a : elements()) ++s[element_order(a)];
    return s;
  }
};

// All homomorphisms to Q/Z, as the values (numerator over N) on the generators.
// A character sends generator i to k/N with n_i k = 0 mod N.
struct CharacterTable {
  long N = 1;
  std::vector<std::vector<long>> chars;
};

inline CharacterTable enumerate_characters(const CyclicProduct& G) {
  CharacterTable t;
  for (long m : G.n) t.N = std::lcm(t.N, m);
  t.chars = {{}};
  for (long m : G.n) {
    std::vector<std::vector<long>> next;
    for (const auto& c : t.chars)
      for (long k = 0; k < t.N; ++k) {
        if ((m * k) % t.N != 0) continue;
        auto d = c;
        d.push_back(k);
        next.push_back(d);
      }
    t.chars = next;
  }
  return t;
}

inline long evaluate(const CharacterTable& t, const std::vector<long>& chi, const std::vector<long>& a) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = (s + chi[i] * a[i]) % t.N;
  return s;
}

// |G^| = |G| and the evaluation map into the double dual is injective.
inline bool double_dual_bijective(const CyclicProduct& G) {
  const auto t = enumerate_characters(G);
  if (static_cast<long>(t.chars.size()) != G.order()) return false;
  std::map<std::vector<long>, int> images;
  for (const auto& a : G.elements()) {
    std::vector<long> ev;
    for (const auto& chi : t.chars) ev.push_back(evaluate(t, chi, a));
    if (++images[ev] > 1) return false;
  }
  return true;
}

}  // namespace hlf::oracle
