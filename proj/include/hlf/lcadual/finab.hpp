#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace hlf::lcadual {

// Finite abelian group Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k, d_i >= 2.
class FinAb {
 public:
  FinAb() = default;
  // Any list of cyclic orders (1s allowed); brought to invariant factors.
  static FinAb from_cyclic(const std::vector<long>& orders);

  const std::vector<long>& factors() const { return d_; }
  long order() const;
  bool is_trivial() const { return d_.empty(); }
  // Every prime dividing |G| equals p.
  bool is_p_group(long p) const;
  // All elements as coordinate vectors, lexicographic.
  std::vector<std::vector<long>> elements(long limit = 1 << 16) const;
  std::vector<long> reduce(std::vector<long> a) const;
  std::vector<long> add(const std::vector<long>& a, const std::vector<long>& b) const;

  std::string to_string() const;  // "Z/2 + Z/4", "0"
  friend bool operator==(const FinAb&, const FinAb&) = default;

 private:
  std::vector<long> d_;
};

// Character b of G (in the canonical self-duality) evaluated at a, in [0, 1).
mpq_class character_value(const FinAb& G, const std::vector<long>& a, const std::vector<long>& b);

struct PontryaginDual {
  FinAb dual;
  std::vector<std::vector<long>> elements;    // rows of the table, and characters by the same index
  std::vector<std::vector<mpq_class>> table;  // table[i][j] = chi_j(g_i)
};

// Table omitted (empty) when |G| exceeds table_limit.
PontryaginDual pontryagin_dual(const FinAb& G, long table_limit = 256);
// Evaluation G -> dual of the dual, as coordinates of the double dual.
std::vector<long> evaluation(const FinAb& G, const std::vector<long>& a);
// Evaluation is injective (hence bijective, by order) on G; checked by enumeration.
bool double_dual_is_iso(const FinAb& G);

std::vector<std::pair<long, int>> factor_integer(long n);
bool is_prime(long p);

}  // namespace hlf::lcadual
