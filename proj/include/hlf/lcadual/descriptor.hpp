#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "hlf/lcadual/finab.hpp"

namespace hlf::lcadual {

struct Atom {
  enum class Kind { Z, T, R, Zp, Qp, Pruefer, Fin };
  Kind kind = Kind::Z;
  long p = 0;  // Zp, Qp, Pruefer
  FinAb group;  // Fin

  std::string to_string() const;
  friend bool operator==(const Atom&, const Atom&) = default;
};

Atom dual(const Atom& a);

enum class Wrap { Ind, Pro, Tate };

// Wrappers outermost first around a formal sum of atoms.
struct LcaDescriptor {
  std::vector<Wrap> wraps;
  std::vector<Atom> word;

  // "Pro(Ind(Z + Fin(2,4)))", "Tate(R + Qp(3))"; "0" for the empty sum.
  static LcaDescriptor parse(std::string_view text);
  std::string to_string() const;
  // Primes valid and atom multiplicities finite.
  bool valid() const;
  friend bool operator==(const LcaDescriptor&, const LcaDescriptor&) = default;
};

LcaDescriptor descriptor_dual(const LcaDescriptor& D);

// Classical atom properties.
bool is_discrete(const Atom& a);
bool is_compact(const Atom& a);
bool is_p_torsion(const Atom& a, long p);  // topological p-torsion
bool is_metrizable(const Atom& a);
bool is_sigma_compact(const Atom& a);
bool is_connected(const Atom& a);
bool is_torsion_free(const Atom& a);  // no nonzero compact elements

// One row "left <-> right" of the exchange table: an object with the
// left property under the given wrappers has a dual with the right property
// under the dual wrappers, and conversely.
struct ExchangeRow {
  std::string left;
  std::string right;
  std::vector<Wrap> wraps;
  std::function<bool(const Atom&)> left_atom;
  std::function<bool(const Atom&)> right_atom;
};

std::vector<ExchangeRow> exchange_table();
bool has_property(const LcaDescriptor& D, const std::vector<Wrap>& wraps, const std::function<bool(const Atom&)>& pred);
// P(D) iff Q(dual D) and Q(D) iff P(dual D).
bool check_row(const ExchangeRow& row, const LcaDescriptor& D);
// The row restricted to single atoms, over a fixed catalogue of atoms.
bool check_row_atomwise(const ExchangeRow& row);
std::vector<Atom> atom_catalogue();

}  // namespace hlf::lcadual
