#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hlf/exactalg/ratfun.hpp"
#include "hlf/lcadual/finab.hpp"

namespace hlf::lcadual {

struct Automorphism {
  enum class Family { Real, Complex, Padic, Finite, Integers, Circle };
  Family family = Family::Real;
  std::vector<std::vector<mpq_class>> matrix;  // Real: n x n; Finite: images of generators as columns
  mpq_class re, im;                            // Complex
  mpq_class scalar;                            // Padic, Integers, Circle
  long p = 0;                                  // Padic
  FinAb group;                                 // Finite

  static Automorphism real_scalar(const mpq_class& a);
  static Automorphism complex_scalar(const mpq_class& re, const mpq_class& im);
  static Automorphism padic_scalar(long p, const mpq_class& a);

  // "R:2", "R^2:1,2;3,4", "C:1,1" (re,im), "Qp(2):6/5", "Fin(2,4):1,0;0,3", "Z:-1", "T:-1".
  static Automorphism parse(std::string_view text);
  std::string to_string() const;
};

long padic_valuation(const mpq_class& a, long p);

// c_gamma with (mu o gamma)(U) = c_gamma mu(U); exact.
mpq_class haar_modulus(const Automorphism& g);

struct Place {
  enum class Kind { Real, Complex, Padic };
  Kind kind = Kind::Real;
  long p = 0;

  static Place parse(std::string_view text);  // "R", "C", "Qp(5)"
  std::string to_string() const;
};

// |f^v(g) / g^v(f) (0)| under the place's modulus, for units of Q((t)) given
// as rational functions of one variable.
mpq_class haar_pairing(const exactalg::RatFun& f, const exactalg::RatFun& g, const Place& place);
// Rational tame residue (up to sign) that the pairing measures.
mpq_class tame_residue(const exactalg::RatFun& f, const exactalg::RatFun& g);

struct AdelicPairing {
  mpq_class residue;
  std::vector<std::pair<std::string, mpq_class>> places;  // R, then primes dividing the residue
  mpq_class product;
};

AdelicPairing adelic_pairing(const exactalg::RatFun& f, const exactalg::RatFun& g);

struct VanishingReport {
  std::string base;  // "Z" or "T"
  std::string reason;
  struct Row {
    std::string f, g;
    mpq_class value;
  };
  std::vector<Row> rows;
  bool constant_one = true;
};

// The pairing on Z((t)) or T((t)) over monomial units +-t^n.
VanishingReport pairing_vanishing_witness(std::string_view base);

}  // namespace hlf::lcadual
