#pragma once

#include <string>

#include "hlf/exactalg/ratfun.hpp"

namespace hlf::oracle {

// (-1)^(ab) f^b g^(-a) evaluated at var = 0, straight from the formula.
inline exactalg::RatFun tame_direct(const exactalg::RatFun& f, const exactalg::RatFun& g, const std::string& var) {
  using exactalg::RatFun;
  using exactalg::Scalar;
  const long a = exactalg::ord_in_variable(f, var);
  const long b = exactalg::ord_in_variable(g, var);
  RatFun h = f.pow(b) / g.pow(a);
  if ((a * b) % 2 != 0) h = -h;
  return h.substitute(var, Scalar::zero(f.field()));
}

}  // namespace hlf::oracle
