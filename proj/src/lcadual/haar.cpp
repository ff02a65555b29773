#include "hlf/lcadual/haar.hpp"

#include <cctype>

#include "hlf/error.hpp"
#include "hlf/milnork/symbol.hpp"

namespace hlf::lcadual {

namespace {

constexpr std::string_view kModule = "lcadual";
using exactalg::RatFun;

[[noreturn]] void parse_error(const std::string& msg) { fail(ErrorKind::Parse, kModule, "parse", msg); }

mpq_class rational(std::string_view t) {
  std::string s;
  for (char c : t) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) parse_error("empty number");
  try {
    mpq_class q(s);
    q.canonicalize();
    if (q.get_den() == 0) parse_error("zero denominator in '" + s + "'");
    return q;
  } catch (const std::invalid_argument&) {
    parse_error("bad number '" + s + "'");
  }
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::vector<mpq_class>> matrix_of(std::string_view s) {
  std::vector<std::vector<mpq_class>> m;
  for (const auto& row : split(s, ';')) {
    std::vector<mpq_class> r;
    for (const auto& x : split(row, ',')) r.push_back(rational(x));
    m.push_back(std::move(r));
  }
  for (const auto& r : m) {
    if (r.size() != m.size()) parse_error("matrix must be square");
  }
  return m;
}

mpq_class determinant(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

mpq_class pow_q(long p, long e) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? mpq_class(1, z) : mpq_class(z);
}

mpq_class nonzero(const mpq_class& a) {
  if (a == 0) fail(ErrorKind::Precondition, kModule, "haar_modulus", "scalar 0 is not invertible");
  return a;
}

mpq_class constant_of(const milnork::Entry& e) {
  const RatFun& r = std::get<RatFun>(e);
  if (!r.is_constant()) fail(ErrorKind::Invariant, kModule, "tame_residue", "residue is not a constant");
  return r.num().constant_value().to_rational() / r.den().constant_value().to_rational();
}

std::string the_variable(const RatFun& f, const RatFun& g) {
  auto vs = f.vars();
  for (const auto& v : g.vars()) {
    if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
  }
  if (vs.size() > 1) fail(ErrorKind::Precondition, kModule, "haar_pairing", "units must be functions of one variable t");
  return vs.empty() ? "t" : vs[0];
}

}  // namespace

Automorphism Automorphism::real_scalar(const mpq_class& a) {
  Automorphism g;
  g.family = Family::Real;
  g.matrix = {{a}};
  return g;
}

Automorphism Automorphism::complex_scalar(const mpq_class& re, const mpq_class& im) {
  Automorphism g;
  g.family = Family::Complex;
  g.re = re;
  g.im = im;
  return g;
}

Automorphism Automorphism::padic_scalar(long p, const mpq_class& a) {
  if (!is_prime(p)) fail(ErrorKind::Precondition, kModule, "haar_modulus", std::to_string(p) + " is not a prime");
  Automorphism g;
  g.family = Family::Padic;
  g.p = p;
  g.scalar = a;
  return g;
}

Automorphism Automorphism::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) parse_error("expected FAMILY:VALUE, got '" + std::string(text) + "'");
  const std::string fam(text.substr(0, colon));
  const std::string_view val = text.substr(colon + 1);
  Automorphism g;
  if (fam == "R" || fam.rfind("R^", 0) == 0) {
    g.family = Family::Real;
    g.matrix = matrix_of(val);
    if (fam.size() > 2 && std::to_string(g.matrix.size()) != fam.substr(2)) parse_error("matrix size differs from " + fam);
  } else if (fam == "C") {
    const auto parts = split(val, ',');
    if (parts.size() != 2) parse_error("complex scalar is re,im");
    g = complex_scalar(rational(parts[0]), rational(parts[1]));
  } else if (fam.rfind("Qp(", 0) == 0 && fam.back() == ')') {
    long p = 0;
    try {
      p = std::stol(fam.substr(3, fam.size() - 4));
    } catch (const std::exception&) {
      parse_error("bad prime in '" + fam + "'");
    }
    if (!is_prime(p)) parse_error(std::to_string(p) + " is not a prime");
    g = padic_scalar(p, rational(val));
  } else if (fam.rfind("Fin(", 0) == 0 && fam.back() == ')') {
    std::vector<long> orders;
    for (const auto& x : split(fam.substr(4, fam.size() - 5), ',')) {
      try {
        orders.push_back(std::stol(x));
      } catch (const std::exception&) {
        parse_error("bad cyclic order in '" + fam + "'");
      }
    }
    g.family = Family::Finite;
    g.group = FinAb::from_cyclic(orders);
    g.matrix = matrix_of(val);
    if (g.matrix.size() != g.group.factors().size()) parse_error("matrix size differs from the number of invariant factors");
  } else if (fam == "Z" || fam == "T") {
    g.family = fam == "Z" ? Family::Integers : Family::Circle;
    g.scalar = rational(val);
  } else {
    parse_error("unknown automorphism family '" + fam + "'");
  }
  return g;
}

std::string Automorphism::to_string() const {
  const auto mat = [&] {
    std::string s;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      s += i ? ";" : "";
      for (std::size_t j = 0; j < matrix[i].size(); ++j) s += (j ? "," : "") + matrix[i][j].get_str();
    }
    return s;
  };
  switch (family) {
    case Family::Real:
      return (matrix.size() == 1 ? std::string("R") : "R^" + std::to_string(matrix.size())) + ":" + mat();
    case Family::Complex:
      return "C:" + re.get_str() + "," + im.get_str();
    case Family::Padic:
      return "Qp(" + std::to_string(p) + "):" + scalar.get_str();
    case Family::Finite: {
      std::string s = "Fin(";
      for (std::size_t i = 0; i < group.factors().size(); ++i) s += (i ? "," : "") + std::to_string(group.factors()[i]);
      return s + "):" + mat();
    }
    case Family::Integers:
      return "Z:" + scalar.get_str();
    case Family::Circle:
      return "T:" + scalar.get_str();
  }
  return "?";
}

long padic_valuation(const mpq_class& a, long p) {
  if (a == 0) fail(ErrorKind::Precondition, kModule, "padic_valuation", "valuation of 0");
  long v = 0;
  mpz_class n = a.get_num();
  mpz_class d = a.get_den();
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

mpq_class haar_modulus(const Automorphism& g) {
  using F = Automorphism::Family;
  switch (g.family) {
    case F::Real: {
      const mpq_class d = determinant(g.matrix);
      if (d == 0) fail(ErrorKind::Precondition, kModule, "haar_modulus", "matrix is not invertible");
      return abs(d);
    }
    case F::Complex: {
      const mpq_class n = g.re * g.re + g.im * g.im;
      if (n == 0) fail(ErrorKind::Precondition, kModule, "haar_modulus", "scalar 0 is not invertible");
      return n;
    }
    case F::Padic:
      return pow_q(g.p, -padic_valuation(nonzero(g.scalar), g.p));
    case F::Integers:
    case F::Circle:
      if (g.scalar != 1 && g.scalar != -1) {
        fail(ErrorKind::Precondition, kModule, "haar_modulus", "only +-1 are automorphisms of " + std::string(g.family == F::Integers ? "Z" : "T"));
      }
      return 1;
    case F::Finite: {
      const auto& d = g.group.factors();
      const std::size_t k = d.size();
      std::vector<std::vector<long>> cols(k, std::vector<long>(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (g.matrix[i][j].get_den() != 1) fail(ErrorKind::Precondition, kModule, "haar_modulus", "entries must be integers");
          cols[j][i] = g.matrix[i][j].get_num().get_si();
        }
      }
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
          if ((d[j] * cols[j][i]) % d[i] != 0) {
            fail(ErrorKind::Precondition, kModule, "haar_modulus", "generator images do not respect the relations");
          }
        }
      }
      std::vector<char> hit(static_cast<std::size_t>(g.group.order()), 0);
      for (const auto& a : g.group.elements()) {
        std::vector<long> img(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
          for (std::size_t i = 0; i < k; ++i) img[i] += a[j] * cols[j][i];
        }
        img = g.group.reduce(img);
        long idx = 0;
        for (std::size_t i = 0; i < k; ++i) idx = idx * d[i] + img[i];
        if (hit[static_cast<std::size_t>(idx)]) fail(ErrorKind::Precondition, kModule, "haar_modulus", "map is not injective");
        hit[static_cast<std::size_t>(idx)] = 1;
      }
      return 1;
    }
  }
  return 1;
}

Place Place::parse(std::string_view text) {
  if (text == "R") return {Kind::Real, 0};
  if (text == "C") return {Kind::Complex, 0};
  const std::string s(text);
  if (s.rfind("Qp(", 0) == 0 && s.back() == ')') {
    long p = 0;
    try {
      p = std::stol(s.substr(3, s.size() - 4));
    } catch (const std::exception&) {
      parse_error("bad place '" + s + "'");
    }
    if (!is_prime(p)) parse_error(std::to_string(p) + " is not a prime");
    return {Kind::Padic, p};
  }
  parse_error("unknown place '" + s + "' (R, C or Qp(p))");
}

std::string Place::to_string() const {
  switch (kind) {
    case Kind::Real:
      return "R";
    case Kind::Complex:
      return "C";
    case Kind::Padic:
      return "Qp(" + std::to_string(p) + ")";
  }
  return "?";
}

mpq_class tame_residue(const RatFun& f, const RatFun& g) {
  if (f.is_zero() || g.is_zero()) fail(ErrorKind::Precondition, kModule, "haar_pairing", "units must be nonzero");
  if (!f.field().is_rational()) fail(ErrorKind::Precondition, kModule, "haar_pairing", "units must have rational coefficients");
  const auto ref = milnork::ValuationRef::variable(the_variable(f, g));
  const mpq_class r = constant_of(milnork::tame_symbol(milnork::Entry(f), milnork::Entry(g), ref));
  if (r == 0) fail(ErrorKind::Precondition, kModule, "haar_pairing", "tame residue is zero");
  return r;
}

mpq_class haar_pairing(const RatFun& f, const RatFun& g, const Place& place) {
  const mpq_class r = tame_residue(f, g);
  switch (place.kind) {
    case Place::Kind::Real:
      return abs(r);
    case Place::Kind::Complex:
      return r * r;
    case Place::Kind::Padic:
      return pow_q(place.p, -padic_valuation(r, place.p));
  }
  return 1;
}

AdelicPairing adelic_pairing(const RatFun& f, const RatFun& g) {
  AdelicPairing out;
  out.residue = tame_residue(f, g);
  out.places.emplace_back("R", haar_pairing(f, g, {Place::Kind::Real, 0}));
  std::vector<long> primes;
  const auto collect = [&](const mpz_class& z) {
    if (!z.fits_slong_p()) fail(ErrorKind::Precondition, kModule, "adelic_pairing", "residue too large to factor");
    for (auto [p, e] : factor_integer(std::abs(z.get_si()))) primes.push_back(p);
  };
  collect(out.residue.get_num());
  collect(out.residue.get_den());
  std::sort(primes.begin(), primes.end());
  out.product = out.places.front().second;
  for (long p : primes) {
    const mpq_class v = pow_q(p, -padic_valuation(out.residue, p));
    out.places.emplace_back("Qp(" + std::to_string(p) + ")", v);
    out.product *= v;
  }
  return out;
}

VanishingReport pairing_vanishing_witness(std::string_view base) {
  VanishingReport rep;
  rep.base = std::string(base);
  Automorphism::Family fam;
  if (base == "Z") {
    fam = Automorphism::Family::Integers;
    rep.reason = "discrete base: every automorphism preserves counting measure, so the K1 target is trivial";
  } else if (base == "T") {
    fam = Automorphism::Family::Circle;
    rep.reason = "compact base: every automorphism preserves the normalized Haar measure, so the K1 target is trivial";
  } else {
    fail(ErrorKind::Precondition, kModule, "pairing_vanishing_witness", "base must be Z or T");
  }
  const exactalg::Field Q = exactalg::Field::rationals();
  for (long sf : {1L, -1L}) {
    for (long sg : {1L, -1L}) {
      for (long a = -2; a <= 2; ++a) {
        for (long b = -2; b <= 2; ++b) {
          const RatFun f = RatFun::constant(exactalg::Scalar(Q, sf)) * RatFun::variable(Q, "t").pow(a);
          const RatFun g = RatFun::constant(exactalg::Scalar(Q, sg)) * RatFun::variable(Q, "t").pow(b);
          Automorphism gamma;
          gamma.family = fam;
          gamma.scalar = tame_residue(f, g);
          const mpq_class v = haar_modulus(gamma);
          rep.rows.push_back({f.to_string(), g.to_string(), v});
          if (v != 1) rep.constant_one = false;
        }
      }
    }
  }
  return rep;
}

}  // namespace hlf::lcadual
