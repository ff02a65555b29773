#include "hlf/exactalg/ratfun.hpp"

#include <algorithm>
#include <cctype>

#include "hlf/error.hpp"

namespace hlf::exactalg {

namespace {

constexpr std::string_view kModule = "exactalg";

// Sum c_k p^k q^(deg-k) for P = sum c_k var^k, together with deg.
std::pair<MultiPoly, int> homogenized(const MultiPoly& P, const std::string& var, const MultiPoly& p,
                                      const MultiPoly& q) {
  const int deg = P.degree_in(var);
  MultiPoly acc(P.field());
  for (const auto& [k, c] : P.coeffs_in(var)) {
    acc = acc + c * p.pow(static_cast<unsigned>(k)) * q.pow(static_cast<unsigned>(deg - k));
  }
  return {acc, deg};
}

class Parser {
 public:
  Parser(Field f, std::string_view text) : f_(f), s_(text) {}

  RatFun run() {
    RatFun r = expr();
    skip();
    if (i_ != s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Parse, kModule, "RatFun.parse",
         msg + " at offset " + std::to_string(i_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  RatFun expr() {
    RatFun acc = term();
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }
  RatFun term() {
    RatFun acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        RatFun d = unary();
        if (d.is_zero()) error("division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }
  RatFun unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RatFun power() {
    RatFun base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_ || i_ - start > 6) error("expected exponent");
    long e = std::stol(std::string(s_.substr(start, i_ - start)));
    if (neg && base.is_zero()) error("negative power of zero");
    return base.pow(neg ? -e : e);
  }
  RatFun atom() {
    skip();
    if (i_ >= s_.size()) error("unexpected end of input");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      RatFun r = expr();
      if (!eat(')')) error("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return RatFun::constant(Scalar(f_, mpq_class(mpz_class(std::string(s_.substr(start, i_ - start))))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return RatFun::variable(f_, std::string(s_.substr(start, i_ - start)));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  Field f_;
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

RatFun::RatFun(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(num_.field(), 1)) {}

RatFun::RatFun(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.field() != den_.field()) fail(ErrorKind::Precondition, kModule, "RatFun", "field mismatch");
  canonicalize();
}

void RatFun::canonicalize() {
  if (den_.is_zero()) fail(ErrorKind::Precondition, kModule, "RatFun", "zero denominator");
  const Field f = num_.field();
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(f, 1);
    return;
  }
  // common monomial content
  {
    const auto all = merge_vars(num_.vars(), den_.vars());
    Exponents m(all.size(), 0);
    for (std::size_t i = 0; i < all.size(); ++i) m[i] = std::min(num_.low_degree_in(all[i]), den_.low_degree_in(all[i]));
    if (std::any_of(m.begin(), m.end(), [](int x) { return x > 0; })) {
      num_ = num_.divide_monomial(all, m);
      den_ = den_.divide_monomial(all, m);
    }
  }
  if (!den_.is_constant()) {
    if (auto q = divide_exact(num_, den_)) {
      num_ = std::move(*q);
      den_ = MultiPoly::constant(f, 1);
    } else if (!num_.is_constant()) {
      if (auto q2 = divide_exact(den_, num_)) {
        num_ = MultiPoly::constant(f, 1);
        den_ = std::move(*q2);
      }
    }
  }
  const auto all = merge_vars(num_.vars(), den_.vars());
  if (all.size() == 1 && !den_.is_constant() && !num_.is_constant()) {
    const UPoly g = gcd(num_.to_univariate(all[0]), den_.to_univariate(all[0]));
    if (g.degree() > 0) {
      const MultiPoly gp = MultiPoly::from_univariate(g, all[0]);
      num_ = *divide_exact(num_, gp);
      den_ = *divide_exact(den_, gp);
    }
  }
  const Scalar lead_inv = den_.leading_term().second.inv();
  if (!lead_inv.is_one()) {
    num_ = num_.scaled(lead_inv);
    den_ = den_.scaled(lead_inv);
  }
}

Scalar RatFun::constant_value() const {
  if (!is_constant()) fail(ErrorKind::Precondition, kModule, "constant_value", "not a constant: " + to_string());
  return num_.constant_value() / den_.constant_value();
}

RatFun RatFun::operator-() const { return RatFun(-num_, den_); }

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num_ * b.num_, a.den_ * b.den_); }

RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inv(); }

bool operator==(const RatFun& a, const RatFun& b) {
  if (a.field() != b.field()) return false;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RatFun RatFun::inv() const {
  if (is_zero()) fail(ErrorKind::Precondition, kModule, "inv", "inverse of zero rational function");
  return RatFun(den_, num_);
}

RatFun RatFun::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  return RatFun(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RatFun RatFun::substitute(const std::string& var, const RatFun& value) const {
  if (value.field() != field()) fail(ErrorKind::Precondition, kModule, "substitute", "field mismatch");
  if (!num_.has_var(var) && !den_.has_var(var)) return *this;
  auto [nh, nd] = homogenized(num_, var, value.num_, value.den_);
  auto [dh, dd] = homogenized(den_, var, value.num_, value.den_);
  if (dh.is_zero()) {
    fail(ErrorKind::Precondition, kModule, "substitute",
         "denominator of " + to_string() + " vanishes at " + var + " = " + value.to_string());
  }
  if (nd >= dd) return RatFun(nh, dh * value.den_.pow(static_cast<unsigned>(nd - dd)));
  return RatFun(nh * value.den_.pow(static_cast<unsigned>(dd - nd)), dh);
}

RatFun RatFun::substitute(const std::string& var, const Scalar& value) const {
  return substitute(var, constant(value));
}

RatFun RatFun::substitute_all(const std::vector<std::pair<std::string, RatFun>>& subs) const {
  std::map<std::string, std::string> fresh;
  for (const auto& [v, val] : subs) fresh[v] = "__sub_" + v;
  RatFun cur(num_.rename(fresh), den_.rename(fresh));
  for (const auto& [v, val] : subs) cur = cur.substitute(fresh[v], val);
  return cur;
}

std::string RatFun::to_string() const {
  if (den_.is_constant() && den_.constant_value().is_one()) return num_.to_string();
  auto wrap = [](const MultiPoly& p, bool is_den) {
    const std::string s = p.to_string();
    const bool plain = p.terms().size() == 1 && s.find('/') == std::string::npos && s.front() != '-' &&
                       (!is_den || s.find('*') == std::string::npos);
    return plain ? s : "(" + s + ")";
  };
  return wrap(num_, false) + "/" + wrap(den_, true);
}

RatFun RatFun::parse(Field f, std::string_view text) { return Parser(f, text).run(); }

RatFun ratfun_arith(RatOp op, const RatFun& a, const RatFun* b) {
  switch (op) {
    case RatOp::Neg:
      return -a;
    case RatOp::Inv:
      if (a.is_zero()) fail(ErrorKind::Precondition, kModule, "ratfun_arith", "inv: operand a is zero");
      return a.inv();
    case RatOp::Add:
    case RatOp::Mul:
      if (b == nullptr) fail(ErrorKind::Precondition, kModule, "ratfun_arith", "missing operand b");
      return op == RatOp::Add ? a + *b : a * *b;
  }
  fail(ErrorKind::Invariant, kModule, "ratfun_arith", "unknown op");
}

int ord_in_variable(const RatFun& f, const std::string& var) {
  if (f.is_zero()) fail(ErrorKind::Precondition, kModule, "ord_in_variable", "valuation of zero undefined");
  return f.num().low_degree_in(var) - f.den().low_degree_in(var);
}

}  // namespace hlf::exactalg
