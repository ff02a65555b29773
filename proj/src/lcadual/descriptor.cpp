#include "hlf/lcadual/descriptor.hpp"

#include <cctype>

#include "hlf/error.hpp"

namespace hlf::lcadual {

namespace {

constexpr std::string_view kModule = "lcadual";

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  LcaDescriptor descriptor() {
    LcaDescriptor D;
    for (;;) {
      skip();
      const std::size_t save = pos_;
      const std::string id = ident();
      skip();
      const bool wrap = (id == "Ind" || id == "Pro" || id == "Tate") && peek() == '(';
      if (!wrap) {
        pos_ = save;
        break;
      }
      ++pos_;
      D.wraps.push_back(id == "Ind" ? Wrap::Ind : id == "Pro" ? Wrap::Pro : Wrap::Tate);
    }
    D.word = word();
    for (std::size_t i = 0; i < D.wraps.size(); ++i) expect(')');
    return D;
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) error("trailing text");
  }

 private:
  std::vector<Atom> word() {
    std::vector<Atom> out;
    skip();
    if (peek() == '0') {
      ++pos_;
      return out;
    }
    out.push_back(atom());
    for (;;) {
      skip();
      if (peek() == '+') {
        ++pos_;
      } else if (s_.substr(pos_, 3) == "⊕") {
        pos_ += 3;
      } else {
        break;
      }
      out.push_back(atom());
    }
    return out;
  }

  Atom atom() {
    skip();
    const std::string id = ident();
    Atom a;
    if (id == "Z") {
      a.kind = Atom::Kind::Z;
    } else if (id == "T") {
      a.kind = Atom::Kind::T;
    } else if (id == "R") {
      a.kind = Atom::Kind::R;
    } else if (id == "Zp" || id == "Qp" || id == "Pruefer") {
      a.kind = id == "Zp" ? Atom::Kind::Zp : id == "Qp" ? Atom::Kind::Qp : Atom::Kind::Pruefer;
      expect('(');
      a.p = number();
      if (!is_prime(a.p)) error(std::to_string(a.p) + " is not a prime");
      expect(')');
    } else if (id == "Fin") {
      a.kind = Atom::Kind::Fin;
      expect('(');
      std::vector<long> orders;
      skip();
      if (peek() != ')') {
        orders.push_back(number());
        for (skip(); peek() == ','; skip()) {
          ++pos_;
          orders.push_back(number());
        }
      }
      expect(')');
      a.group = FinAb::from_cyclic(orders);
    } else {
      error(id.empty() ? "expected an atom" : "unknown atom '" + id + "'");
    }
    return a;
  }

  std::string ident() {
    const std::size_t b = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  long number() {
    skip();
    const std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_ || pos_ - b > 12) error("expected a positive integer");
    return std::stol(std::string(s_.substr(b, pos_ - b)));
  }

  void expect(char c) {
    skip();
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Parse, kModule, "descriptor",
         msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Atom::to_string() const {
  switch (kind) {
    case Kind::Z:
      return "Z";
    case Kind::T:
      return "T";
    case Kind::R:
      return "R";
    case Kind::Zp:
      return "Zp(" + std::to_string(p) + ")";
    case Kind::Qp:
      return "Qp(" + std::to_string(p) + ")";
    case Kind::Pruefer:
      return "Pruefer(" + std::to_string(p) + ")";
    case Kind::Fin: {
      std::string s = "Fin(";
      const auto& d = group.factors();
      for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
      return s + ")";
    }
  }
  return "?";
}

Atom dual(const Atom& a) {
  Atom b = a;
  switch (a.kind) {
    case Atom::Kind::Z:
      b.kind = Atom::Kind::T;
      break;
    case Atom::Kind::T:
      b.kind = Atom::Kind::Z;
      break;
    case Atom::Kind::Zp:
      b.kind = Atom::Kind::Pruefer;
      break;
    case Atom::Kind::Pruefer:
      b.kind = Atom::Kind::Zp;
      break;
    default:
      break;  // R, Qp, Fin are self-dual
  }
  return b;
}

LcaDescriptor LcaDescriptor::parse(std::string_view text) {
  Parser p(text);
  LcaDescriptor D = p.descriptor();
  p.finish();
  return D;
}

std::string LcaDescriptor::to_string() const {
  std::string inner;
  for (std::size_t i = 0; i < word.size(); ++i) inner += (i ? " + " : "") + word[i].to_string();
  if (word.empty()) inner = "0";
  for (auto it = wraps.rbegin(); it != wraps.rend(); ++it) {
    const char* w = *it == Wrap::Ind ? "Ind" : *it == Wrap::Pro ? "Pro" : "Tate";
    inner = std::string(w) + "(" + inner + ")";
  }
  return inner;
}

bool LcaDescriptor::valid() const {
  for (const auto& a : word) {
    if ((a.kind == Atom::Kind::Zp || a.kind == Atom::Kind::Qp || a.kind == Atom::Kind::Pruefer) && !is_prime(a.p)) return false;
  }
  return true;
}

LcaDescriptor descriptor_dual(const LcaDescriptor& D) {
  LcaDescriptor out;
  for (Wrap w : D.wraps) out.wraps.push_back(w == Wrap::Ind ? Wrap::Pro : w == Wrap::Pro ? Wrap::Ind : Wrap::Tate);
  for (const auto& a : D.word) out.word.push_back(dual(a));
  return out;
}

bool is_discrete(const Atom& a) {
  return a.kind == Atom::Kind::Z || a.kind == Atom::Kind::Pruefer || a.kind == Atom::Kind::Fin;
}

bool is_compact(const Atom& a) { return a.kind == Atom::Kind::T || a.kind == Atom::Kind::Zp || a.kind == Atom::Kind::Fin; }

bool is_p_torsion(const Atom& a, long p) {
  switch (a.kind) {
    case Atom::Kind::Zp:
    case Atom::Kind::Qp:
    case Atom::Kind::Pruefer:
      return a.p == p;
    case Atom::Kind::Fin:
      return a.group.is_p_group(p);
    default:
      return false;
  }
}

bool is_metrizable(const Atom&) { return true; }
bool is_sigma_compact(const Atom&) { return true; }

bool is_connected(const Atom& a) {
  return a.kind == Atom::Kind::T || a.kind == Atom::Kind::R || (a.kind == Atom::Kind::Fin && a.group.is_trivial());
}

bool is_torsion_free(const Atom& a) {
  return a.kind == Atom::Kind::Z || a.kind == Atom::Kind::R || (a.kind == Atom::Kind::Fin && a.group.is_trivial());
}

std::vector<ExchangeRow> exchange_table() {
  std::vector<ExchangeRow> rows;
  const auto add_pair = [&](const std::string& l, const std::string& r, std::function<bool(const Atom&)> pl,
                            std::function<bool(const Atom&)> pr) {
    rows.push_back({l, r, {}, pl, pr});
  };
  add_pair("discrete", "compact", is_discrete, is_compact);
  for (long p : {2L, 3L, 5L}) {
    const auto pt = [p](const Atom& a) { return is_p_torsion(a, p); };
    add_pair(std::to_string(p) + "-torsion", std::to_string(p) + "-torsion", pt, pt);
  }
  add_pair("metrizable", "countable at infinity", is_metrizable, is_sigma_compact);
  add_pair("connected", "torsion-free", is_connected, is_torsion_free);
  rows.push_back({"pro-discrete", "ind-compact", {Wrap::Pro}, is_discrete, is_compact});
  for (long p : {2L, 3L, 5L}) {
    const auto pt = [p](const Atom& a) { return is_p_torsion(a, p); };
    rows.push_back({"pro-" + std::to_string(p) + "-torsion", "ind-" + std::to_string(p) + "-torsion", {Wrap::Pro}, pt, pt});
  }
  rows.push_back({"Tate-metrizable", "Tate-countable", {Wrap::Tate}, is_metrizable, is_sigma_compact});
  rows.push_back({"Tate-connected", "Tate-torsion-free", {Wrap::Tate}, is_connected, is_torsion_free});
  return rows;
}

bool has_property(const LcaDescriptor& D, const std::vector<Wrap>& wraps, const std::function<bool(const Atom&)>& pred) {
  if (D.wraps != wraps) return false;
  for (const auto& a : D.word) {
    if (!pred(a)) return false;
  }
  return true;
}

bool check_row(const ExchangeRow& row, const LcaDescriptor& D) {
  LcaDescriptor pattern;
  pattern.wraps = row.wraps;
  const auto dual_wraps = descriptor_dual(pattern).wraps;
  const LcaDescriptor Dd = descriptor_dual(D);
  return has_property(D, row.wraps, row.left_atom) == has_property(Dd, dual_wraps, row.right_atom) &&
         has_property(D, dual_wraps, row.right_atom) == has_property(Dd, row.wraps, row.left_atom);
}

std::vector<Atom> atom_catalogue() {
  std::vector<Atom> out{{Atom::Kind::Z, 0, {}}, {Atom::Kind::T, 0, {}}, {Atom::Kind::R, 0, {}}};
  for (long p : {2L, 3L, 5L, 7L}) {
    out.push_back({Atom::Kind::Zp, p, {}});
    out.push_back({Atom::Kind::Qp, p, {}});
    out.push_back({Atom::Kind::Pruefer, p, {}});
  }
  for (const auto& orders : std::vector<std::vector<long>>{{}, {2}, {3}, {2, 4}, {6}, {5, 25}, {2, 3, 4}}) {
    out.push_back({Atom::Kind::Fin, 0, FinAb::from_cyclic(orders)});
  }
  return out;
}

bool check_row_atomwise(const ExchangeRow& row) {
  for (const auto& a : atom_catalogue()) {
    if (row.left_atom(a) != row.right_atom(dual(a))) return false;
    if (row.right_atom(a) != row.left_atom(dual(a))) return false;
  }
  return true;
}

}  // namespace hlf::lcadual
