#include "hlf/tateobj/descriptor.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "hlf/error.hpp"

namespace hlf::tateobj {

namespace {

constexpr std::string_view kModule = "tateobj";

std::string strip(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string BaseCategory::to_string() const {
  switch (kind) {
    case Kind::Vect:
      return "Vect(" + name + ")";
    case Kind::LCA:
      return "LCA";
    case Kind::Opaque:
      return "Opaque(" + name + ")";
  }
  return "?";
}

std::string Leg::to_string() const {
  switch (kind) {
    case Kind::Ind:
      return "Ind";
    case Kind::Pro:
      return "Pro";
    case Kind::Tate:
      return "Tate(" + var + ")";
  }
  return "?";
}

TateDescriptor::TateDescriptor(BaseCategory base, std::vector<Leg> legs) : base_(std::move(base)), legs_(std::move(legs)) {
  std::set<std::string> seen;
  for (const auto& l : legs_) {
    if (l.kind != Leg::Kind::Tate) continue;
    if (l.var.empty()) fail(ErrorKind::Precondition, kModule, "TateDescriptor", "Tate leg without a variable");
    if (!seen.insert(l.var).second) {
      fail(ErrorKind::Precondition, kModule, "TateDescriptor", "repeated Tate variable " + l.var);
    }
  }
}

TateDescriptor TateDescriptor::tate(BaseCategory base, const std::vector<std::string>& vars) {
  std::vector<Leg> legs;
  for (const auto& v : vars) legs.push_back(Leg::tate(v));
  return TateDescriptor(std::move(base), std::move(legs));
}

int TateDescriptor::depth() const {
  return static_cast<int>(std::count_if(legs_.begin(), legs_.end(), [](const Leg& l) { return l.kind == Leg::Kind::Tate; }));
}

bool TateDescriptor::all_tate() const { return depth() == size(); }

std::vector<std::string> TateDescriptor::tate_vars() const {
  std::vector<std::string> out;
  for (const auto& l : legs_) {
    if (l.kind == Leg::Kind::Tate) out.push_back(l.var);
  }
  return out;
}

std::string TateDescriptor::to_string() const {
  std::string s;
  for (const auto& l : legs_) s += (s.empty() ? "" : ".") + l.to_string();
  if (s.empty()) s = "unit";
  return s + "@" + base_.to_string();
}

std::string TateDescriptor::tower_string() const {
  if (!all_tate() || base_.kind != BaseCategory::Kind::Vect) return to_string();
  std::string s = base_.name;
  for (const auto& l : legs_) s += "((" + l.var + "))";
  return s;
}

static BaseCategory parse_base(const std::string& s) {
  if (s == "LCA") return BaseCategory::lca();
  if (s.rfind("Vect(", 0) == 0 && s.back() == ')') return BaseCategory::vect(strip(s.substr(5, s.size() - 6)));
  if (s.rfind("Opaque(", 0) == 0 && s.back() == ')') return BaseCategory::opaque(strip(s.substr(7, s.size() - 8)));
  fail(ErrorKind::Parse, kModule, "TateDescriptor.parse", "unknown base category '" + s + "'");
}

TateDescriptor TateDescriptor::parse(std::string_view text) {
  const std::string s = strip(text);
  const auto at = s.rfind('@');
  if (at == std::string::npos) fail(ErrorKind::Parse, kModule, "TateDescriptor.parse", "missing '@base' in '" + s + "'");
  const BaseCategory base = parse_base(strip(s.substr(at + 1)));
  const std::string body = strip(s.substr(0, at));
  std::vector<Leg> legs;
  if (body.empty() || body == "unit") return TateDescriptor(base, {});
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto dot = body.find('.', pos);
    if (dot == std::string::npos) dot = body.size();
    const std::string tok = strip(body.substr(pos, dot - pos));
    if (tok == "Ind") {
      legs.push_back(Leg::ind());
    } else if (tok == "Pro") {
      legs.push_back(Leg::pro());
    } else if (tok.rfind("Tate(", 0) == 0 && tok.back() == ')' && tok.size() > 6) {
      legs.push_back(Leg::tate(strip(tok.substr(5, tok.size() - 6))));
    } else {
      fail(ErrorKind::Parse, kModule, "TateDescriptor.parse", "bad leg '" + tok + "'");
    }
    pos = dot + 1;
  }
  return TateDescriptor(base, std::move(legs));
}

// ---- shuffles ----

Shuffle::Shuffle(int n, int m, std::vector<Side> word) : n_(n), m_(m), word_(std::move(word)) {
  if (n < 0 || m < 0) fail(ErrorKind::Precondition, kModule, "Shuffle", "negative block size");
  const auto ls = std::count(word_.begin(), word_.end(), Side::L);
  if (static_cast<int>(word_.size()) != n + m || ls != n) {
    fail(ErrorKind::Precondition, kModule, "Shuffle",
         "word " + to_string() + " is not an (" + std::to_string(n) + "," + std::to_string(m) + ")-shuffle");
  }
  // the induced block maps are strictly monotone by construction
  for (const auto& v : {left_map(), right_map()}) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i] <= v[i - 1]) fail(ErrorKind::Invariant, kModule, "Shuffle", "non-monotone block map");
    }
  }
}

Shuffle Shuffle::trivial(int n, int m) {
  std::vector<Side> w(static_cast<std::size_t>(n), Side::L);
  w.insert(w.end(), static_cast<std::size_t>(m), Side::R);
  return Shuffle(n, m, std::move(w));
}

Shuffle Shuffle::parse(int n, int m, std::string_view word) {
  std::vector<Side> w;
  for (char c : word) {
    if (c == 'L' || c == 'l') {
      w.push_back(Side::L);
    } else if (c == 'R' || c == 'r') {
      w.push_back(Side::R);
    } else if (c == ',' || c == ' ') {
      continue;
    } else {
      fail(ErrorKind::Parse, kModule, "Shuffle.parse", "bad letter '" + std::string(1, c) + "'");
    }
  }
  return Shuffle(n, m, std::move(w));
}

std::vector<Shuffle> Shuffle::all(int n, int m) {
  std::vector<Shuffle> out;
  std::vector<Side> w(static_cast<std::size_t>(n), Side::L);
  w.insert(w.end(), static_cast<std::size_t>(m), Side::R);
  // L < R, so next_permutation from the sorted word visits every shuffle once
  do {
    out.emplace_back(n, m, w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

std::vector<int> Shuffle::left_map() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (word_[i] == Side::L) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> Shuffle::right_map() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (word_[i] == Side::R) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::string Shuffle::to_string() const {
  std::string s;
  for (Side x : word_) s += x == Side::L ? 'L' : 'R';
  return s;
}

TateDescriptor tensor_descriptor(const TateDescriptor& V, const TateDescriptor& W) {
  return tensor_descriptor(V, W, Shuffle::trivial(V.size(), W.size()));
}

TateDescriptor tensor_descriptor(const TateDescriptor& V, const TateDescriptor& W, const Shuffle& sigma) {
  if (!(V.base() == W.base())) {
    fail(ErrorKind::Precondition, kModule, "tensor_descriptor",
         "base mismatch " + V.base().to_string() + " vs " + W.base().to_string());
  }
  if (sigma.n() != V.size() || sigma.m() != W.size()) {
    fail(ErrorKind::Precondition, kModule, "tensor_descriptor",
         "shuffle " + sigma.to_string() + " does not match block sizes " + std::to_string(V.size()) + "," +
             std::to_string(W.size()));
  }
  std::vector<Leg> legs;
  std::size_t i = 0;
  std::size_t j = 0;
  for (auto side : sigma.word()) legs.push_back(side == Shuffle::Side::L ? V.legs()[i++] : W.legs()[j++]);
  return TateDescriptor(V.base(), std::move(legs));
}

std::vector<int> composite_lhs(const Shuffle& sigma, const Shuffle& tau) {
  if (tau.n() != sigma.n() + sigma.m()) fail(ErrorKind::Precondition, kModule, "shuffle_compose", "size mismatch");
  const auto sl = sigma.left_map();
  const auto sr = sigma.right_map();
  const auto tl = tau.left_map();
  const auto tr = tau.right_map();
  std::vector<int> out;
  for (int x : sl) out.push_back(tl[static_cast<std::size_t>(x)]);
  for (int x : sr) out.push_back(tl[static_cast<std::size_t>(x)]);
  for (int x : tr) out.push_back(x);
  return out;
}

std::vector<int> composite_rhs(const Shuffle& sigma_prime, const Shuffle& tau_prime) {
  if (sigma_prime.m() != tau_prime.n() + tau_prime.m()) {
    fail(ErrorKind::Precondition, kModule, "shuffle_compose", "size mismatch");
  }
  const auto pl = sigma_prime.left_map();
  const auto pr = sigma_prime.right_map();
  std::vector<int> out = pl;
  for (int x : tau_prime.left_map()) out.push_back(pr[static_cast<std::size_t>(x)]);
  for (int x : tau_prime.right_map()) out.push_back(pr[static_cast<std::size_t>(x)]);
  return out;
}

ShufflePair shuffle_compose(const Shuffle& sigma, const Shuffle& tau) {
  const int n = sigma.n();
  const int m = sigma.m();
  const int l = tau.m();
  if (tau.n() != n + m) {
    fail(ErrorKind::Precondition, kModule, "shuffle_compose",
         "tau must be an (" + std::to_string(n + m) + ",l)-shuffle, got (" + std::to_string(tau.n()) + "," +
             std::to_string(l) + ")");
  }
  const auto img = composite_lhs(sigma, tau);
  // block label of each target position
  std::vector<int> owner(static_cast<std::size_t>(n + m + l), -1);
  for (int i = 0; i < n + m + l; ++i) {
    owner[static_cast<std::size_t>(img[static_cast<std::size_t>(i)])] = i < n ? 0 : (i < n + m ? 1 : 2);
  }
  std::vector<Shuffle::Side> w1;
  std::vector<Shuffle::Side> w2;
  for (int o : owner) {
    w1.push_back(o == 0 ? Shuffle::Side::L : Shuffle::Side::R);
    if (o != 0) w2.push_back(o == 1 ? Shuffle::Side::L : Shuffle::Side::R);
  }
  ShufflePair p{Shuffle(n, m + l, std::move(w1)), Shuffle(m, l, std::move(w2))};
  if (composite_rhs(p.sigma_prime, p.tau_prime) != img) {
    fail(ErrorKind::Invariant, kModule, "shuffle_compose", "composites disagree");
  }
  return p;
}

TateDescriptor dualize_descriptor(const TateDescriptor& V) {
  if (!V.base().has_duality()) {
    fail(ErrorKind::Precondition, kModule, "dualize_descriptor", "base " + V.base().to_string() + " has no duality");
  }
  std::vector<Leg> legs;
  for (const auto& l : V.legs()) {
    switch (l.kind) {
      case Leg::Kind::Ind:
        legs.push_back(Leg::pro());
        break;
      case Leg::Kind::Pro:
        legs.push_back(Leg::ind());
        break;
      case Leg::Kind::Tate:
        legs.push_back(l);
        break;
    }
  }
  return TateDescriptor(V.base(), std::move(legs));
}

std::vector<TateDescriptor> tensor_all(const TateDescriptor& V, const TateDescriptor& W) {
  std::vector<TateDescriptor> out;
  for (const auto& sigma : Shuffle::all(V.size(), W.size())) out.push_back(tensor_descriptor(V, W, sigma));
  return out;
}

TateDescriptor hom_descriptor(const TateDescriptor& U, const TateDescriptor& V) {
  if (!U.base().rigid() || !V.base().rigid()) {
    fail(ErrorKind::Precondition, kModule, "hom_descriptor", "base " + U.base().to_string() + " is not rigid");
  }
  return tensor_descriptor(V, dualize_descriptor(U));
}

}  // namespace hlf::tateobj
