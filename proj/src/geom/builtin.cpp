#include "hlf/geom/builtin.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "hlf/error.hpp"

namespace hlf::geom {

namespace {

constexpr std::string_view kModule = "geom";
constexpr char kLetters[] = {'x', 'y', 'z', 'w'};

std::string coord(int f, int i, int j) {
  return std::string(1, kLetters[f]) + std::to_string(i) + std::to_string(j);
}

// All index tuples j with 0 <= j_f <= dims[f], lexicographic.
std::vector<std::vector<int>> chart_tuples(const std::vector<int>& dims) {
  std::vector<std::vector<int>> out{{}};
  for (int d : dims) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out) {
      for (int j = 0; j <= d; ++j) {
        auto u = t;
        u.push_back(j);
        next.push_back(std::move(u));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<int> divisor_offsets(const std::vector<int>& dims) {
  std::vector<int> off;
  int acc = 0;
  for (int d : dims) {
    off.push_back(acc);
    acc += d + 1;
  }
  return off;
}

}  // namespace

std::vector<int> builtin_factors(std::string_view name) {
  std::vector<int> dims;
  std::size_t pos = 0;
  const auto bad = [&] { fail(ErrorKind::Parse, kModule, "builtin", "unknown builtin '" + std::string(name) + "'"); };
  while (pos < name.size()) {
    if (name[pos] != 'P') bad();
    ++pos;
    std::size_t e = pos;
    while (e < name.size() && std::isdigit(static_cast<unsigned char>(name[e]))) ++e;
    if (e == pos || e - pos > 1) bad();
    const int d = name[pos] - '0';
    if (d < 1) bad();
    dims.push_back(d);
    pos = e;
    if (pos < name.size()) {
      if (name[pos] != 'x') bad();
      ++pos;
      if (pos == name.size()) bad();
    }
  }
  if (dims.empty() || dims.size() > 4) bad();
  return dims;
}

VarietySpec builtin_variety(std::string_view name, Field field) {
  const auto dims = builtin_factors(name);
  VarietySpec X;
  X.name = std::string(name);
  X.field = field;
  X.builtin = true;
  for (int d : dims) X.dimension += d;
  const auto tuples = chart_tuples(dims);
  for (const auto& t : tuples) {
    Chart c;
    c.id = "U";
    for (int j : t) c.id += std::to_string(j);
    for (std::size_t f = 0; f < dims.size(); ++f) {
      for (int i = 0; i <= dims[f]; ++i) {
        if (i != t[f]) c.coords.push_back(coord(static_cast<int>(f), i, t[f]));
      }
    }
    X.charts.push_back(std::move(c));
  }
  for (std::size_t f = 0; f < dims.size(); ++f) {
    for (int i = 0; i <= dims[f]; ++i) {
      Divisor D;
      D.name = std::string(1, kLetters[f]) + std::to_string(i);
      for (std::size_t c = 0; c < tuples.size(); ++c) {
        const int j = tuples[c][f];
        if (i != j) D.equations.emplace(static_cast<int>(c), RatFun::variable(field, coord(static_cast<int>(f), i, j)));
      }
      X.divisors.push_back(std::move(D));
    }
  }
  for (std::size_t c = 0; c < tuples.size(); ++c) X.cover.push_back({static_cast<int>(c), {}});
  const RatFun one = RatFun::constant(Scalar::one(field));
  for (std::size_t a = 0; a < tuples.size(); ++a) {
    for (std::size_t b = 0; b < tuples.size(); ++b) {
      if (a == b) continue;
      Glue g{static_cast<int>(a), static_cast<int>(b), {}};
      for (std::size_t f = 0; f < dims.size(); ++f) {
        const int j = tuples[a][f];
        const int k = tuples[b][f];
        const auto ratio = [&](int i) { return i == j ? one : RatFun::variable(field, coord(static_cast<int>(f), i, j)); };
        for (int i = 0; i <= dims[f]; ++i) {
          if (i != k) g.map.emplace_back(coord(static_cast<int>(f), i, k), ratio(i) / ratio(k));
        }
      }
      X.glue.push_back(std::move(g));
    }
  }
  return X;
}

CechCocycle builtin_bundle(const VarietySpec& X, const std::vector<long>& degrees) {
  const auto dims = builtin_factors(X.name);
  if (degrees.size() != dims.size()) {
    fail(ErrorKind::Precondition, kModule, "builtin", X.name + " needs " + std::to_string(dims.size()) + " degrees");
  }
  const auto off = divisor_offsets(dims);
  const auto tuples = chart_tuples(dims);
  std::string label = "O(";
  for (std::size_t i = 0; i < degrees.size(); ++i) label += (i ? "," : "") + std::to_string(degrees[i]);
  label += ")";
  const int m = static_cast<int>(tuples.size());
  CechCocycle L(label, X.field, m, static_cast<int>(X.divisors.size()));
  for (int r = 0; r < m; ++r) {
    for (int v = 0; v < m; ++v) {
      if (r == v) continue;
      CocycleEntry e{Scalar::one(X.field), std::vector<long>(X.divisors.size(), 0)};
      for (std::size_t f = 0; f < dims.size(); ++f) {
        e.exponents[static_cast<std::size_t>(off[f] + tuples[static_cast<std::size_t>(r)][f])] += degrees[f];
        e.exponents[static_cast<std::size_t>(off[f] + tuples[static_cast<std::size_t>(v)][f])] -= degrees[f];
      }
      L.set(r, v, std::move(e));
    }
  }
  return L;
}

std::pair<VarietySpec, CechCocycle> builtin(std::string_view text, Field field) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    fail(ErrorKind::Parse, kModule, "builtin", "expected NAME(d1,...), got '" + std::string(text) + "'");
  }
  VarietySpec X = builtin_variety(text.substr(0, open), field);
  std::vector<long> degrees;
  std::string cur;
  for (char c : text.substr(open + 1, text.size() - open - 2)) {
    if (c == ',') {
      degrees.push_back(std::stol(cur));
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  try {
    degrees.push_back(std::stol(cur));
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, kModule, "builtin", "bad degree list in '" + std::string(text) + "'");
  }
  CechCocycle L = builtin_bundle(X, degrees);
  return {std::move(X), std::move(L)};
}

std::vector<Flag> toric_flags(const VarietySpec& X) {
  std::vector<Flag> out;
  for (std::size_t c = 0; c < X.charts.size(); ++c) {
    auto perm = X.charts[c].coords;
    std::sort(perm.begin(), perm.end());
    do {
      Flag f;
      f.chart = static_cast<int>(c);
      f.coords = perm;
      f.centre.assign(perm.size(), Scalar::zero(X.field));
      out.push_back(std::move(f));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

std::vector<Flag> enumerate_flags(const VarietySpec& X, const std::vector<CechCocycle>& cocycles) {
  std::vector<Flag> pool;
  if (X.builtin) {
    pool = toric_flags(X);
  } else {
    if (X.declared_flags.empty()) {
      fail(ErrorKind::Precondition, kModule, "enumerate_flags",
           "variety " + X.name + " declares no candidate flags; supply a flag pool");
    }
    pool = X.declared_flags;
  }
  std::set<int> support;
  for (const auto& L : cocycles) {
    for (int d : L.support()) support.insert(d);
  }
  std::map<std::string, Flag> keep;
  for (auto& f : pool) {
    validate_flag(X, f);
    const bool touches = std::any_of(support.begin(), support.end(), [&](int d) { return lies_on(X, f, 1, d); });
    if (touches) keep.emplace(flag_id(X, f), std::move(f));
  }
  std::vector<Flag> out;
  for (auto& [id, f] : keep) out.push_back(std::move(f));
  return out;
}

}  // namespace hlf::geom
