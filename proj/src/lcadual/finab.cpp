#include "hlf/lcadual/finab.hpp"

#include <algorithm>
#include <map>

#include "hlf/error.hpp"

namespace hlf::lcadual {

namespace {
constexpr std::string_view kModule = "lcadual";

long mod(long a, long d) {
  const long r = a % d;
  return r < 0 ? r + d : r;
}
}  // namespace

std::vector<std::pair<long, int>> factor_integer(long n) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(long p) {
  if (p < 2) return false;
  const auto f = factor_integer(p);
  return f.size() == 1 && f[0].second == 1;
}

FinAb FinAb::from_cyclic(const std::vector<long>& orders) {
  std::map<long, std::vector<long>> powers;  // prime -> prime powers
  for (long n : orders) {
    if (n < 1) fail(ErrorKind::Precondition, kModule, "FinAb", "cyclic order " + std::to_string(n) + " must be positive");
    for (auto [p, e] : factor_integer(n)) {
      long q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      powers[p].push_back(q);
    }
  }
  std::size_t k = 0;
  for (auto& [p, qs] : powers) {
    std::sort(qs.rbegin(), qs.rend());
    k = std::max(k, qs.size());
  }
  std::vector<long> d(k, 1);  // d[0] largest
  for (const auto& [p, qs] : powers) {
    for (std::size_t i = 0; i < qs.size(); ++i) d[i] *= qs[i];
  }
  std::reverse(d.begin(), d.end());
  FinAb G;
  G.d_ = std::move(d);
  return G;
}

long FinAb::order() const {
  long n = 1;
  for (long d : d_) n *= d;
  return n;
}

bool FinAb::is_p_group(long p) const {
  for (long d : d_) {
    for (auto [q, e] : factor_integer(d)) {
      if (q != p) return false;
    }
  }
  return true;
}

std::vector<std::vector<long>> FinAb::elements(long limit) const {
  if (order() > limit) {
    fail(ErrorKind::Precondition, kModule, "elements", "group of order " + std::to_string(order()) + " too large to enumerate");
  }
  std::vector<std::vector<long>> out{{}};
  for (long d : d_) {
    std::vector<std::vector<long>> next;
    for (const auto& t : out) {
      for (long x = 0; x < d; ++x) {
        auto u = t;
        u.push_back(x);
        next.push_back(std::move(u));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<long> FinAb::reduce(std::vector<long> a) const {
  if (a.size() != d_.size()) fail(ErrorKind::Precondition, kModule, "FinAb", "element has the wrong length");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod(a[i], d_[i]);
  return a;
}

std::vector<long> FinAb::add(const std::vector<long>& a, const std::vector<long>& b) const {
  std::vector<long> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return reduce(std::move(c));
}

std::string FinAb::to_string() const {
  if (d_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < d_.size(); ++i) s += (i ? " + Z/" : "Z/") + std::to_string(d_[i]);
  return s;
}

mpq_class character_value(const FinAb& G, const std::vector<long>& a, const std::vector<long>& b) {
  const auto& d = G.factors();
  const long n = d.empty() ? 1 : d.back();
  long num = 0;
  for (std::size_t i = 0; i < d.size(); ++i) num = mod(num + mod(a[i] * b[i], d[i]) * (n / d[i]), n);
  mpq_class q(num, n);
  q.canonicalize();
  return q;
}

PontryaginDual pontryagin_dual(const FinAb& G, long table_limit) {
  PontryaginDual out{G, {}, {}};
  if (G.order() > table_limit) return out;
  out.elements = G.elements();
  for (const auto& a : out.elements) {
    std::vector<mpq_class> row;
    for (const auto& b : out.elements) row.push_back(character_value(G, a, b));
    out.table.push_back(std::move(row));
  }
  return out;
}

std::vector<long> evaluation(const FinAb& G, const std::vector<long>& a) { return G.reduce(a); }

bool double_dual_is_iso(const FinAb& G) {
  const auto els = G.elements();
  // ev(a) = ev(a') iff chi(a - a') = 0 for every chi; injective iff only 0 is killed by all characters
  for (const auto& a : els) {
    if (std::all_of(a.begin(), a.end(), [](long x) { return x == 0; })) continue;
    const bool killed = std::all_of(els.begin(), els.end(), [&](const auto& b) { return character_value(G, a, b) == 0; });
    if (killed) return false;
  }
  return true;
}

}  // namespace hlf::lcadual
