#include "hlf/tateobj/lattice.hpp"

#include <algorithm>

#include "hlf/error.hpp"

namespace hlf::tateobj {

namespace {

constexpr std::string_view kModule = "tateobj";

}  // namespace

long quotient_dim(const Lattice& big, const Lattice& small) {
  if (!contains(big, small)) {
    fail(ErrorKind::Precondition, kModule, "quotient_dim",
         "L(" + std::to_string(small.offset) + ") is not contained in L(" + std::to_string(big.offset) + ")");
  }
  return small.offset - big.offset;
}

Lattice image_lattice(const laurent::NestedSeries& f, const Lattice& L) {
  if (f.depth() != 1) fail(ErrorKind::Precondition, kModule, "image_lattice", "depth-1 unit required");
  return {L.offset + f.valuation()};
}

long rank(std::vector<std::vector<exactalg::ExtElem>> rows) {
  long r = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    std::size_t p = pivot_row;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[pivot_row]);
    const auto inv = rows[pivot_row][c].inv();
    for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      const auto factor = rows[i][c] * inv;
      for (std::size_t k = c; k < cols; ++k) rows[i][k] = rows[i][k] - factor * rows[pivot_row][k];
    }
    ++pivot_row;
    ++r;
  }
  return r;
}

long index_map(const laurent::NestedSeries& f, const Lattice& L1, const Lattice& L2) {
  if (f.depth() != 1) fail(ErrorKind::Precondition, kModule, "index_map", "f must live in a depth-1 space");
  const long v = f.valuation();
  const long a = L1.offset;
  const long b = L2.offset;
  std::string failed;
  if (b > a) failed += "L1 = L(" + std::to_string(a) + ") not in L2 = L(" + std::to_string(b) + ")";
  if (b > a + v) {
    if (!failed.empty()) failed += "; ";
    failed += "f L1 = L(" + std::to_string(a + v) + ") not in L2 = L(" + std::to_string(b) + ")";
  }
  if (!failed.empty()) fail(ErrorKind::Precondition, kModule, "index_map", failed);
  // Window L2 / X^N k[[X]] with X^N k[[X]] inside f L1.
  const long N = std::max(a, a + v) + 1;
  if (f.prec() < laurent::kExact && f.prec() + a < N) {
    fail(ErrorKind::Precondition, kModule, "index_map", "precision of f too small for the lattice window");
  }
  const std::size_t width = static_cast<std::size_t>(N - b);
  const auto& F = f.tower().residue();
  std::vector<std::vector<exactalg::ExtElem>> rows;
  for (long j = 0; a + j + v < N; ++j) {
    std::vector<exactalg::ExtElem> row(width, exactalg::ExtElem::zero(F));
    const laurent::NestedSeries img = f.shifted(a + j);
    for (long e = b; e < N; ++e) {
      if (e < img.val()) continue;
      row[static_cast<std::size_t>(e - b)] = img.coeff(e).scalar_value();
    }
    rows.push_back(std::move(row));
  }
  const long dim_l2_over_fl1 = static_cast<long>(width) - rank(std::move(rows));
  const long dim_l2_over_l1 = a - b;
  return dim_l2_over_fl1 - dim_l2_over_l1;
}

IntersectionWitness zero_intersection_witness(const std::vector<long>& offsets) {
  if (offsets.empty()) fail(ErrorKind::Precondition, kModule, "zero_intersection_witness", "no lattices");
  Lattice acc{offsets.front()};
  for (long o : offsets) acc = lattice_intersection(acc, Lattice{o});
  return {acc, quotient_dim(Lattice{offsets.front()}, acc)};
}

}  // namespace hlf::tateobj
