#include "hlf/tateobj/element.hpp"

#include <algorithm>
#include <map>

#include "hlf/error.hpp"

namespace hlf::tateobj {

namespace {

constexpr std::string_view kModule = "tateobj";

NestedSeries embed_rec(const NestedSeries& x, const CoordTower& target) {
  const int d = target.depth();
  if (d == 0) return NestedSeries::scalar(target, x.scalar_value());
  const std::string& outer = target.layers().back();
  const CoordTower inner = target.prefix(d - 1);
  const bool own = x.depth() > 0 && x.tower().layers().back() == outer;
  std::map<long, NestedSeries> coeffs;
  if (!own) {
    coeffs.emplace(0, embed_rec(x, inner));
    return NestedSeries::from_coeffs(target, std::move(coeffs), laurent::kExact);
  }
  const auto& st = x.stored();
  for (std::size_t i = 0; i < st.size(); ++i) coeffs.emplace(x.val() + static_cast<long>(i), embed_rec(st[i], inner));
  return NestedSeries::from_coeffs(target, std::move(coeffs), x.prec());
}

}  // namespace

CoordTower shuffled_tower(const CoordTower& a, const CoordTower& b, const Shuffle& sigma) {
  if (a.residue() != b.residue()) fail(ErrorKind::Precondition, kModule, "tensor_element", "residue field mismatch");
  if (sigma.n() != a.depth() || sigma.m() != b.depth()) {
    fail(ErrorKind::Precondition, kModule, "tensor_element", "shuffle " + sigma.to_string() + " does not match depths");
  }
  for (const auto& x : a.layers()) {
    if (std::find(b.layers().begin(), b.layers().end(), x) != b.layers().end()) {
      fail(ErrorKind::Precondition, kModule, "tensor_element", "shared variable " + x);
    }
  }
  std::vector<std::string> layers;
  std::size_t i = 0;
  std::size_t j = 0;
  for (auto side : sigma.word()) layers.push_back(side == Shuffle::Side::L ? a.layers()[i++] : b.layers()[j++]);
  return CoordTower(std::move(layers), a.residue());
}

NestedSeries embed(const NestedSeries& x, const CoordTower& target) {
  const CoordTower xt = x.tower();
  const auto& own = xt.layers();
  std::vector<std::string> seen;
  for (const auto& l : target.layers()) {
    if (std::find(own.begin(), own.end(), l) != own.end()) seen.push_back(l);
  }
  if (seen != own) {
    fail(ErrorKind::Precondition, kModule, "embed",
         "tower " + x.tower().to_string() + " is not an ordered sub-tower of " + target.to_string());
  }
  return embed_rec(x, target);
}

NestedSeries tensor_element(const NestedSeries& v, const NestedSeries& w) {
  return tensor_element(v, w, Shuffle::trivial(v.depth(), w.depth()));
}

NestedSeries tensor_element(const NestedSeries& v, const NestedSeries& w, const Shuffle& sigma) {
  const CoordTower joint = shuffled_tower(v.tower(), w.tower(), sigma);
  return embed(v, joint) * embed(w, joint);
}

TateDescriptor descriptor_of(const CoordTower& t) {
  return TateDescriptor::tate(BaseCategory::vect(t.residue().to_string()), t.layers());
}

}  // namespace hlf::tateobj
