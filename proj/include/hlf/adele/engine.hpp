#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hlf/geom/builtin.hpp"
#include "hlf/laurent/series.hpp"
#include "hlf/tateobj/descriptor.hpp"

namespace hlf::adele {

using exactalg::RatFun;
using geom::CechCocycle;
using geom::Flag;
using geom::VarietySpec;
using laurent::CoordTower;
using laurent::NestedSeries;

// The n-local field of a flag: layers u_1..u_n (innermost first), so the
// codimension-1 uniformizer u_n is the outermost layer and the base is the
// residue field of the closed point.
struct FlagTower {
  Flag flag;
  CoordTower tower;
  std::map<std::string, exactalg::ExtPoly> images;  // chart coordinate -> centre + layer
  int residue_degree = 1;
};

FlagTower flag_tower(const VarietySpec& X, const Flag& f);
// Expansion of a chart function in the flag tower. prec <= 0 picks the
// precision adaptively.
NestedSeries expand_at(const FlagTower& T, const RatFun& f, long prec = 0);

// Slot q (1-based) holds f^q evaluated on U_alpha(eta_q) and U_alpha(eta_(q-1)).
std::vector<RatFun> flag_entries(const VarietySpec& X, const Flag& f, const std::vector<CechCocycle>& Ls);

// Higher valuation of {entries} in the flag tower times the residue degree.
// For n = 1 the lattice index map is run as a second route and must agree.
long v_tate(const VarietySpec& X, const Flag& f, const std::vector<RatFun>& entries);
// The same integer by iterated boundaries on rational functions.
long v_ger_flag(const VarietySpec& X, const Flag& f, const std::vector<RatFun>& entries);
// Index-map route for curves.
long v_index(const VarietySpec& X, const Flag& f, const RatFun& entry);

struct FlagContribution {
  std::string id;
  std::string chain;
  std::vector<std::string> entries;
  long tate = 0;
  long gersten = 0;
  std::optional<long> index_route;
};

struct ContributionReport {
  std::string kind;  // "degree" or "intersection"
  std::string variety;
  std::vector<std::string> bundles;
  long sign = 1;
  std::vector<FlagContribution> flags;  // in flag-id order
  long total = 0;                       // sign * sum of tate values
  long gersten_total = 0;               // sign * sum of gersten values
  bool routes_agree = true;
  std::string label;
};

struct EngineOptions {
  int jobs = 1;
  bool keep_zero = false;  // list flags whose contribution vanishes
};

ContributionReport intersection(const VarietySpec& X, const std::vector<CechCocycle>& Ls, const EngineOptions& opt = {});
ContributionReport degree(const VarietySpec& X, const CechCocycle& L, const EngineOptions& opt = {});
// Gersten-route total.
long v_ger(const VarietySpec& X, const std::vector<CechCocycle>& Ls, const EngineOptions& opt = {});

// ---- tubular neighbourhoods ----

struct Window {
  long lo = 0;
  long hi = 0;
  std::vector<NestedSeries> basis;  // twist * u^e for e in [lo, hi)
};

struct LambdaFactor {
  tateobj::TateDescriptor descriptor;
  std::string var;
  std::vector<Window> windows;
};

// The factor between eta_i and eta_(i-1) (1 <= i <= n), cut by u_(n-i+1).
// The twist must be a function of that coordinate alone.
LambdaFactor lambda_factor(const VarietySpec& X, const Flag& f, int i, long prec,
                           const std::optional<RatFun>& twist = std::nullopt);

struct TubularReport {
  bool ok = false;
  bool descriptors_match = false;
  bool products_match = false;
  std::string adele_descriptor;
  std::string tensor_descriptor;
  long checked = 0;
  std::vector<std::string> diffs;
};

// Compares the adelic completion of the flag with the normally ordered
// tensor of its Lambda factors. `reversed` tensors the factors the wrong way
// round.
TubularReport tubular_check(const VarietySpec& X, const Flag& f, long prec, bool reversed = false);

}  // namespace hlf::adele
