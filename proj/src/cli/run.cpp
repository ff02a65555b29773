#include "hlf/cli/run.hpp"

#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "hlf/adele/engine.hpp"
#include "hlf/error.hpp"
#include "hlf/geom/config.hpp"
#include "hlf/lcadual/descriptor.hpp"
#include "hlf/lcadual/haar.hpp"
#include "hlf/milnork/symbol.hpp"
#include "hlf/tateobj/descriptor.hpp"
#include "hlf/tateobj/lattice.hpp"
#include "json.hpp"

namespace hlf::cli {

namespace {

using json = nlohmann::ordered_json;
using exactalg::Field;
using exactalg::RatFun;

constexpr std::string_view kModule = "cli";

[[noreturn]] void precondition(const std::string& msg) { fail(ErrorKind::Precondition, kModule, "run", msg); }

struct Common {
  std::string format = "json";
  std::string field = "Q";
  long prec = 0;
  int jobs = 1;
};

struct Source {
  std::string builtin;
  std::string config;
  std::vector<std::string> bundles;  // builtin degree lists, or cocycle labels for configs
  bool keep_zero = false;
};

void add_common(CLI::App* sc, Common& c, bool with_prec, bool with_jobs) {
  sc->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sc->add_option("--field", c.field, "Q or Fp (e.g. F5)");
  if (with_prec) sc->add_option("--prec", c.prec, "truncation precision")->check(CLI::PositiveNumber);
  if (with_jobs) sc->add_option("--jobs", c.jobs, "parallel flag evaluation")->check(CLI::Range(1, 256));
}

void add_source(CLI::App* sc, Source& s, const char* bundles_name) {
  auto* b = sc->add_option("--builtin", s.builtin, "P1, P2, P1xP1, ... or NAME(d,...)");
  auto* c = sc->add_option("--config", s.config, "variety config (JSON)");
  b->excludes(c);
  sc->add_option(bundles_name, s.bundles, "degree lists like 1,0 (builtin) or cocycle labels (config)");
}

std::vector<long> degree_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, kModule, "run", "bad degree list '" + s + "'");
    }
  }
  return out;
}

struct Loaded {
  geom::VarietySpec X;
  std::vector<geom::CechCocycle> Ls;
};

Loaded load(const Source& s, Field field) {
  if (s.builtin.empty() == s.config.empty()) precondition("give exactly one of --builtin or --config");
  Loaded out;
  if (!s.builtin.empty()) {
    const auto open = s.builtin.find('(');
    if (open != std::string::npos) {
      auto [X, L] = geom::builtin(s.builtin, field);
      out.X = std::move(X);
      out.Ls.push_back(std::move(L));
    } else {
      out.X = geom::builtin_variety(s.builtin, field);
    }
    for (const auto& b : s.bundles) out.Ls.push_back(geom::builtin_bundle(out.X, degree_list(b)));
    return out;
  }
  auto cfg = geom::load_config(s.config);
  out.X = std::move(cfg.variety);
  if (s.bundles.empty()) {
    out.Ls = std::move(cfg.cocycles);
  } else {
    for (const auto& label : s.bundles) {
      const auto it = std::find_if(cfg.cocycles.begin(), cfg.cocycles.end(), [&](const auto& L) { return L.label() == label; });
      if (it == cfg.cocycles.end()) precondition("config has no cocycle labelled '" + label + "'");
      out.Ls.push_back(*it);
    }
  }
  return out;
}

std::string q(const mpq_class& x) { return x.get_str(); }

json header(const std::string& command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

// ---- text rendering ----

void text_value(std::ostream& os, const json& j, int indent);

void text_object(std::ostream& os, const json& j, int indent) {
  for (const auto& [k, v] : j.items()) {
    os << std::string(static_cast<std::size_t>(indent), ' ') << k << ":";
    if (v.is_object() || (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array()))) {
      os << "\n";
      text_value(os, v, indent + 2);
    } else {
      os << " ";
      text_value(os, v, 0);
      os << "\n";
    }
  }
}

void text_value(std::ostream& os, const json& j, int indent) {
  if (j.is_object()) {
    text_object(os, j, indent);
  } else if (j.is_array()) {
    if (!j.empty() && (j.front().is_object() || j.front().is_array())) {
      for (std::size_t i = 0; i < j.size(); ++i) {
        os << std::string(static_cast<std::size_t>(indent), ' ') << "- [" << i << "]\n";
        text_value(os, j[i], indent + 2);
      }
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) {
        os << (i ? ", " : "");
        text_value(os, j[i], 0);
      }
    }
  } else if (j.is_string()) {
    os << j.get<std::string>();
  } else {
    os << j.dump();
  }
}

void contribution_table(std::ostream& os, const json& j) {
  os << j["command"].get<std::string>() << " on " << j["variety"].get<std::string>() << " with";
  for (const auto& b : j["bundles"]) os << " " << b.get<std::string>();
  os << "\n";
  os << std::left << std::setw(18) << "flag" << std::setw(8) << "v_tate" << std::setw(8) << "v_ger" << "chain / entries\n";
  for (const auto& f : j["flags"]) {
    os << std::setw(18) << f["id"].get<std::string>() << std::setw(8) << f["v_tate"].dump() << std::setw(8)
       << f["v_ger"].dump() << f["chain"].get<std::string>() << "\n";
    std::string es;
    for (const auto& e : f["entries"]) es += (es.empty() ? "" : ", ") + e.get<std::string>();
    os << std::string(34, ' ') << "{" << es << "}\n";
  }
  os << "sign " << j["sign"].dump() << ", total " << j["total"].dump() << " (" << j["label"].get<std::string>()
     << "), gersten " << j["v_ger_total"].dump() << ", routes " << (j["routes_agree"].get<bool>() ? "agree" : "DIFFER")
     << "\n";
}

void emit(std::ostream& out, const json& j, const std::string& format) {
  if (format == "json") {
    out << j.dump(2) << "\n";
  } else if (j.contains("flags") && j.contains("total")) {
    contribution_table(out, j);
  } else {
    text_object(out, j, 0);
  }
}

// ---- commands ----

json contribution_json(const adele::ContributionReport& r, const geom::VarietySpec& X) {
  json j = header(r.kind == "degree" ? "degree" : "intersect");
  j["variety"] = r.variety;
  j["field"] = X.field.tag();
  j["bundles"] = r.bundles;
  j["sign"] = r.sign;
  json flags = json::array();
  long sum = 0;
  for (const auto& c : r.flags) {
    json f;
    f["id"] = c.id;
    f["chain"] = c.chain;
    f["entries"] = c.entries;
    f["v_tate"] = c.tate;
    f["v_ger"] = c.gersten;
    if (c.index_route) f["index_route"] = *c.index_route;
    flags.push_back(std::move(f));
    sum += c.tate;
  }
  j["flags"] = std::move(flags);
  j["sum_v_tate"] = sum;
  j["total"] = r.total;
  j["v_ger_total"] = r.gersten_total;
  j["routes_agree"] = r.routes_agree;
  j["label"] = r.label;
  return j;
}

json cmd_contribution(const Source& s, const Common& c, bool is_degree) {
  const Loaded in = load(s, Field::parse(c.field));
  const adele::EngineOptions opt{c.jobs, s.keep_zero};
  if (is_degree) {
    if (in.Ls.size() != 1) precondition("degree takes exactly one line bundle");
    return contribution_json(adele::degree(in.X, in.Ls[0], opt), in.X);
  }
  return contribution_json(adele::intersection(in.X, in.Ls, opt), in.X);
}

struct SymbolArgs {
  std::string text;
  std::string at;
  std::string centre;
  std::string point;
  std::string tower;
};

json cmd_symbol(const SymbolArgs& a, const Common& c) {
  const Field F = Field::parse(c.field);
  const auto s = milnork::SymbolSum::parse(F, a.text);
  json j = header("symbol");
  j["symbol"] = s.to_string();
  j["field"] = F.tag();
  if (!a.tower.empty()) {
    std::vector<std::string> layers;
    std::stringstream ss(a.tower);
    for (std::string v; std::getline(ss, v, ',');) layers.push_back(v);
    const laurent::CoordTower T(layers, exactalg::ExtField::base(F));
    j["tower"] = T.to_string();
    j["higher_valuation"] = milnork::higher_valuation(s, T);
    return j;
  }
  if (a.at.empty()) precondition("give --at VAR or --tower VARS");
  milnork::ValuationRef ref = milnork::ValuationRef::variable(a.at);
  if (!a.point.empty()) {
    ref = milnork::ValuationRef::closed_point(a.at, exactalg::ExtField::parse(F, a.point));
  } else if (!a.centre.empty()) {
    ref = milnork::ValuationRef::variable(a.at, exactalg::Scalar::parse(F, a.centre));
  }
  j["valuation"] = ref.to_string();
  const auto b = milnork::boundary(s, ref);
  j["boundary"] = b.to_string();
  if (b.length() == 0) j["boundary_value"] = b.integer_value() * ref.residue_degree();
  if (s.length() == 2 && s.terms().size() == 1 && s.terms()[0].coeff == 1) {
    const auto& e = s.terms()[0].entries;
    j["tame_symbol"] = milnork::entry_to_string(milnork::tame_symbol(e[0], e[1], ref));
  }
  return j;
}

struct IndexArgs {
  std::string unit;
  std::string var = "t";
  long l1 = 0;
  long l2 = 0;
  bool l2_set = false;
};

json cmd_index(const IndexArgs& a, const Common& c) {
  const Field F = Field::parse(c.field);
  const laurent::CoordTower T({a.var}, exactalg::ExtField::base(F));
  const RatFun u = RatFun::parse(F, a.unit);
  long prec = c.prec > 0 ? c.prec : 16;
  auto f = laurent::expand(u, T, prec);
  const long v = f.valuation();
  const long l2 = a.l2_set ? a.l2 : std::min(a.l1, a.l1 + v) - 1;
  if (c.prec == 0) {
    const long need = std::max(a.l1, a.l1 + v) + 1 - a.l1;
    if (f.prec() < need) f = laurent::expand(u, T, need + 4);
  }
  json j = header("index");
  j["unit"] = u.to_string();
  j["expansion"] = f.to_string();
  j["valuation"] = v;
  j["L1"] = a.l1;
  j["L2"] = l2;
  j["index"] = tateobj::index_map(f, {a.l1}, {l2});
  return j;
}

struct TensorArgs {
  std::string v, w, shuffle;
  bool all = false;
};

json cmd_tensor(const TensorArgs& a) {
  const auto V = tateobj::TateDescriptor::parse(a.v);
  const auto W = tateobj::TateDescriptor::parse(a.w);
  json j = header("tensor");
  j["left"] = V.to_string();
  j["right"] = W.to_string();
  if (a.all) {
    json arr = json::array();
    const auto shuffles = tateobj::Shuffle::all(V.size(), W.size());
    const auto ts = tateobj::tensor_all(V, W);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      arr.push_back({{"shuffle", shuffles[i].to_string()}, {"descriptor", ts[i].to_string()}, {"tower", ts[i].tower_string()}});
    }
    j["sum"] = std::move(arr);
    return j;
  }
  const auto sigma = a.shuffle.empty() ? tateobj::Shuffle::trivial(V.size(), W.size())
                                       : tateobj::Shuffle::parse(V.size(), W.size(), a.shuffle);
  const auto T = tateobj::tensor_descriptor(V, W, sigma);
  j["shuffle"] = sigma.to_string();
  j["descriptor"] = T.to_string();
  j["tower"] = T.tower_string();
  return j;
}

struct DualArgs {
  std::string lca, finab, tate;
};

json cmd_dual(const DualArgs& a) {
  const int given = !a.lca.empty() + !a.finab.empty() + !a.tate.empty();
  if (given != 1) precondition("give exactly one of DESCRIPTOR, --finab or --tate");
  json j = header("dual");
  if (!a.finab.empty()) {
    const auto G = lcadual::FinAb::from_cyclic(degree_list(a.finab));
    const auto D = lcadual::pontryagin_dual(G, 64);
    j["group"] = G.to_string();
    j["invariant_factors"] = G.factors();
    j["dual"] = D.dual.to_string();
    j["order"] = G.order();
    j["double_dual_iso"] = lcadual::double_dual_is_iso(G);
    if (!D.table.empty()) {
      json rows = json::array();
      for (std::size_t i = 0; i < D.table.size(); ++i) {
        json row = json::array();
        for (const auto& x : D.table[i]) row.push_back(q(x));
        rows.push_back(std::move(row));
      }
      json els = json::array();
      for (const auto& e : D.elements) els.push_back(e);
      j["elements"] = std::move(els);
      j["pairing"] = std::move(rows);
    }
    return j;
  }
  if (!a.tate.empty()) {
    const auto V = tateobj::TateDescriptor::parse(a.tate);
    j["descriptor"] = V.to_string();
    j["dual"] = tateobj::dualize_descriptor(V).to_string();
    return j;
  }
  const auto D = lcadual::LcaDescriptor::parse(a.lca);
  const auto Dd = lcadual::descriptor_dual(D);
  j["descriptor"] = D.to_string();
  j["dual"] = Dd.to_string();
  j["valid"] = D.valid();
  json props = json::array();
  for (const auto& row : lcadual::exchange_table()) {
    if (lcadual::has_property(D, row.wraps, row.left_atom)) props.push_back(row.left + " -> " + row.right);
  }
  j["exchanged_properties"] = std::move(props);
  return j;
}

struct HaarArgs {
  std::string aut;
  std::vector<std::string> pair;
  std::string place = "adelic";
  std::string vanishing;
};

json cmd_haar(const HaarArgs& a) {
  const int given = !a.aut.empty() + !a.pair.empty() + !a.vanishing.empty();
  if (given != 1) precondition("give exactly one of --aut, --pair or --vanishing");
  json j = header("haar");
  if (!a.aut.empty()) {
    const auto g = lcadual::Automorphism::parse(a.aut);
    j["automorphism"] = g.to_string();
    j["modulus"] = q(lcadual::haar_modulus(g));
    return j;
  }
  if (!a.vanishing.empty()) {
    const auto r = lcadual::pairing_vanishing_witness(a.vanishing);
    j["base"] = r.base;
    j["reason"] = r.reason;
    j["pairs_tested"] = r.rows.size();
    j["constant_one"] = r.constant_one;
    return j;
  }
  if (a.pair.size() != 2) precondition("--pair takes two units F G");
  const Field Q = Field::rationals();
  const RatFun f = RatFun::parse(Q, a.pair[0]);
  const RatFun g = RatFun::parse(Q, a.pair[1]);
  j["f"] = f.to_string();
  j["g"] = g.to_string();
  if (a.place == "adelic") {
    const auto r = lcadual::adelic_pairing(f, g);
    j["residue"] = q(r.residue);
    json places;
    for (const auto& [p, v] : r.places) places[p] = q(v);
    j["places"] = std::move(places);
    j["product"] = q(r.product);
    return j;
  }
  const auto P = lcadual::Place::parse(a.place);
  j["place"] = P.to_string();
  j["residue"] = q(lcadual::tame_residue(f, g));
  j["pairing"] = q(lcadual::haar_pairing(f, g, P));
  return j;
}

struct TubularArgs {
  int flag = -1;
  bool reversed = false;
};

json cmd_tubular(const Source& s, const TubularArgs& a, const Common& c) {
  Source src = s;
  src.bundles.clear();
  const Loaded in = load(src, Field::parse(c.field));
  const auto flags = in.X.builtin ? geom::toric_flags(in.X) : in.X.declared_flags;
  if (flags.empty()) precondition("no flags to check; declare a flag pool");
  const long prec = c.prec > 0 ? c.prec : 4;
  json j = header("tubular");
  j["variety"] = in.X.name;
  j["prec"] = prec;
  j["reversed"] = a.reversed;
  json arr = json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (a.flag >= 0 && static_cast<std::size_t>(a.flag) != i) continue;
    const auto r = adele::tubular_check(in.X, flags[i], prec, a.reversed);
    all_ok = all_ok && r.ok;
    json f;
    f["index"] = i;
    f["id"] = geom::flag_id(in.X, flags[i]);
    f["chain"] = geom::describe(in.X, flags[i]);
    f["ok"] = r.ok;
    f["adele"] = r.adele_descriptor;
    f["tensor"] = r.tensor_descriptor;
    f["checked"] = r.checked;
    f["diffs"] = r.diffs;
    arr.push_back(std::move(f));
  }
  if (arr.empty()) precondition("flag index out of range");
  j["flags"] = std::move(arr);
  j["ok"] = all_ok;
  return j;
}

json cmd_selfcheck(const Common& c, bool& ok) {
  json j = header("selfcheck");
  json arr = json::array();
  ok = true;
  for (const auto& r : selfcheck(c.jobs)) {
    ok = ok && r.ok;
    arr.push_back({{"suite", r.name}, {"ok", r.ok}, {"checked", r.checked}, {"detail", r.detail}});
  }
  j["suites"] = std::move(arr);
  j["ok"] = ok;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher local fields, adeles and intersection numbers", "hlf"};
  app.require_subcommand(1);
  Common common;
  Source source;
  SymbolArgs sym;
  IndexArgs idx;
  TensorArgs ten;
  DualArgs dua;
  HaarArgs haa;
  TubularArgs tub;

  auto* deg = app.add_subcommand("degree", "degree of a line bundle on a curve");
  add_common(deg, common, false, true);
  add_source(deg, source, "--bundle");
  deg->add_flag("--keep-zero", source.keep_zero, "list flags contributing 0");

  auto* inter = app.add_subcommand("intersect", "intersection number of n line bundles");
  add_common(inter, common, false, true);
  add_source(inter, source, "--bundles");
  inter->add_flag("--keep-zero", source.keep_zero, "list flags contributing 0");

  auto* symc = app.add_subcommand("symbol", "boundary, tame symbol or higher valuation of a symbol");
  add_common(symc, common, false, false);
  symc->add_option("symbol", sym.text, "e.g. '{t, s}' or '2*{t^2, 3*t^5}'")->required();
  symc->add_option("--at", sym.at, "valuation variable");
  symc->add_option("--centre", sym.centre, "rational centre of the valuation");
  symc->add_option("--point", sym.point, "closed point modulus, e.g. 'x^2 - 2'");
  symc->add_option("--tower", sym.tower, "tower variables innermost first, e.g. s,t");

  auto* indc = app.add_subcommand("index", "lattice index map of a unit of k((t))");
  add_common(indc, common, true, false);
  indc->add_option("--unit", idx.unit, "rational function")->required();
  indc->add_option("--var", idx.var, "variable");
  indc->add_option("--l1", idx.l1, "L1 = t^l1 k[[t]]");
  auto* l2opt = indc->add_option("--l2", idx.l2, "L2 = t^l2 k[[t]]");

  auto* tenc = app.add_subcommand("tensor", "normally ordered tensor of Tate descriptors");
  add_common(tenc, common, false, false);
  tenc->add_option("left", ten.v, "e.g. Tate(s)@Vect(Q)")->required();
  tenc->add_option("right", ten.w, "e.g. Tate(t)@Vect(Q)")->required();
  tenc->add_option("--shuffle", ten.shuffle, "shuffle word, e.g. RL");
  tenc->add_flag("--all", ten.all, "formal sum over all shuffles");

  auto* duc = app.add_subcommand("dual", "Pontryagin and descriptor duality");
  add_common(duc, common, false, false);
  duc->add_option("descriptor", dua.lca, "LCA descriptor, e.g. 'Pro(Ind(Z + Fin(2,4)))'");
  duc->add_option("--finab", dua.finab, "cyclic orders, e.g. 2,4");
  duc->add_option("--tate", dua.tate, "Tate descriptor, e.g. Tate(s).Tate(t)@Vect(Q)");

  auto* hac = app.add_subcommand("haar", "Haar modulus and tame pairing");
  add_common(hac, common, false, false);
  hac->add_option("--aut", haa.aut, "R:2, R^2:1,2;3,4, C:1,1, Qp(2):2, Fin(2,4):1,0;0,3");
  hac->add_option("--pair", haa.pair, "two units of Q((t))")->expected(2);
  hac->add_option("--place", haa.place, "R, C, Qp(p) or adelic");
  hac->add_option("--vanishing", haa.vanishing, "Z or T")->check(CLI::IsMember({"Z", "T"}));

  auto* tuc = app.add_subcommand("tubular", "tubular decomposition check on flags");
  add_common(tuc, common, true, false);
  add_source(tuc, source, "--bundles");
  tuc->add_option("--flag", tub.flag, "only the flag with this index");
  tuc->add_flag("--reversed", tub.reversed, "tensor the factors the wrong way round");

  auto* sel = app.add_subcommand("selfcheck", "run the invariant suites");
  add_common(sel, common, false, true);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: cli.parse: " << e.what() << "\n";
    return kParse;
  }
  idx.l2_set = l2opt->count() > 0;

  try {
    json report;
    int code = kOk;
    if (deg->parsed()) {
      report = cmd_contribution(source, common, true);
    } else if (inter->parsed()) {
      report = cmd_contribution(source, common, false);
    } else if (symc->parsed()) {
      report = cmd_symbol(sym, common);
    } else if (indc->parsed()) {
      report = cmd_index(idx, common);
    } else if (tenc->parsed()) {
      report = cmd_tensor(ten);
    } else if (duc->parsed()) {
      report = cmd_dual(dua);
    } else if (hac->parsed()) {
      report = cmd_haar(haa);
    } else if (tuc->parsed()) {
      report = cmd_tubular(source, tub, common);
    } else if (sel->parsed()) {
      bool ok = true;
      report = cmd_selfcheck(common, ok);
      if (!ok) code = kSelfcheckFailed;
    }
    emit(out, report, common.format);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Parse:
        return kParse;
      case ErrorKind::Precondition:
        return kPrecondition;
      case ErrorKind::Invariant:
        return kInvariant;
    }
  } catch (const std::exception& e) {
    err << "error: unexpected: " << e.what() << "\n";
  }
  return kUnexpected;
}

}  // namespace hlf::cli
