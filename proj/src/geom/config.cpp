#include "hlf/geom/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "hlf/error.hpp"
#include "json.hpp"

namespace hlf::geom {

namespace {

constexpr std::string_view kModule = "geom";
using json = nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& msg) {
  fail(ErrorKind::Parse, kModule, "config", where + ": " + msg);
}

void only_keys(const json& j, const std::string& where, std::set<std::string> allowed, std::set<std::string> required) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) bad(where, "unknown key '" + k + "'");
  }
  for (const auto& k : required) {
    if (!j.contains(k)) bad(where, "missing key '" + k + "'");
  }
}

const json& array_at(const json& j, const char* key, const std::string& where) {
  const json& a = j.at(key);
  if (!a.is_array()) bad(where, std::string("'") + key + "' must be an array");
  return a;
}

std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

long integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long>();
}

// Numbers are accepted wherever an expression is expected.
std::string expr_text(const json& j, const std::string& where) {
  if (j.is_number_integer()) return std::to_string(j.get<long>());
  return str(j, where);
}

}  // namespace

VarietyConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, kModule, "config", std::string("malformed JSON: ") + e.what());
  }
  only_keys(doc, "document", {"name", "field", "dimension", "charts", "divisors", "cover", "glue", "cocycles", "flags"},
            {"name", "field", "dimension", "charts", "divisors", "cover"});
  VarietySpec X;
  X.name = str(doc.at("name"), "name");
  X.field = Field::parse(str(doc.at("field"), "field"));
  X.dimension = static_cast<int>(integer(doc.at("dimension"), "dimension"));
  const Field F = X.field;

  for (const auto& c : array_at(doc, "charts", "charts")) {
    only_keys(c, "charts[]", {"id", "coords"}, {"id", "coords"});
    Chart ch{str(c.at("id"), "charts[].id"), {}};
    for (const auto& x : array_at(c, "coords", "charts[]")) ch.coords.push_back(str(x, "charts[].coords"));
    X.charts.push_back(std::move(ch));
  }
  const auto chart_of = [&](const json& j, const std::string& where) {
    const std::string id = str(j, where);
    for (std::size_t i = 0; i < X.charts.size(); ++i) {
      if (X.charts[i].id == id) return static_cast<int>(i);
    }
    bad(where, "unknown chart '" + id + "'");
  };

  for (const auto& d : array_at(doc, "divisors", "divisors")) {
    only_keys(d, "divisors[]", {"name", "equations"}, {"name", "equations"});
    Divisor D;
    D.name = str(d.at("name"), "divisors[].name");
    const std::string where = "divisor " + D.name;
    if (!d.at("equations").is_object()) bad(where, "'equations' must map chart ids to polynomials");
    for (const auto& [cid, eq] : d.at("equations").items()) {
      D.equations.emplace(chart_of(json(cid), where), RatFun::parse(F, expr_text(eq, where)));
    }
    X.divisors.push_back(std::move(D));
  }
  const auto divisor_of = [&](const std::string& nm, const std::string& where) {
    for (std::size_t i = 0; i < X.divisors.size(); ++i) {
      if (X.divisors[i].name == nm) return static_cast<int>(i);
    }
    bad(where, "unknown divisor '" + nm + "'");
  };

  for (const auto& m : array_at(doc, "cover", "cover")) {
    only_keys(m, "cover[]", {"chart", "invert"}, {"chart"});
    CoverMember cm{chart_of(m.at("chart"), "cover[].chart"), {}};
    if (m.contains("invert")) {
      for (const auto& d : array_at(m, "invert", "cover[]")) cm.inverted.push_back(divisor_of(str(d, "cover[].invert"), "cover[]"));
    }
    X.cover.push_back(std::move(cm));
  }

  if (doc.contains("glue")) {
    for (const auto& g : array_at(doc, "glue", "glue")) {
      only_keys(g, "glue[]", {"from", "to", "map"}, {"from", "to", "map"});
      Glue gl{chart_of(g.at("from"), "glue[].from"), chart_of(g.at("to"), "glue[].to"), {}};
      if (!g.at("map").is_object()) bad("glue[]", "'map' must map coordinates to expressions");
      for (const auto& [k, v] : g.at("map").items()) gl.map.emplace_back(k, RatFun::parse(F, expr_text(v, "glue[].map")));
      X.glue.push_back(std::move(gl));
    }
  }

  if (doc.contains("flags")) {
    for (const auto& fl : array_at(doc, "flags", "flags")) {
      only_keys(fl, "flags[]", {"chart", "coords", "centre", "residue", "members"}, {"chart", "coords"});
      Flag f;
      f.chart = chart_of(fl.at("chart"), "flags[].chart");
      for (const auto& x : array_at(fl, "coords", "flags[]")) f.coords.push_back(str(x, "flags[].coords"));
      if (fl.contains("centre")) {
        for (const auto& c : array_at(fl, "centre", "flags[]")) f.centre.push_back(Scalar::parse(F, expr_text(c, "flags[].centre")));
      } else {
        f.centre.assign(f.coords.size(), Scalar::zero(F));
      }
      if (fl.contains("residue")) {
        const RatFun m = RatFun::parse(F, str(fl.at("residue"), "flags[].residue"));
        const auto vars = m.vars();
        if (!m.den().is_constant() || vars.size() > 1) bad("flags[].residue", "expected a univariate polynomial");
        const std::string v = vars.empty() ? "x" : vars[0];
        auto poly = m.num().to_univariate(v);
        const Scalar dc = m.den().constant_value();
        std::vector<Scalar> coeffs;
        for (int i = 0; i <= poly.degree(); ++i) coeffs.push_back(poly.coeff(i) / dc);
        f.point = ExtField::make(exactalg::UPoly(F, coeffs));
      }
      if (fl.contains("members")) {
        for (const auto& l : array_at(fl, "members", "flags[]")) f.labels.push_back(str(l, "flags[].members"));
      }
      X.declared_flags.push_back(std::move(f));
    }
  }

  X.validate();

  VarietyConfig out{X, {}};
  if (doc.contains("cocycles")) {
    for (const auto& c : array_at(doc, "cocycles", "cocycles")) {
      only_keys(c, "cocycles[]", {"label", "entries"}, {"label", "entries"});
      CechCocycle L(str(c.at("label"), "cocycles[].label"), F, static_cast<int>(X.cover.size()),
                    static_cast<int>(X.divisors.size()));
      const std::string where = "cocycle " + L.label();
      for (const auto& e : array_at(c, "entries", where)) {
        only_keys(e, where + " entry", {"rho", "nu", "constant", "exponents"}, {"rho", "nu"});
        CocycleEntry ce{Scalar::one(F), std::vector<long>(X.divisors.size(), 0)};
        if (e.contains("constant")) ce.constant = Scalar::parse(F, expr_text(e.at("constant"), where));
        if (e.contains("exponents")) {
          if (!e.at("exponents").is_object()) bad(where, "'exponents' must map divisor names to integers");
          for (const auto& [dn, x] : e.at("exponents").items()) {
            ce.exponents[static_cast<std::size_t>(divisor_of(dn, where))] = integer(x, where);
          }
        }
        const int rho = static_cast<int>(integer(e.at("rho"), where));
        const int nu = static_cast<int>(integer(e.at("nu"), where));
        if (L.has(rho, nu) && rho != nu) bad(where, "repeated entry");
        L.set(rho, nu, std::move(ce));
      }
      L.complete_alternating();
      validate_cocycle(X, L);
      out.cocycles.push_back(std::move(L));
    }
  }
  return out;
}

VarietyConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, kModule, "config", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace hlf::geom
