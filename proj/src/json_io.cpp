#include "padicint/json_io.hpp"

#include "padicint/error.hpp"

namespace padicint {

namespace {

std::optional<long> optional_long(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<long>();
}

Json optional_json(const std::optional<long>& v) { return v ? Json(*v) : Json(nullptr); }

long long_or(const Json& j, const char* key, long fallback) {
  return j.contains(key) ? j.at(key).get<long>() : fallback;
}

Rational rational_field(const Json& j, const char* key) {
  if (!j.contains(key)) return Rational(0);
  const Json& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw Error(ErrorKind::Domain, std::string("\"") + key + "\" must be a rational string");
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Domain, std::string("malformed JSON input: ") + e.what());
  }
}

int variable_index(const std::string& name, char sort) {
  if (name.size() < 2 || name[0] != sort) throw Error(ErrorKind::Domain, "bad variable name \"" + name + "\"");
  try {
    std::size_t used = 0;
    const int index = std::stoi(name.substr(1), &used);
    if (used + 1 != name.size() || index < 1) throw std::invalid_argument(name);
    return index;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Domain, "bad variable name \"" + name + "\"");
  }
}

GammaBound bound_from_json(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return GammaBound::none();
  const Json& b = j.at(key);
  if (b.is_number_integer()) return GammaBound::constant(b.get<long>());
  const auto& lin = b.at("lin");
  if (!lin.is_array() || lin.size() != 4) throw Error(ErrorKind::Domain, "\"lin\" needs [a, k, n, delta]");
  PreparedLinear f{lin[0].get<long>(), lin[1].get<long>(), lin[2].get<long>(), lin[3].get<long>()};
  f.validate();
  return GammaBound::linear(f, variable_index(b.at("var").get<std::string>(), 'g'));
}

}  // namespace

GammaCell gamma_cell_from_json(const Json& j) {
  return guarded([&] {
    GammaCell c{optional_long(j, "lower"), optional_long(j, "upper"), long_or(j, "mod", 1), long_or(j, "res", 0)};
    c.validate();
    return c;
  });
}

Json to_json(const GammaCell& c) {
  return Json{{"lower", optional_json(c.lower)}, {"upper", optional_json(c.upper)}, {"mod", c.modulus}, {"res", c.residue}};
}

GammaCellUnion gamma_union_from_json(const Json& j) {
  GammaCellUnion u;
  if (j.is_array()) {
    for (const auto& c : j) u.cells.push_back(gamma_cell_from_json(c));
  } else {
    u.cells.push_back(gamma_cell_from_json(j));
  }
  u.validate();
  return u;
}

KCell kcell_from_json(const Json& j) {
  return guarded([&] {
    KCell c;
    c.center = rational_field(j, "center");
    c.lower = optional_long(j, "lower");
    c.upper = optional_long(j, "upper");
    c.modulus = long_or(j, "mod", 1);
    c.residue = long_or(j, "res", 0);
    c.ac_depth = static_cast<int>(long_or(j, "acDepth", 1));
    c.ac_value = long_or(j, "acValue", 1);
    c.prime = Prime(long_or(j, "p", 2));
    c.validate();
    return c;
  });
}

Json to_json(const KCell& c) {
  return Json{{"center", to_string(c.center)}, {"lower", optional_json(c.lower)}, {"upper", optional_json(c.upper)},
              {"mod", c.modulus},  {"res", c.residue},  {"acDepth", c.ac_depth},
              {"acValue", c.ac_value}, {"p", c.prime.value()}};
}

std::vector<KCell> kcells_from_json(const Json& j) {
  std::vector<KCell> out;
  if (j.is_array()) {
    for (const auto& c : j) out.push_back(kcell_from_json(c));
  } else {
    out.push_back(kcell_from_json(j));
  }
  return out;
}

Domain domain_from_json(const Json& j, std::optional<long> prime_override) {
  return guarded([&] {
    Domain d;
    d.prime = Prime(prime_override ? *prime_override : long_or(j, "p", 2));
    for (const auto& v : j.at("variables")) {
      const std::string name = v.at("name").get<std::string>();
      DomainVariable var;
      const Json& region = v.contains("region") ? v.at("region") : Json("unit_ball");
      if (!name.empty() && name[0] == 'g') {
        var.sort = Sort::Gamma;
        var.index = variable_index(name, 'g');
        const Json cells = region.is_array() ? region : Json::array({region});
        for (const auto& c : cells) {
          GammaRegionCell rc;
          rc.lower = bound_from_json(c, "lower");
          rc.upper = bound_from_json(c, "upper");
          rc.modulus = long_or(c, "mod", 1);
          rc.residue = long_or(c, "res", 0);
          var.gamma_cells.push_back(rc);
        }
      } else {
        var.sort = Sort::K;
        var.index = variable_index(name, 'x');
        if (region.is_string()) {
          if (region.get<std::string>() != "unit_ball") {
            throw Error(ErrorKind::Domain, "unknown region \"" + region.get<std::string>() + "\"");
          }
          var.unit_ball = true;
        } else {
          for (const auto& c : region) {
            Json cell = c;
            if (!cell.contains("p")) cell["p"] = d.prime.value();
            var.k_cells.push_back(kcell_from_json(cell));
          }
        }
      }
      d.variables.push_back(std::move(var));
    }
    d.validate();
    return d;
  });
}

Json to_json(const RationalFunctionT& r, const Prime& prime) {
  Json shape = Json::array();
  for (const auto& s : r.shape) shape.push_back(Json{{"m", s.m}, {"N", s.N}});
  return Json{{"num", r.numerator.to_string("T")},
              {"den", r.denominator.to_string("T")},
              {"text", r.to_string()},
              {"generic", r.generic},
              {"negativeExponent", r.has_negative_exponent()},
              {"shape", shape},
              {"shapeText", r.shape_string(prime)}};
}

Json to_json(const PoincareReport& report) {
  Json counts = Json::array();
  for (const auto& c : report.table.counts) counts.push_back(c.get_str());
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json entry{{"m", c.m}, {"count", c.count.get_str()}, {"measure", to_string(c.counted_measure)}};
    entry["symbolic"] = c.symbolic_measure ? Json(to_string(*c.symbolic_measure)) : Json(nullptr);
    entry["ok"] = c.ok;
    checks.push_back(entry);
  }
  Json out;
  out["f"] = report.table.f.to_string();
  out["p"] = report.table.prime.value();
  out["counts"] = counts;
  if (report.rational) {
    const Json r = to_json(*report.rational, report.table.prime);
    out["rational"] = Json{{"num", r["num"]}, {"den", r["den"]}};
    out["shape"] = r["shape"];
    out["generic"] = r["generic"];
    out["negativeExponent"] = r["negativeExponent"];
  } else {
    out["rational"] = "UNDETERMINED";
    out["shape"] = Json::array();
  }
  out["checks"] = checks;
  out["guard"] = report.guard;
  out["stable"] = report.stable ? Json(*report.stable) : Json(nullptr);
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports a byte offset; convert it to line and column.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("invalid JSON", static_cast<int>(line), static_cast<int>(column));
  }
}

}  // namespace padicint
