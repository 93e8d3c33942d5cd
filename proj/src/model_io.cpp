#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "svf/error.hpp"
#include "svf/svf_model.hpp"

namespace svf::model {

namespace {

using json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Numbers may also be spelled as "inf"/"-inf" so that non-compact data can be
// written down (and then rejected by validation).
bool read_number(const json& j, double& out) {
  if (j.is_number()) {
    out = j.get<double>();
    return true;
  }
  if (!j.is_string()) return false;
  const std::string s = j.get<std::string>();
  if (s == "inf" || s == "+inf" || s == "infinity" || s == "+infinity" || s == "Infinity") {
    out = kInf;
    return true;
  }
  if (s == "-inf" || s == "-infinity" || s == "-Infinity") {
    out = -kInf;
    return true;
  }
  return false;
}

bool read_numbers(const json& j, std::vector<double>& out) {
  if (!j.is_array()) return false;
  out.clear();
  for (const json& e : j) {
    double v = 0.0;
    if (!read_number(e, v)) return false;
    out.push_back(v);
  }
  return true;
}

bool read_flags(const json& obj, const char* key, std::array<bool, 2>& out, std::vector<Violation>& errs) {
  if (!obj.contains(key)) return true;
  const json& j = obj[key];
  if (j.is_boolean()) {
    out = {j.get<bool>(), j.get<bool>()};
    return true;
  }
  if (j.is_array() && j.size() == 2 && j[0].is_boolean() && j[1].is_boolean()) {
    out = {j[0].get<bool>(), j[1].get<bool>()};
    return true;
  }
  errs.push_back({key, "expected a boolean or a pair of booleans"});
  return false;
}

// Reads a vertex list; non-finite coordinates are reported as non-compact data.
std::optional<Polytope> read_vertices(const json& j, std::size_t dim, const std::string& field,
                                      std::vector<Violation>& errs) {
  if (!j.is_array() || j.empty()) {
    errs.push_back({field, "expected a nonempty array of vertices"});
    return std::nullopt;
  }
  std::vector<Point> pts;
  bool finite = true;
  for (const json& v : j) {
    Point p;
    if (!read_numbers(v, p)) {
      errs.push_back({field, "vertices must be arrays of numbers"});
      return std::nullopt;
    }
    if (p.size() != dim) {
      errs.push_back({field, "vertex has " + std::to_string(p.size()) + " coordinates, expected " +
                                 std::to_string(dim)});
      return std::nullopt;
    }
    for (double c : p) finite = finite && std::isfinite(c);
    pts.push_back(std::move(p));
  }
  if (!finite) {
    errs.push_back({field, "fibers must be compact"});
    return std::nullopt;
  }
  return Polytope(dim, std::move(pts));
}

std::optional<std::size_t> read_dim(const json& obj, std::vector<Violation>& errs) {
  if (!obj.contains("dim") || !obj["dim"].is_number_integer() || obj["dim"].get<long long>() < 1) {
    errs.push_back({"dim", "expected a positive integer"});
    return std::nullopt;
  }
  return static_cast<std::size_t>(obj["dim"].get<long long>());
}

std::optional<SvFunction> parse_pl(const json& obj, std::vector<Violation>& errs) {
  IntervalPL pl;
  bool ok = true;
  for (auto [key, dst] : {std::pair{"breakpoints", &pl.breakpoints}, std::pair{"lower", &pl.lower},
                          std::pair{"upper", &pl.upper}}) {
    if (!obj.contains(key) || !read_numbers(obj[key], *dst)) {
      errs.push_back({key, "expected an array of numbers"});
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return SvFunction{std::move(pl)};
}

std::optional<SvFunction> parse_graph(const json& obj, std::vector<Violation>& errs) {
  const auto dim = read_dim(obj, errs);
  if (!dim) return std::nullopt;
  if (!obj.contains("vertices")) {
    errs.push_back({"vertices", "missing"});
    return std::nullopt;
  }
  auto poly = read_vertices(obj["vertices"], *dim + 1, "vertices", errs);
  if (!poly) return std::nullopt;
  return SvFunction{GraphPolytope(*dim, *std::move(poly))};
}

std::optional<SvFunction> parse_fibers(const json& obj, std::vector<Violation>& errs) {
  const auto dim = read_dim(obj, errs);
  if (!dim) return std::nullopt;
  FiberFamily fam;
  fam.n = *dim;
  std::vector<double> dom;
  if (!obj.contains("domain") || !read_numbers(obj["domain"], dom) || dom.size() != 2) {
    errs.push_back({"domain", "expected [a, b]"});
    return std::nullopt;
  }
  fam.domain = {dom[0], dom[1]};
  if (obj.contains("fibers")) {
    if (!obj["fibers"].is_array()) {
      errs.push_back({"fibers", "expected an array"});
      return std::nullopt;
    }
    std::size_t i = 0;
    for (const json& fb : obj["fibers"]) {
      const std::string field = "fibers[" + std::to_string(i++) + "]";
      double x = 0.0;
      if (!fb.is_object() || !fb.contains("x") || !read_number(fb["x"], x)) {
        errs.push_back({field, "expected an object with numeric \"x\""});
        return std::nullopt;
      }
      if (!fb.contains("vertices")) {
        errs.push_back({field, "missing vertices"});
        return std::nullopt;
      }
      auto poly = read_vertices(fb["vertices"], fam.n, field, errs);
      if (!poly) return std::nullopt;
      fam.fibers.push_back({x, *std::move(poly)});
    }
  }
  if (obj.contains("default")) {
    const json& d = obj["default"];
    if (!d.is_object() || !d.contains("vertices")) {
      errs.push_back({"default", "expected an object with vertices"});
      return std::nullopt;
    }
    auto poly = read_vertices(d["vertices"], fam.n, "default", errs);
    if (!poly) return std::nullopt;
    fam.fallback = *std::move(poly);
  }
  return SvFunction{std::move(fam)};
}

json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == std::trunc(v) && std::abs(v) < 1e15) return static_cast<long long>(v);
  return v;
}

json numbers(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(number(x));
  return arr;
}

json vertices(const Polytope& p) {
  json arr = json::array();
  for (const Point& v : p.vertices()) arr.push_back(numbers(v));
  return arr;
}

}  // namespace

ParseResult parse_instance(const std::string& text) {
  ParseResult out;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    out.violations.push_back({"document", std::string("malformed JSON: ") + e.what()});
    return out;
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    out.violations.push_back({"kind", "expected an object with a string \"kind\""});
    return out;
  }
  Instance inst;
  read_flags(doc, "domain_open", inst.domain_open, out.violations);
  read_flags(doc, "fiber_open", inst.fiber_open, out.violations);

  const std::string kind = doc["kind"].get<std::string>();
  std::optional<SvFunction> f;
  try {
    if (kind == "interval_pl") {
      f = parse_pl(doc, out.violations);
    } else if (kind == "graph_polytope") {
      f = parse_graph(doc, out.violations);
    } else if (kind == "fibers") {
      f = parse_fibers(doc, out.violations);
    } else {
      out.violations.push_back({"kind", "unknown kind \"" + kind + "\""});
    }
  } catch (const Error& e) {
    out.violations.push_back({kind, e.what()});
    f.reset();
  }
  if (f) {
    inst.function = *std::move(f);
    out.instance = std::move(inst);
  }
  return out;
}

ParseResult parse_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult out;
    out.violations.push_back({"path", "cannot open " + path});
    return out;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize(const Instance& instance) {
  std::vector<std::pair<std::string, json>> fields;
  std::vector<json> fiber_lines;
  const SvFunction& f = instance.function;
  fields.emplace_back("kind", kind_name(f));
  if (const auto* pl = std::get_if<IntervalPL>(&f)) {
    fields.emplace_back("breakpoints", numbers(pl->breakpoints));
    fields.emplace_back("lower", numbers(pl->lower));
    fields.emplace_back("upper", numbers(pl->upper));
  } else if (const auto* g = std::get_if<GraphPolytope>(&f)) {
    fields.emplace_back("dim", g->n());
    fields.emplace_back("vertices", vertices(g->graph()));
  } else {
    const auto& fam = std::get<FiberFamily>(f);
    fields.emplace_back("dim", fam.n);
    fields.emplace_back("domain", numbers({fam.domain.a, fam.domain.b}));
    fields.emplace_back("fibers", json());
    for (const ListedFiber& fb : fam.fibers) {
      json line = json::object();
      line["x"] = number(fb.x);
      line["vertices"] = vertices(fb.set);
      fiber_lines.push_back(std::move(line));
    }
    if (fam.fallback) {
      json d = json::object();
      d["vertices"] = vertices(*fam.fallback);
      fields.emplace_back("default", std::move(d));
    }
  }
  auto flags = [](const std::array<bool, 2>& b) { return json::array({b[0], b[1]}); };
  if (instance.domain_open[0] || instance.domain_open[1]) fields.emplace_back("domain_open", flags(instance.domain_open));
  if (instance.fiber_open[0] || instance.fiber_open[1]) fields.emplace_back("fiber_open", flags(instance.fiber_open));

  std::string out = "{\n";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto& [key, value] = fields[i];
    out += "  \"" + key + "\": ";
    if (key == "fibers") {
      if (fiber_lines.empty()) {
        out += "[]";
      } else {
        out += "[\n";
        for (std::size_t k = 0; k < fiber_lines.size(); ++k) {
          out += "    " + fiber_lines[k].dump();
          out += k + 1 < fiber_lines.size() ? ",\n" : "\n";
        }
        out += "  ]";
      }
    } else {
      out += value.dump();
    }
    out += i + 1 < fields.size() ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

}  // namespace svf::model
