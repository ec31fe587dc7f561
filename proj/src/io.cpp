#include "cubekit/io.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace cubekit::io {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Keep floats recognisable as floats after a round trip.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write(std::ostringstream& out, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) { out << "{}"; return; }
      out << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        out << (first ? "" : ",") << pad << Json(k).dump() << sep;
        write(out, v, indent, depth + 1);
        first = false;
      }
      out << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) { out << "[]"; return; }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      out << '[';
      bool first = true;
      for (const auto& v : j) {
        out << (first ? "" : ",") << (flat ? (first || indent == 0 ? "" : " ") : pad);
        write(out, v, indent, depth + 1);
        first = false;
      }
      out << (flat ? "" : close) << ']';
      return;
    }
    case Json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

std::vector<double> real_values(const Json& arr) {
  require(arr.is_array(), "\"values\" must be an array");
  std::vector<double> v;
  v.reserve(arr.size());
  for (const auto& e : arr) {
    require(e.is_number(), "function values must be numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument("\"bits\" must be a hex string");
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else if (j.is_number_float()) {
    rows.emplace_back(prefix, format_double(j.get<double>()));
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

Json one_based(const std::vector<int>& v) {
  Json out = Json::array();
  for (int x : v) out.push_back(x + 1);
  return out;
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

std::string dump(const Json& j, int indent) {
  std::ostringstream out;
  write(out, j, indent, 0);
  return out.str();
}

BoolFn bool_fn_from_json(const Json& j) {
  require(j.is_object() && j.contains("n"), "function needs \"n\"");
  const int n = j.at("n").get<int>();
  require(n >= 1 && n <= kMaxArity, "arity must lie in [1, 24]");
  const std::size_t size = std::size_t{1} << n;
  if (j.contains("values")) return BoolFn(n, real_values(j.at("values")));
  require(j.contains("bits"), "function needs \"values\" or \"bits\"");
  std::string hex = j.at("bits").get<std::string>();
  if (hex.rfind("0x", 0) == 0) hex.erase(0, 2);
  std::vector<double> v(size, 1.0);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const int digit = hex_digit(hex[hex.size() - 1 - k]);
    for (int b = 0; b < 4; ++b) {
      if (!((digit >> b) & 1)) continue;
      const std::size_t m = 4 * k + static_cast<std::size_t>(b);
      require(m < size, "\"bits\" sets entries beyond 2^n");
      v[m] = -1.0;
    }
  }
  return BoolFn(n, std::move(v));
}

Json to_json(const BoolFn& f, bool compact) {
  Json j;
  j["n"] = f.arity();
  if (compact && f.is_sign()) {
    const std::size_t digits = std::max<std::size_t>(1, (f.size() + 3) / 4);
    std::string hex(digits, '0');
    for (std::size_t k = 0; k < digits; ++k) {
      int d = 0;
      for (int b = 0; b < 4; ++b) {
        const std::size_t m = 4 * k + static_cast<std::size_t>(b);
        if (m < f.size() && f[static_cast<Mask>(m)] < 0) d |= 1 << b;
      }
      hex[digits - 1 - k] = "0123456789abcdef"[d];
    }
    j["bits"] = hex;
    return j;
  }
  Json vals = Json::array();
  for (double v : f.values()) {
    // Sign tables print as integers.
    if (f.is_sign()) vals.push_back(static_cast<int>(v));
    else vals.push_back(v);
  }
  j["values"] = std::move(vals);
  return j;
}

FnCollection collection_from_json(const Json& j) {
  require(j.is_object() && j.contains("d") && j.contains("functions"), "collection needs \"d\" and \"functions\"");
  const int d = j.at("d").get<int>();
  require(d >= 1 && d <= 6, "collection dimension must lie in [1, 6]");
  const auto& fns = j.at("functions");
  require(fns.is_object() && fns.size() == (std::size_t{1} << d), "collection needs exactly 2^d functions");
  std::vector<std::optional<BoolFn>> slots(std::size_t{1} << d);
  for (const auto& [key, value] : fns.items()) {
    const Mask s = parse_subset_key(key, d);
    require(!slots[s].has_value(), "duplicate collection key " + key);
    slots[s] = bool_fn_from_json(value);
  }
  std::vector<BoolFn> entries;
  for (auto& s : slots) {
    require(s.has_value(), "collection is missing a subset");
    entries.push_back(std::move(*s));
  }
  return FnCollection(d, std::move(entries));
}

Json to_json(const FnCollection& c) {
  Json fns = Json::object();
  for (Mask s = 0; s < c.entries().size(); ++s) fns[subset_key(s)] = to_json(c[s]);
  return Json{{"d", c.dimension()}, {"functions", std::move(fns)}};
}

GroupFn group_fn_from_json(const Json& j) {
  require(j.is_object() && j.contains("blocks") && j.contains("values"), "group function needs \"blocks\" and \"values\"");
  GroupSpec spec(j.at("blocks").get<std::vector<std::vector<int>>>());
  std::vector<Complex> v;
  for (const auto& e : j.at("values")) {
    if (e.is_number()) {
      v.emplace_back(e.get<double>(), 0.0);
    } else {
      require(e.is_array() && e.size() == 2, "complex values are [re, im] pairs");
      v.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
  }
  return GroupFn(std::move(spec), std::move(v));
}

Json to_json(const GroupFn& f) {
  Json vals = Json::array();
  for (auto z : f.values) vals.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"blocks", f.spec.blocks()}, {"values", std::move(vals)}};
}

Hypergraph hypergraph_from_json(const Json& j) {
  require(j.is_object() && j.contains("t") && j.contains("edges"), "hypergraph needs \"t\" and \"edges\"");
  std::vector<std::vector<int>> edges;
  for (const auto& e : j.at("edges")) {
    std::vector<int> edge;
    for (const auto& v : e) edge.push_back(v.get<int>() - 1);
    edges.push_back(std::move(edge));
  }
  return Hypergraph(j.at("t").get<int>(), std::move(edges));
}

Json to_json(const Hypergraph& h) {
  Json edges = Json::array();
  for (const auto& e : h.edges()) edges.push_back(one_based(e));
  return Json{{"t", h.vertex_count()}, {"edges", std::move(edges)}};
}

UniqueGame unique_game_from_json(const Json& j) {
  require(j.is_object() && j.contains("sigma") && j.contains("constraints"), "game needs \"sigma\" and \"constraints\"");
  std::vector<Constraint> cs;
  for (const auto& c : j.at("constraints")) {
    cs.push_back({c.at("vars").get<std::vector<int>>(), c.at("perms").get<std::vector<std::vector<int>>>()});
  }
  std::vector<std::string> names;
  if (j.contains("variables")) {
    names = j.at("variables").get<std::vector<std::string>>();
  } else {
    int top = -1;
    for (const auto& c : cs) for (int v : c.vars) top = std::max(top, v);
    for (int v = 0; v <= top; ++v) names.push_back("v" + std::to_string(v + 1));
  }
  return UniqueGame(j.at("sigma").get<int>(), std::move(names), std::move(cs));
}

Json to_json(const UniqueGame& g) {
  Json cs = Json::array();
  for (const auto& c : g.constraints()) cs.push_back(Json{{"vars", c.vars}, {"perms", c.perms}});
  return Json{{"sigma", g.alphabet_size()}, {"variables", g.variables()}, {"constraints", std::move(cs)}};
}

PcpProof proof_from_json(const Json& j) {
  require(j.is_object() && j.contains("tables"), "proof needs \"tables\"");
  PcpProof p;
  for (const auto& t : j.at("tables")) p.tables.push_back(bool_fn_from_json(t));
  return p;
}

Json to_json(const PcpProof& p) {
  Json tables = Json::array();
  for (const auto& t : p.tables) tables.push_back(to_json(t));
  return Json{{"tables", std::move(tables)}};
}

Json to_json(const Spectrum& s) {
  Json coeffs = Json::array();
  for (double c : s.coeffs) coeffs.push_back(c);
  return Json{{"n", s.n}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const InfluenceReport& r) {
  Json vals = Json::array();
  for (double v : r.values) vals.push_back(v);
  return Json{{"values", std::move(vals)}, {"argmax", r.argmax + 1}, {"max_value", r.max_value}};
}

const char* method_name(Method m) { return m == Method::exact ? "exact" : "monte_carlo"; }

Json to_json(const GowersResult& r) {
  return Json{{"value", r.value}, {"method", method_name(r.method)}, {"samples", r.samples}, {"stderr", r.stderr_}};
}

Json to_json(const AcceptanceReport& r) {
  Json j{{"probability", r.probability}, {"method", method_name(r.method)}, {"samples", r.samples},
         {"stderr", r.stderr_}};
  if (r.terms) {
    Json terms = Json::array();
    for (const auto& [mask, value] : *r.terms) {
      Json edges = Json::array();
      for (int e = 0; e < 32; ++e) {
        if ((mask >> e) & 1u) edges.push_back(e + 1);
      }
      terms.push_back(Json{{"edges", std::move(edges)}, {"term", value}});
    }
    j["terms"] = std::move(terms);
  }
  return j;
}

Json to_json(const GameValueReport& r) {
  return Json{{"strong_value", r.strong_value}, {"weak_value", r.weak_value}, {"best_assignment", r.best_assignment}};
}

Json to_json(const ComposedReport& r) {
  return Json{{"acceptance", r.acceptance},
              {"stderr", r.stderr_},
              {"rounds", r.rounds},
              {"exact_acceptance", r.exact_acceptance},
              {"soundness_floor", r.soundness_floor},
              {"completeness_bound", r.completeness_bound}};
}

std::string to_csv(const Json& report) {
  std::ostringstream out;
  if (report.is_object() && report.contains("records") && report.at("records").is_array() &&
      !report.at("records").empty()) {
    const auto& records = report.at("records");
    bool first = true;
    for (const auto& [k, v] : records.front().items()) {
      out << (first ? "" : ",") << k;
      first = false;
    }
    out << '\n';
    for (const auto& rec : records) {
      first = true;
      for (const auto& [k, v] : rec.items()) {
        out << (first ? "" : ",") << csv_cell(v);
        first = false;
      }
      out << '\n';
    }
    return out.str();
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  out << "key,value\n";
  for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
  return out.str();
}

}  // namespace cubekit::io
