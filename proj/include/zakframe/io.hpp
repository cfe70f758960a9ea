#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "zakframe/catalog.hpp"
#include "zakframe/duality.hpp"
#include "zakframe/subgroup.hpp"

namespace zakframe::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Writes JSON with object keys in insertion order and every float as %.17g,
/// so equal inputs give byte-identical text.
inline void write_json(std::ostream& os, const ordered_json& j, int indent = 2, int depth = 0) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << ordered_json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], indent, depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

inline std::string dump(const ordered_json& j) {
  std::ostringstream os;
  write_json(os, j);
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------- parsing

inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::parse_error, source + ": malformed JSON at line " + std::to_string(line) + ", column " +
                                            std::to_string(column) + " (byte " + std::to_string(e.byte) + ")");
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_error, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io_error, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::io_error, "write to '" + path.string() + "' failed");
}

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::parse_error, (where.empty() ? std::string("/") : where) + ": " + what);
}

inline void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) fail(where + "/" + it.key(), "unknown field");
  }
}

inline int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

inline double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

inline std::vector<int> get_ints(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], where + "/" + std::to_string(i)));
  return out;
}

inline std::vector<double> get_numbers(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], where + "/" + std::to_string(i)));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------- specs

struct GroupSpec {
  std::string kind = "product";  // product | cayley | named
  std::vector<int> orders;
  std::vector<std::vector<int>> table;
  std::string name;
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Exactly one of strides / generators is used; generators are element indices.
struct SubgroupSpec {
  std::optional<std::vector<int>> strides;
  std::optional<std::vector<int>> generators;
  friend bool operator==(const SubgroupSpec&, const SubgroupSpec&) = default;
};

/// A signal given inline or as a path (JSON or CSV), resolved relative to the spec file.
struct SignalRef {
  std::optional<std::string> path;
  std::vector<double> re, im;
  friend bool operator==(const SignalRef&, const SignalRef&) = default;
};

struct ToleranceOverrides {
  std::optional<double> dual, oracle, support, rank, lower;
  friend bool operator==(const ToleranceOverrides&, const ToleranceOverrides&) = default;
};

struct InstanceSpec {
  GroupSpec group;
  SubgroupSpec subgroup;
  std::vector<SignalRef> family;
  std::vector<SignalRef> dual;
  std::vector<std::vector<SignalRef>> components;
  std::vector<std::vector<SignalRef>> dual_components;
  std::optional<SubgroupSpec> lambda;
  std::optional<int> n;
  std::optional<std::string> check;   // gabor: "dual" | "orthogonal"
  std::optional<std::string> output;  // make-dual / make-biortho signal file
  ToleranceOverrides tolerances;
  std::optional<std::uint64_t> seed;
  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

inline GroupSpec parse_group_spec(const json& j, const std::string& where = "/group") {
  detail::only_keys(j, where, {"kind", "orders", "table", "name"});
  if (!j.contains("kind") || !j["kind"].is_string()) detail::fail(where + "/kind", "expected \"product\", \"cayley\" or \"named\"");
  GroupSpec g;
  g.kind = j["kind"].get<std::string>();
  if (g.kind == "product") {
    if (!j.contains("orders")) detail::fail(where + "/orders", "missing");
    g.orders = detail::get_ints(j["orders"], where + "/orders");
  } else if (g.kind == "cayley") {
    if (!j.contains("table") || !j["table"].is_array()) detail::fail(where + "/table", "expected an array of rows");
    for (std::size_t i = 0; i < j["table"].size(); ++i)
      g.table.push_back(detail::get_ints(j["table"][i], where + "/table/" + std::to_string(i)));
  } else if (g.kind == "named") {
    if (!j.contains("name") || !j["name"].is_string()) detail::fail(where + "/name", "expected a group name");
    g.name = j["name"].get<std::string>();
  } else {
    detail::fail(where + "/kind", "unknown group kind '" + g.kind + "'");
  }
  return g;
}

inline SubgroupSpec parse_subgroup_spec(const json& j, const std::string& where = "/subgroup") {
  detail::only_keys(j, where, {"strides", "generators"});
  SubgroupSpec s;
  if (j.contains("strides")) s.strides = detail::get_ints(j["strides"], where + "/strides");
  if (j.contains("generators")) s.generators = detail::get_ints(j["generators"], where + "/generators");
  if (s.strides.has_value() == s.generators.has_value()) detail::fail(where, "give exactly one of strides, generators");
  return s;
}

inline SignalRef parse_signal_ref(const json& j, const std::string& where) {
  SignalRef s;
  if (j.is_string()) {
    s.path = j.get<std::string>();
    return s;
  }
  detail::only_keys(j, where, {"re", "im"});
  if (!j.contains("re")) detail::fail(where + "/re", "missing");
  s.re = detail::get_numbers(j["re"], where + "/re");
  if (j.contains("im")) {
    s.im = detail::get_numbers(j["im"], where + "/im");
    if (s.im.size() != s.re.size()) detail::fail(where + "/im", "length differs from re");
  } else {
    s.im.assign(s.re.size(), 0.0);
  }
  return s;
}

inline std::vector<SignalRef> parse_family(const json& j, const std::string& where) {
  if (!j.is_array()) detail::fail(where, "expected an array of signals");
  std::vector<SignalRef> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_signal_ref(j[i], where + "/" + std::to_string(i)));
  return out;
}

inline std::vector<std::vector<SignalRef>> parse_components(const json& j, const std::string& where) {
  if (!j.is_array()) detail::fail(where, "expected an array of families");
  std::vector<std::vector<SignalRef>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_family(j[i], where + "/" + std::to_string(i)));
  return out;
}

inline InstanceSpec parse_instance(const json& j) {
  detail::only_keys(j, "", {"group", "subgroup", "family", "dual", "components", "dual_components", "lambda", "N",
                            "check", "output", "tolerances", "seed"});
  InstanceSpec s;
  if (!j.contains("group")) detail::fail("/group", "missing");
  s.group = parse_group_spec(j["group"]);
  if (!j.contains("subgroup")) detail::fail("/subgroup", "missing");
  s.subgroup = parse_subgroup_spec(j["subgroup"]);
  if (j.contains("family")) s.family = parse_family(j["family"], "/family");
  if (j.contains("dual")) s.dual = parse_family(j["dual"], "/dual");
  if (j.contains("components")) s.components = parse_components(j["components"], "/components");
  if (j.contains("dual_components")) s.dual_components = parse_components(j["dual_components"], "/dual_components");
  if (j.contains("lambda")) s.lambda = parse_subgroup_spec(j["lambda"], "/lambda");
  if (j.contains("N")) s.n = detail::get_int(j["N"], "/N");
  if (j.contains("check")) {
    if (!j["check"].is_string()) detail::fail("/check", "expected a string");
    s.check = j["check"].get<std::string>();
    if (*s.check != "dual" && *s.check != "orthogonal") detail::fail("/check", "expected \"dual\" or \"orthogonal\"");
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) detail::fail("/output", "expected a path");
    s.output = j["output"].get<std::string>();
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    detail::only_keys(t, "/tolerances", {"dual", "oracle", "support", "rank", "lower"});
    auto opt = [&](const char* key, std::optional<double>& dst) {
      if (t.contains(key)) dst = detail::get_number(t[key], std::string("/tolerances/") + key);
    };
    opt("dual", s.tolerances.dual);
    opt("oracle", s.tolerances.oracle);
    opt("support", s.tolerances.support);
    opt("rank", s.tolerances.rank);
    opt("lower", s.tolerances.lower);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) detail::fail("/seed", "expected a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  return s;
}

inline InstanceSpec parse_instance_text(const std::string& text, const std::string& source = "spec") {
  return parse_instance(parse_text(text, source));
}

// ---------------------------------------------------------------- serialization

inline ordered_json to_json(const GroupSpec& g) {
  ordered_json j;
  j["kind"] = g.kind;
  if (g.kind == "product") j["orders"] = g.orders;
  if (g.kind == "cayley") j["table"] = g.table;
  if (g.kind == "named") j["name"] = g.name;
  return j;
}

inline ordered_json to_json(const SubgroupSpec& s) {
  ordered_json j = ordered_json::object();
  if (s.strides) j["strides"] = *s.strides;
  if (s.generators) j["generators"] = *s.generators;
  return j;
}

inline ordered_json to_json(const SignalRef& s) {
  if (s.path) return *s.path;
  ordered_json j;
  j["re"] = s.re;
  j["im"] = s.im;
  return j;
}

inline ordered_json family_json(const std::vector<SignalRef>& f) {
  ordered_json j = ordered_json::array();
  for (const auto& s : f) j.push_back(to_json(s));
  return j;
}

inline ordered_json to_json(const InstanceSpec& s) {
  ordered_json j;
  j["group"] = to_json(s.group);
  j["subgroup"] = to_json(s.subgroup);
  if (!s.family.empty()) j["family"] = family_json(s.family);
  if (!s.dual.empty()) j["dual"] = family_json(s.dual);
  auto comps = [](const std::vector<std::vector<SignalRef>>& c) {
    ordered_json a = ordered_json::array();
    for (const auto& f : c) a.push_back(family_json(f));
    return a;
  };
  if (!s.components.empty()) j["components"] = comps(s.components);
  if (!s.dual_components.empty()) j["dual_components"] = comps(s.dual_components);
  if (s.lambda) j["lambda"] = to_json(*s.lambda);
  if (s.n) j["N"] = *s.n;
  if (s.check) j["check"] = *s.check;
  if (s.output) j["output"] = *s.output;
  ordered_json t = ordered_json::object();
  if (s.tolerances.dual) t["dual"] = *s.tolerances.dual;
  if (s.tolerances.oracle) t["oracle"] = *s.tolerances.oracle;
  if (s.tolerances.support) t["support"] = *s.tolerances.support;
  if (s.tolerances.rank) t["rank"] = *s.tolerances.rank;
  if (s.tolerances.lower) t["lower"] = *s.tolerances.lower;
  if (!t.empty()) j["tolerances"] = t;
  if (s.seed) j["seed"] = *s.seed;
  return j;
}

inline SignalRef signal_ref(const Signal& f) {
  SignalRef s;
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    s.re.push_back(f.values(i).real());
    s.im.push_back(f.values(i).imag());
  }
  return s;
}

inline std::vector<SignalRef> family_refs(const GeneratorFamily& fam) {
  std::vector<SignalRef> out;
  for (const auto& f : fam) out.push_back(signal_ref(f));
  return out;
}

inline ordered_json signal_json(const Signal& f) { return to_json(signal_ref(f)); }

// ---------------------------------------------------------------- resolution

inline GroupPtr build_group(const GroupSpec& g) {
  if (g.kind == "product") return make_product_group(g.orders);
  if (g.kind == "cayley") return make_cayley_group(g.table);
  return named_group(g.name);
}

inline Subgroup build_subgroup(const GroupPtr& g, const SubgroupSpec& s) {
  if (s.strides) return make_subgroup_strides(g, *s.strides);
  return make_subgroup_generators(g, *s.generators);
}

/// Two columns (re, im) per line; a non-numeric first line is a header.
inline Signal parse_signal_csv(const std::string& text, const GroupPtr& g, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::vector<Complex> vals;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double re = 0, im = 0;
    std::string extra;
    if (!(ls >> re)) {
      if (vals.empty() && lineno == 1) continue;
      throw Error(ErrorKind::parse_error, source + ": line " + std::to_string(lineno) + ": expected numbers");
    }
    if (!(ls >> im) || (ls >> extra))
      throw Error(ErrorKind::parse_error, source + ": line " + std::to_string(lineno) + ": expected two columns re, im");
    vals.emplace_back(re, im);
  }
  Vector v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  if (static_cast<std::size_t>(v.size()) != g->order())
    throw Error(ErrorKind::shape_mismatch, source + ": " + std::to_string(v.size()) + " values for a group of order " +
                                               std::to_string(g->order()));
  return Signal(g, v);
}

inline Signal signal_from_arrays(const std::vector<double>& re, const std::vector<double>& im, const GroupPtr& g,
                                 const std::string& where) {
  if (re.size() != g->order())
    throw Error(ErrorKind::shape_mismatch, where + ": " + std::to_string(re.size()) + " values for a group of order " +
                                               std::to_string(g->order()));
  Vector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
  return Signal(g, v);
}

inline Signal read_signal_file(const std::filesystem::path& path, const GroupPtr& g) {
  const std::string text = read_file(path);
  if (path.extension() == ".csv") return parse_signal_csv(text, g, path.string());
  const SignalRef ref = parse_signal_ref(parse_text(text, path.string()), path.string());
  if (ref.path) throw Error(ErrorKind::parse_error, path.string() + ": expected {\"re\": [...], \"im\": [...]}");
  return signal_from_arrays(ref.re, ref.im, g, path.string());
}

inline Signal resolve_signal(const SignalRef& s, const GroupPtr& g, const std::filesystem::path& base,
                             const std::string& where) {
  if (s.path) {
    std::filesystem::path p(*s.path);
    if (p.is_relative()) p = base / p;
    return read_signal_file(p, g);
  }
  return signal_from_arrays(s.re, s.im, g, where);
}

inline GeneratorFamily resolve_family(const std::vector<SignalRef>& f, const GroupPtr& g,
                                      const std::filesystem::path& base, const std::string& where) {
  GeneratorFamily out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(resolve_signal(f[i], g, base, where + "/" + std::to_string(i)));
  return out;
}

struct Instance {
  GroupPtr group;
  Subgroup sub;
  GeneratorFamily family, dual;
  std::vector<GeneratorFamily> components, dual_components;
  std::optional<Subgroup> lambda;
  Tolerances tol;
};

inline Tolerances apply(const ToleranceOverrides& o, Tolerances t = {}) {
  if (o.dual) t.dual = *o.dual;
  if (o.oracle) t.oracle = *o.oracle;
  if (o.support) t.support = *o.support;
  if (o.rank) t.rank = *o.rank;
  if (o.lower) t.lower = *o.lower;
  t.validate();
  return t;
}

inline Instance resolve(const InstanceSpec& s, const std::filesystem::path& base = ".") {
  Instance in;
  in.group = build_group(s.group);
  in.sub = build_subgroup(in.group, s.subgroup);
  in.family = resolve_family(s.family, in.group, base, "/family");
  in.dual = resolve_family(s.dual, in.group, base, "/dual");
  for (std::size_t i = 0; i < s.components.size(); ++i)
    in.components.push_back(resolve_family(s.components[i], in.group, base, "/components/" + std::to_string(i)));
  for (std::size_t i = 0; i < s.dual_components.size(); ++i)
    in.dual_components.push_back(
        resolve_family(s.dual_components[i], in.group, base, "/dual_components/" + std::to_string(i)));
  if (s.lambda) in.lambda = build_subgroup(in.group, *s.lambda);
  in.tol = apply(s.tolerances);
  return in;
}

// ---------------------------------------------------------------- reports

inline ordered_json to_json(const Tolerances& t) {
  ordered_json j;
  j["dual"] = t.dual;
  j["oracle"] = t.oracle;
  j["support"] = t.support;
  j["rank"] = t.rank;
  j["lower"] = t.lower;
  return j;
}

inline ordered_json to_json(const FrameBounds& fb) {
  ordered_json j;
  j["bessel_bound"] = fb.bessel_bound;
  j["lower_bound"] = fb.lower_bound;
  j["is_bessel"] = fb.is_bessel;
  j["is_frame_for_span"] = fb.is_frame_for_span;
  j["is_riesz"] = fb.is_riesz;
  j["ranks"] = fb.ranks;
  return j;
}

inline ordered_json to_json(const VerificationReport& r) {
  ordered_json j;
  j["criterion"] = r.criterion;
  j["verdict"] = r.holds ? "holds" : "fails";
  j["max_residual"] = r.max_residual;
  j["tolerances"] = to_json(r.tolerances);
  ordered_json off = ordered_json::array();
  for (const auto& o : r.offenders) {
    ordered_json e;
    e["alpha"] = o.alpha;
    e["residual"] = o.residual;
    off.push_back(e);
  }
  j["offenders"] = off;
  ordered_json m = ordered_json::object();
  for (const auto& [k, v] : r.metrics) m[k] = v;
  j["metrics"] = m;
  ordered_json f = ordered_json::object();
  for (const auto& [k, v] : r.flags) f[k] = v;
  j["flags"] = f;
  if (r.frame_bounds) j["frame_bounds"] = to_json(*r.frame_bounds);
  return j;
}

inline ordered_json complex_json(Complex z) {
  ordered_json j = ordered_json::array();
  j.push_back(z.real());
  j.push_back(z.imag());
  return j;
}

}  // namespace zakframe::io
