#include "config.hpp"

#include <fstream>
#include <sstream>

#include "output.hpp"

namespace limitlab::cli {

Fields::Fields(const json& object, std::string path) : obj_(&object), path_(std::move(path)) {
  if (!object.is_object()) throw ConfigError(path_ + ": expected an object");
}

std::string Fields::path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

bool Fields::has(const std::string& key) const { return obj_->contains(key); }

const json& Fields::get(const std::string& key) {
  auto it = obj_->find(key);
  if (it == obj_->end()) throw ConfigError(path(key) + ": required field is missing");
  used_.insert(key);
  return *it;
}

int Fields::integer(const std::string& key) {
  const json& v = get(key);
  if (!v.is_number_integer()) throw ConfigError(path(key) + ": expected an integer");
  return v.get<int>();
}

int Fields::integer(const std::string& key, int fallback) { return has(key) ? integer(key) : fallback; }

double Fields::number(const std::string& key) {
  const json& v = get(key);
  if (!v.is_number()) throw ConfigError(path(key) + ": expected a number");
  return v.get<double>();
}

double Fields::number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

std::string Fields::string(const std::string& key) {
  const json& v = get(key);
  if (!v.is_string()) throw ConfigError(path(key) + ": expected a string");
  return v.get<std::string>();
}

std::string Fields::string(const std::string& key, const std::string& fallback) { return has(key) ? string(key) : fallback; }

bool Fields::boolean(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const json& v = get(key);
  if (!v.is_boolean()) throw ConfigError(path(key) + ": expected true or false");
  return v.get<bool>();
}

std::vector<double> Fields::numbers(const std::string& key) {
  const json& v = get(key);
  if (!v.is_array()) throw ConfigError(path(key) + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path(key) + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<double> Fields::numbers(const std::string& key, std::vector<double> fallback) {
  return has(key) ? numbers(key) : fallback;
}

std::vector<int> Fields::integers(const std::string& key) {
  const json& v = get(key);
  if (!v.is_array()) throw ConfigError(path(key) + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) throw ConfigError(path(key) + "[" + std::to_string(i) + "]: expected an integer");
    out.push_back(v[i].get<int>());
  }
  return out;
}

std::vector<int> Fields::integers(const std::string& key, std::vector<int> fallback) {
  return has(key) ? integers(key) : fallback;
}

std::complex<double> Fields::complex(const std::string& key) {
  const json& v = get(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(path(key) + ": expected a number or a [re, im] pair");
}

Fields Fields::object(const std::string& key) { return Fields(get(key), path(key)); }

std::vector<Fields> Fields::objects(const std::string& key) {
  const json& v = get(key);
  if (!v.is_array()) throw ConfigError(path(key) + ": expected an array of objects");
  std::vector<Fields> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], path(key) + "[" + std::to_string(i) + "]");
  return out;
}

void Fields::finish() const {
  std::string unknown;
  for (auto it = obj_->begin(); it != obj_->end(); ++it) {
    if (!used_.count(it.key())) unknown += (unknown.empty() ? "" : ", ") + path(it.key());
  }
  if (!unknown.empty()) throw ConfigError("unknown field(s): " + unknown);
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  try {
    cfg.document = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset to line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON (" + e.what() + ")");
  }
  if (!cfg.document.is_object()) throw ConfigError(origin + ": top level must be a JSON object");
  for (auto it = cfg.document.begin(); it != cfg.document.end(); ++it) {
    static const std::set<std::string> allowed{"seed", "name", "group", "params"};
    if (!allowed.count(it.key())) throw ConfigError("unknown field(s): " + it.key());
  }
  if (!cfg.document.contains("seed")) throw ConfigError("seed: required field is missing");
  if (!cfg.document["seed"].is_number_integer()) throw ConfigError("seed: expected an integer");
  cfg.seed = cfg.document["seed"].get<long long>();
  if (cfg.document.contains("name")) {
    if (!cfg.document["name"].is_string()) throw ConfigError("name: expected a string");
    cfg.name = cfg.document["name"].get<std::string>();
  }
  if (cfg.document.contains("params") && !cfg.document["params"].is_object()) throw ConfigError("params: expected an object");
  cfg.hash = "fnv1a64:" + fnv1a_hex(cfg.document.dump());
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

namespace {

groups::Circle parse_circle(Fields f) {
  groups::Circle c;
  c.center = f.complex("center");
  c.radius = f.number("radius");
  f.finish();
  return c;
}

}  // namespace

groups::GroupPresentation parse_group(Fields f) {
  const std::string kind = f.string("kind");
  if (kind == "schottky_demo") {
    const double center = f.number("center", 0.6), radius = f.number("radius", 0.25);
    f.finish();
    return groups::schottky_demo(center, radius);
  }
  if (kind == "fuchsian_schottky") {
    const double center = f.number("center", 1.2);
    f.finish();
    return groups::fuchsian_schottky(center);
  }
  if (kind == "punctured_torus") {
    const auto a = f.complex("trace_a");
    const auto b = f.complex("trace_b");
    const int n = f.integer("n", 2);
    f.finish();
    return groups::punctured_torus_group(a, b, n);
  }
  if (kind == "cyclic") {
    const int n = f.integer("n", 2);
    const double t = f.number("translation");
    f.finish();
    return groups::cyclic_group(n, t);
  }
  if (kind == "schottky") {
    const int n = f.integer("n", 2);
    std::vector<groups::SchottkyPairing> pairings;
    for (Fields p : f.objects("pairings")) {
      groups::SchottkyPairing sp;
      sp.from = parse_circle(p.object("from"));
      sp.to = parse_circle(p.object("to"));
      p.finish();
      pairings.push_back(sp);
    }
    f.finish();
    return groups::schottky_group(pairings, n);
  }
  throw ConfigError(f.path("kind") + ": unknown group kind '" + kind +
                    "' (expected schottky_demo, fuchsian_schottky, punctured_torus, cyclic or schottky)");
}

}  // namespace limitlab::cli
