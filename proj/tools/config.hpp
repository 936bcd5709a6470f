#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "limitlab/error.hpp"
#include "limitlab/groups.hpp"

namespace limitlab::cli {

using json = nlohmann::json;

// Invalid configuration: bad JSON, missing or unknown fields, wrong types.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Typed access to one JSON object. Every key read is recorded, and finish()
// rejects whatever was not read, naming the full field path.
class Fields {
 public:
  Fields(const json& object, std::string path);

  bool has(const std::string& key) const;
  int integer(const std::string& key);
  int integer(const std::string& key, int fallback);
  double number(const std::string& key);
  double number(const std::string& key, double fallback);
  std::string string(const std::string& key);
  std::string string(const std::string& key, const std::string& fallback);
  bool boolean(const std::string& key, bool fallback);
  std::vector<double> numbers(const std::string& key);
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback);
  std::vector<int> integers(const std::string& key);
  std::vector<int> integers(const std::string& key, std::vector<int> fallback);
  // Complex number as a number or a [re, im] pair.
  std::complex<double> complex(const std::string& key);
  Fields object(const std::string& key);
  std::vector<Fields> objects(const std::string& key);

  std::string path(const std::string& key) const;
  void finish() const;

 private:
  const json& get(const std::string& key);
  const json* obj_;
  std::string path_;
  std::set<std::string> used_;
};

struct ExperimentConfig {
  json document;
  std::string hash;  // fnv1a64 of the canonical dump
  long long seed = 0;
  std::string name;
};

// Parses the document and checks the top-level keys (seed, name, group,
// params); seed is mandatory. Syntax errors report line and column.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>");

// Group from {"kind": ..., parameters}. Kinds: schottky_demo,
// fuchsian_schottky, punctured_torus, cyclic, schottky.
groups::GroupPresentation parse_group(Fields f);

}  // namespace limitlab::cli
