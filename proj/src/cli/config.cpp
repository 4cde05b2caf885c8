#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "restframe/errors.hpp"

namespace restframe::cli {

ConfigSection::ConfigSection(json value, std::string path) : value_(std::move(value)), path_(std::move(path)) {
  if (value_.is_null()) value_ = json::object();
  if (!value_.is_object()) throw ValidationError(path_ + ": expected a JSON object");
}

std::string ConfigSection::where(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

bool ConfigSection::has(const std::string& key) const { return value_.contains(key); }

const json* ConfigSection::lookup(const std::string& key) {
  consumed_.insert(key);
  auto it = value_.find(key);
  if (it == value_.end()) return nullptr;
  return &*it;
}

double ConfigSection::number(const std::string& key, double fallback) {
  const json* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_number()) throw ValidationError(where(key) + ": expected a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) throw ValidationError(where(key) + ": must be finite");
  return x;
}

double ConfigSection::positive(const std::string& key, double fallback) {
  const double x = number(key, fallback);
  if (!(x > 0.0)) throw ValidationError(where(key) + ": must be > 0");
  return x;
}

std::int64_t ConfigSection::integer(const std::string& key, std::int64_t fallback, std::int64_t min_value) {
  const json* v = lookup(key);
  std::int64_t x = fallback;
  if (v) {
    if (!v->is_number_integer()) throw ValidationError(where(key) + ": expected an integer");
    x = v->get<std::int64_t>();
  }
  if (x < min_value) throw ValidationError(where(key) + ": must be >= " + std::to_string(min_value));
  return x;
}

bool ConfigSection::boolean(const std::string& key, bool fallback) {
  const json* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ValidationError(where(key) + ": expected true or false");
  return v->get<bool>();
}

std::string ConfigSection::string(const std::string& key, const std::string& fallback) {
  const json* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_string()) throw ValidationError(where(key) + ": expected a string");
  return v->get<std::string>();
}

std::vector<double> ConfigSection::numbers(const std::string& key, const std::vector<double>& fallback) {
  const json* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_array()) throw ValidationError(where(key) + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : *v) {
    if (!e.is_number()) throw ValidationError(where(key) + ": expected an array of numbers");
    out.push_back(e.get<double>());
    if (!std::isfinite(out.back())) throw ValidationError(where(key) + ": entries must be finite");
  }
  return out;
}

std::vector<std::int64_t> ConfigSection::integers(const std::string& key, const std::vector<std::int64_t>& fallback) {
  const json* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_array()) throw ValidationError(where(key) + ": expected an array of integers");
  std::vector<std::int64_t> out;
  for (const auto& e : *v) {
    if (!e.is_number_integer()) throw ValidationError(where(key) + ": expected an array of integers");
    out.push_back(e.get<std::int64_t>());
  }
  return out;
}

Vec3 ConfigSection::vec3(const std::string& key, const Vec3& fallback) {
  if (!has(key)) {
    consumed_.insert(key);
    return fallback;
  }
  const std::vector<double> v = numbers(key, {});
  if (v.size() != 3) throw ValidationError(where(key) + ": expected 3 numbers");
  return {v[0], v[1], v[2]};
}

ConfigSection ConfigSection::section(const std::string& key) {
  const json* v = lookup(key);
  if (!v) return ConfigSection(json::object(), where(key));
  if (!v->is_object()) throw ValidationError(where(key) + ": expected an object");
  return ConfigSection(*v, where(key));
}

PotentialSpec ConfigSection::potential(const std::string& key, const std::string& default_kind,
                                       const std::vector<double>& default_coefficients) {
  const bool present = has(key);
  ConfigSection s = section(key);
  PotentialSpec spec;
  spec.kind = s.string("kind", default_kind);
  const bool same_kind = !present || spec.kind == default_kind;
  spec.coefficients = s.numbers("coefficients", same_kind ? default_coefficients : std::vector<double>{});
  s.finish();
  spec.make();
  return spec;
}

Potential PotentialSpec::make() const {
  auto need = [&](std::size_t n) {
    if (coefficients.size() != n) {
      throw ValidationError("potential.coefficients: " + kind + " takes " + std::to_string(n) + " coefficient(s)");
    }
  };
  if (kind == "free") {
    need(0);
    return Potential::free();
  }
  if (kind == "coulomb") {
    need(1);
    return Potential::coulomb(coefficients[0]);
  }
  if (kind == "oscillator") {
    need(1);
    return Potential::oscillator(coefficients[0]);
  }
  if (kind == "custom-polynomial") {
    if (coefficients.empty()) throw ValidationError("potential.coefficients: custom-polynomial needs coefficients");
    return Potential::polynomial(coefficients);
  }
  throw ValidationError("potential.kind: unknown potential kind '" + kind + "'");
}

void ConfigSection::finish() const {
  for (const auto& [k, v] : value_.items()) {
    if (!consumed_.count(k)) throw ValidationError("unknown configuration key '" + where(k) + "'");
  }
}

ExperimentConfig parse_config(const std::string& text, const std::string& experiment) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg{experiment, ConfigSection(doc, ""), std::nullopt};
  const std::string named = cfg.root.string("experiment", experiment);
  if (named != experiment) {
    throw ValidationError("config is for experiment '" + named + "', not '" + experiment + "'");
  }
  const std::string out = cfg.root.string("output_dir", "");
  if (!out.empty()) cfg.output_dir = out;
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::string& experiment) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), experiment);
}

}  // namespace restframe::cli
