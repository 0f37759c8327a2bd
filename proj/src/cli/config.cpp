/**
 * Copyright 2026 The ffbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ffbench/cli/config.hpp"

#include <set>

#include "ffbench/datasets/io.hpp"
#include "ffbench/error.hpp"
#include "json.hpp"

namespace ffb {

using nlohmann::json;

namespace {

std::string read_text(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("config file " + path.string() + " does not exist");
  const Bytes b = read_file(path);
  return std::string(b.begin(), b.end());
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config." + path + ": " + msg);
}

// Reads fields of one JSON object, recording which keys were consumed.
class Fields {
 public:
  Fields(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) fail(prefix_.empty() ? "(root)" : prefix_, "expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string path(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  template <typename T>
  void read(const std::string& key, T& out, const char* type_name) {
    const json* v = find(key);
    if (!v) return;
    try {
      out = v->get<T>();
    } catch (const json::exception&) {
      fail(path(key), std::string("expected ") + type_name);
    }
  }

  void read_uint(const std::string& key, std::size_t& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_number_unsigned()) fail(path(key), "expected a non-negative integer");
    out = v->get<std::size_t>();
  }

  void read_int(const std::string& key, int& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_number_integer()) fail(path(key), "expected an integer");
    out = v->get<int>();
  }

  void read_real(const std::string& key, double& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_number()) fail(path(key), "expected a number");
    out = v->get<double>();
  }

  void read_uint_array(const std::string& key, std::vector<std::size_t>& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_array()) fail(path(key), "expected an array of non-negative integers");
    out.clear();
    for (const auto& e : *v) {
      if (!e.is_number_unsigned()) fail(path(key), "expected an array of non-negative integers");
      out.push_back(e.get<std::size_t>());
    }
  }

  template <typename E, typename Parse>
  void read_enum(const std::string& key, E& out, Parse parse) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_string()) fail(path(key), "expected a string");
    try {
      out = parse(v->get<std::string>());
    } catch (const Error& e) {
      fail(path(key), e.what());
    }
  }

  void reject_unknown() const {
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.count(key)) fail(path(key), "unknown field");
    }
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::set<std::string> seen_;
};

json parse_root(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  if (!j.contains("schema_version")) fail("schema_version", "missing");
  if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kConfigSchemaVersion) {
    fail("schema_version", "unsupported version (expected " + std::to_string(kConfigSchemaVersion) + ")");
  }
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& s) {
  write_file(path, Bytes(s.begin(), s.end()));
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  const json root = parse_root(json_text);
  ExperimentConfig c;
  Fields f(root, "");
  f.find("schema_version");
  f.read("dataset", c.dataset, "a string");
  f.read("classes", c.classes, "an integer array");
  f.read_uint("train_limit", c.train_limit);
  f.read_uint("test_limit", c.test_limit);
  f.read_enum("task", c.task, task_kind_from_string);
  f.read_enum("trainer", c.trainer, trainer_from_string);
  f.read_uint_array("widths", c.widths);
  f.read_enum("goodness_mode", c.goodness_mode, goodness_mode_from_string);
  f.read_real("theta", c.theta);
  f.read_int("epochs", c.epochs);
  f.read_int("probe_epochs", c.probe_epochs);
  f.read_uint("batch_size", c.batch_size);
  f.read_uint("probe_batch_size", c.probe_batch_size);
  f.read_real("learning_rate", c.learning_rate);
  if (const json* v = f.find("probe_learning_rate"); v && !v->is_null()) {
    if (!v->is_number()) fail("probe_learning_rate", "expected a number or null");
    c.probe_learning_rate = v->get<double>();
  }
  if (const json* v = f.find("seed")) {
    if (!v->is_number_unsigned()) fail("seed", "expected a non-negative integer");
    c.seed = v->get<std::uint64_t>();
  }
  f.read_uint_array("layer_set", c.layer_set);
  f.read_enum("probe_label_mode", c.probe_label_mode, label_mode_from_string);
  f.read("probe_normalized", c.probe_normalized, "a boolean");
  f.read("normalize_between", c.normalize_between, "a boolean");
  f.read_int("curve_every", c.curve_every);
  f.read_int("curve_probe_epochs", c.curve_probe_epochs);
  if (const json* v = f.find("mask")) {
    Fields m(*v, "mask");
    m.read_int("repetitions", c.mask.repetitions);
    m.read_real("threshold", c.mask.threshold);
    m.reject_unknown();
  }
  f.read("output_dir", c.output_dir, "a string");
  f.reject_unknown();
  c.validate();
  return c;
}

std::string experiment_config_to_json(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["dataset"] = c.dataset;
  j["classes"] = c.classes;
  j["train_limit"] = c.train_limit;
  j["test_limit"] = c.test_limit;
  j["task"] = to_string(c.task);
  j["trainer"] = to_string(c.trainer);
  j["widths"] = c.widths;
  j["goodness_mode"] = to_string(c.goodness_mode);
  j["theta"] = c.theta;
  j["epochs"] = c.epochs;
  j["probe_epochs"] = c.probe_epochs;
  j["batch_size"] = c.batch_size;
  j["probe_batch_size"] = c.probe_batch_size;
  j["learning_rate"] = c.learning_rate;
  j["probe_learning_rate"] = c.probe_learning_rate ? json(*c.probe_learning_rate) : json(nullptr);
  j["seed"] = c.seed;
  j["layer_set"] = c.layer_set;
  j["probe_label_mode"] = to_string(c.probe_label_mode);
  j["probe_normalized"] = c.probe_normalized;
  j["normalize_between"] = c.normalize_between;
  j["curve_every"] = c.curve_every;
  j["curve_probe_epochs"] = c.curve_probe_epochs;
  j["mask"] = {{"repetitions", c.mask.repetitions}, {"threshold", c.mask.threshold}};
  j["output_dir"] = c.output_dir;
  return j.dump(2) + "\n";
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(read_text(path));
}

void save_experiment_config(const ExperimentConfig& cfg, const std::filesystem::path& path) {
  write_text(path, experiment_config_to_json(cfg));
}

void EmbedConfig::validate() const {
  if (run_dir.empty()) fail("run_dir", "must not be empty");
  if (cap < 1 || cap > kMaxEmbedSamples) fail("cap", "must lie in [1, " + std::to_string(kMaxEmbedSamples) + "]");
  if (label < 0) fail("label", "must be non-negative");
  if (!(perplexity > 0.0)) fail("perplexity", "must be positive");
  if (static_cast<double>(cap) < 3.0 * perplexity) fail("perplexity", "needs cap >= 3·perplexity");
  if (iterations < 0) fail("iterations", "must be non-negative");
  if (output.empty()) fail("output", "must not be empty");
}

EmbedConfig parse_embed_config(const std::string& json_text) {
  const json root = parse_root(json_text);
  EmbedConfig c;
  Fields f(root, "");
  f.find("schema_version");
  f.read("run_dir", c.run_dir, "a string");
  f.read_enum("split", c.split, split_from_string);
  f.read_uint("cap", c.cap);
  f.read_uint_array("layer_set", c.layer_set);
  f.read_enum("label_mode", c.label_mode, label_mode_from_string);
  f.read_int("label", c.label);
  f.read_real("perplexity", c.perplexity);
  f.read_int("iterations", c.iterations);
  if (const json* v = f.find("seed")) {
    if (!v->is_number_unsigned()) fail("seed", "expected a non-negative integer");
    c.seed = v->get<std::uint64_t>();
  }
  f.read("output", c.output, "a string");
  f.reject_unknown();
  c.validate();
  return c;
}

std::string embed_config_to_json(const EmbedConfig& c) {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["run_dir"] = c.run_dir;
  j["split"] = to_string(c.split);
  j["cap"] = c.cap;
  j["layer_set"] = c.layer_set;
  j["label_mode"] = to_string(c.label_mode);
  j["label"] = c.label;
  j["perplexity"] = c.perplexity;
  j["iterations"] = c.iterations;
  j["seed"] = c.seed;
  j["output"] = c.output;
  return j.dump(2) + "\n";
}

EmbedConfig load_embed_config(const std::filesystem::path& path) { return parse_embed_config(read_text(path)); }

}  // namespace ffb
