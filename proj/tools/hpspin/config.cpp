// Copyright 2026 The hpspin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hpspin/types.hpp"

namespace hpspin::cli {

Fields::Fields(const nlohmann::json& obj, std::string where)
    : obj_(obj), where_(std::move(where)) {
  if (!obj_.is_object()) fail(ErrorKind::kConfig, where_ + ": expected a JSON object");
}

const nlohmann::json* Fields::find(const std::string& key) {
  seen_.insert(key);
  auto it = obj_.find(key);
  if (it == obj_.end() || it->is_null()) return nullptr;
  return &*it;
}

void Fields::bad(const std::string& key, const std::string& what) const {
  fail(ErrorKind::kConfig, where_ + "." + key + ": " + what);
}

int Fields::get_int(const std::string& key, int def, int lo, int hi) {
  int v = def;
  if (const auto* j = find(key)) {
    if (!j->is_number_integer()) bad(key, "expected an integer");
    const auto x = j->get<long long>();
    if (x < lo || x > hi) bad(key, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    v = int(x);
  }
  resolved_[key] = v;
  return v;
}

double Fields::get_double(const std::string& key, double def, double lo, double hi) {
  double v = def;
  if (const auto* j = find(key)) {
    if (!j->is_number()) bad(key, "expected a number");
    v = j->get<double>();
    if (!std::isfinite(v) || v < lo || v > hi) bad(key, "out of range");
  }
  resolved_[key] = v;
  return v;
}

std::optional<double> Fields::get_optional_double(const std::string& key, double lo, double hi) {
  const auto* j = find(key);
  if (!j) return std::nullopt;
  if (!j->is_number()) bad(key, "expected a number");
  const double v = j->get<double>();
  if (!std::isfinite(v) || v < lo || v > hi) bad(key, "out of range");
  resolved_[key] = v;
  return v;
}

bool Fields::get_bool(const std::string& key, bool def) {
  bool v = def;
  if (const auto* j = find(key)) {
    if (!j->is_boolean()) bad(key, "expected true or false");
    v = j->get<bool>();
  }
  resolved_[key] = v;
  return v;
}

std::string Fields::get_string(const std::string& key, const std::string& def,
                               const std::vector<std::string>& allowed) {
  std::string v = def;
  if (const auto* j = find(key)) {
    if (!j->is_string()) bad(key, "expected a string");
    v = j->get<std::string>();
  }
  if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), v) == allowed.end())
    bad(key, "unsupported value '" + v + "'");
  resolved_[key] = v;
  return v;
}

std::vector<int> Fields::get_int_list(const std::string& key, std::vector<int> def, int lo, int hi) {
  if (const auto* j = find(key)) {
    if (!j->is_array() || j->empty()) bad(key, "expected a non-empty array");
    def.clear();
    for (const auto& e : *j) {
      if (!e.is_number_integer()) bad(key, "expected integers");
      const auto x = e.get<long long>();
      if (x < lo || x > hi) bad(key, "entry out of range");
      def.push_back(int(x));
    }
  }
  resolved_[key] = def;
  return def;
}

std::vector<double> Fields::get_double_list(const std::string& key, std::vector<double> def,
                                            double lo, double hi) {
  if (const auto* j = find(key)) {
    if (!j->is_array() || j->empty()) bad(key, "expected a non-empty array");
    def.clear();
    for (const auto& e : *j) {
      if (!e.is_number()) bad(key, "expected numbers");
      const double x = e.get<double>();
      if (!std::isfinite(x) || x < lo || x > hi) bad(key, "entry out of range");
      def.push_back(x);
    }
  }
  resolved_[key] = def;
  return def;
}

std::vector<std::string> Fields::get_string_list(const std::string& key,
                                                 std::vector<std::string> def,
                                                 const std::vector<std::string>& allowed) {
  if (const auto* j = find(key)) {
    if (!j->is_array() || j->empty()) bad(key, "expected a non-empty array");
    def.clear();
    for (const auto& e : *j) {
      if (!e.is_string()) bad(key, "expected strings");
      def.push_back(e.get<std::string>());
    }
  }
  for (const auto& v : def)
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
      bad(key, "unsupported value '" + v + "'");
  resolved_[key] = def;
  return def;
}

void Fields::finish() const {
  for (auto it = obj_.begin(); it != obj_.end(); ++it)
    if (!seen_.count(it.key())) fail(ErrorKind::kConfig, where_ + ": unknown field '" + it.key() + "'");
}

CommonOptions read_common(Fields& f, const RunOverrides& o) {
  CommonOptions c;
  c.threads = f.get_int("threads", 1, 1, 256);
  c.band = f.get_int("band", 12, 1, 1000);
  c.tolerance = f.get_double("tolerance", 1e-9, 1e-15, 1e-3);
  if (o.threads) c.threads = *o.threads;
  if (o.band) c.band = *o.band;
  if (o.tolerance) c.tolerance = *o.tolerance;
  if (c.threads < 1 || c.band < 1 || !(c.tolerance > 0.0))
    fail(ErrorKind::kConfig, "overrides: threads and band must be positive, tolerance > 0");
  return c;
}

nlohmann::json load_config(const std::string& path, std::string* raw) {
  if (path.empty()) {
    if (raw) raw->clear();
    return nlohmann::json::object();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kConfig, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  if (raw) *raw = ss.str();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
}

}  // namespace hpspin::cli
