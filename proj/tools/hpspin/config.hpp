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


#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace hpspin::cli {

// Read-once view of a JSON object. Every accessor marks its key as known;
// finish() rejects anything left over. All failures raise ErrorKind::kConfig.
class Fields {
 public:
  Fields(const nlohmann::json& obj, std::string where);

  int get_int(const std::string& key, int def, int lo, int hi);
  double get_double(const std::string& key, double def, double lo, double hi);
  bool get_bool(const std::string& key, bool def);
  std::string get_string(const std::string& key, const std::string& def,
                         const std::vector<std::string>& allowed);
  std::vector<int> get_int_list(const std::string& key, std::vector<int> def,
                                int lo, int hi);
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> def, double lo,
                                      double hi);
  std::vector<std::string> get_string_list(
      const std::string& key, std::vector<std::string> def,
      const std::vector<std::string>& allowed);
  std::optional<double> get_optional_double(const std::string& key, double lo,
                                            double hi);

  void finish() const;

  // Values as resolved, defaults included, for the manifest.
  const nlohmann::ordered_json& resolved() const { return resolved_; }

 private:
  const nlohmann::json* find(const std::string& key);
  [[noreturn]] void bad(const std::string& key, const std::string& what) const;

  const nlohmann::json& obj_;
  std::string where_;
  std::set<std::string> seen_;
  nlohmann::ordered_json resolved_ = nlohmann::ordered_json::object();
};

struct RunOverrides {
  std::optional<int> threads;
  std::optional<int> band;
  std::optional<double> tolerance;
};

struct CommonOptions {
  int threads = 1;
  int band = 12;
  double tolerance = 1e-9;
};

// Reads "threads", "band", "tolerance" from the config, then applies flags.
CommonOptions read_common(Fields& f, const RunOverrides& o);

nlohmann::json load_config(const std::string& path, std::string* raw);

}  // namespace hpspin::cli
