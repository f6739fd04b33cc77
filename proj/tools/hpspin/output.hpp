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

#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace hpspin::cli {

// Accumulates CSV text with round-trip precision.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  CsvTable& cell(double v);
  CsvTable& cell(long long v);
  CsvTable& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvTable& cell(const std::string& v);
  void end_row();

  std::string str() const { return out_.str(); }

 private:
  std::size_t ncols_;
  std::size_t in_row_ = 0;
  std::ostringstream out_;
};

std::string format_double(double v);

std::string sha256_hex(const std::string& data);

// Files are written into a staging directory beside the destination and
// moved into place by commit(); a stage destroyed without commit leaves the
// destination untouched.
class OutputStage {
 public:
  explicit OutputStage(std::filesystem::path dest);
  ~OutputStage();
  OutputStage(const OutputStage&) = delete;
  OutputStage& operator=(const OutputStage&) = delete;

  void write(const std::string& name, const std::string& content);
  void write_csv(const std::string& name, const CsvTable& table);
  void write_json(const std::string& name, const nlohmann::ordered_json& j);

  // Adds manifest.json and moves everything into the destination.
  void commit(nlohmann::ordered_json manifest);

 private:
  std::filesystem::path dest_;
  std::filesystem::path stage_;
  std::map<std::string, std::string> digests_;
  std::map<std::string, std::uintmax_t> sizes_;
};

}  // namespace hpspin::cli
