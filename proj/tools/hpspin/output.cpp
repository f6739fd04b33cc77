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


#include "output.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <unistd.h>

namespace hpspin::cli {

namespace fs = std::filesystem;

CsvTable::CsvTable(std::vector<std::string> columns) : ncols_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

CsvTable& CsvTable::cell(double v) { return cell(format_double(v)); }

CsvTable& CsvTable::cell(long long v) { return cell(std::to_string(v)); }

CsvTable& CsvTable::cell(const std::string& v) {
  if (in_row_ == ncols_) throw std::logic_error("too many CSV cells in row");
  out_ << (in_row_ ? "," : "") << v;
  ++in_row_;
  return *this;
}

void CsvTable::end_row() {
  if (in_row_ != ncols_) throw std::logic_error("incomplete CSV row");
  out_ << '\n';
  in_row_ = 0;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

OutputStage::OutputStage(fs::path dest) : dest_(fs::absolute(std::move(dest))) {
  if (fs::exists(dest_) && !fs::is_directory(dest_))
    throw fs::filesystem_error("output path exists and is not a directory", dest_,
                               std::make_error_code(std::errc::not_a_directory));
  const fs::path parent = dest_.parent_path();
  fs::create_directories(parent);
  stage_ = parent / (".hpspin-stage-" + dest_.filename().string() + "-" + std::to_string(::getpid()));
  fs::remove_all(stage_);
  fs::create_directory(stage_);
}

OutputStage::~OutputStage() {
  std::error_code ec;
  fs::remove_all(stage_, ec);
}

void OutputStage::write(const std::string& name, const std::string& content) {
  std::ofstream f(stage_ / name, std::ios::binary);
  f << content;
  f.close();
  if (!f) throw fs::filesystem_error("cannot write artifact", stage_ / name,
                                     std::make_error_code(std::errc::io_error));
  digests_[name] = sha256_hex(content);
  sizes_[name] = content.size();
}

void OutputStage::write_csv(const std::string& name, const CsvTable& table) {
  write(name, table.str());
}

void OutputStage::write_json(const std::string& name, const nlohmann::ordered_json& j) {
  write(name, j.dump(2) + "\n");
}

void OutputStage::commit(nlohmann::ordered_json manifest) {
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& [name, digest] : digests_)
    files.push_back({{"name", name}, {"bytes", sizes_[name]}, {"sha256", digest}});
  manifest["files"] = files;
  write("manifest.json", manifest.dump(2) + "\n");
  fs::create_directories(dest_);
  for (const auto& [name, digest] : digests_) fs::rename(stage_ / name, dest_ / name);
}

}  // namespace hpspin::cli
