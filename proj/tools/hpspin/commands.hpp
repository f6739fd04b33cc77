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

#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"

namespace hpspin::cli {

struct Context {
  Fields& fields;
  CommonOptions common;
  OutputStage& stage;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

using CommandFn = void (*)(Context&);

struct CommandInfo {
  const char* name;
  const char* help;
  CommandFn run;
};

const std::vector<CommandInfo>& commands();

}  // namespace hpspin::cli
