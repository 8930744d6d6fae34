// Copyright 2026 The rwelect Authors
// SPDX-License-Identifier: Apache-2.0
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

#include "rwelect/run_config.hpp"

#include <fstream>
#include <sstream>

#include "rwelect/json_io.hpp"

namespace rwelect {

using nlohmann::json;

std::optional<json> RunConfigFile::given(const std::string& pointer) const {
  const json::json_pointer ptr(pointer);
  if (!raw.contains(ptr)) return std::nullopt;
  return raw.at(ptr);
}

RunConfigFile parse_run_config(std::string_view text) {
  RunConfigFile file;
  try {
    file.raw = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const json& j = file.raw;
  reject_unknown_keys(j,
                      {"election", "seed", "latency", "faults", "stop", "draw_script",
                       "iterations", "trace", "out_dir"},
                      "config");
  try {
    json setup = json::object();
    for (const char* key : {"election", "seed", "latency", "faults", "stop", "draw_script"}) {
      if (j.contains(key)) setup[key] = j.at(key);
    }
    file.setup = setup.get<SimSetup>();
    if (j.contains("iterations")) file.iterations = j.at("iterations").get<std::uint64_t>();
    if (j.contains("trace")) file.trace_path = j.at("trace").get<std::string>();
    if (j.contains("out_dir")) file.out_dir = j.at("out_dir").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  file.setup.validate();
  return file;
}

RunConfigFile load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace rwelect
