// Copyright 2026 The Curator Authors
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
//
// SPDX-License-Identifier: Apache-2.0

#include "curator/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdlib>
#include <fstream>

#include "curator/error.hpp"

namespace curator {

PublisherConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot read config file " + path.string());
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(ErrorKind::ParseError,
         path.string() + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  PublisherConfig config;
  auto get = [&](const char* key) { return tree.get<std::string>(key, ""); };
  config.depot.base_url = get("depot.base_url");
  config.depot.client_key = get("depot.client_key");
  config.depot.client_secret = get("depot.client_secret");
  config.depot.token = get("depot.token");
  config.depot.token_secret = get("depot.token_secret");
  config.default_category = get("general.default_category");
  return config;
}

std::filesystem::path resolve_config_path(const std::optional<std::filesystem::path>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CURATOR_CONFIG"); env != nullptr && *env != '\0') return env;
  const char* home = std::getenv("HOME");
  return std::filesystem::path(home != nullptr ? home : ".") / ".curator";
}

}  // namespace curator
