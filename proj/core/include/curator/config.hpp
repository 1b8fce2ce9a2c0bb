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

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "curator/repo_client.hpp"

namespace curator {

// Contents of the INI configuration file:
//
//   [depot]
//   base_url = http://localhost:8080
//   client_key = ...
//   client_secret = ...
//   token = ...
//   token_secret = ...
//   [general]
//   default_category = Computational Physics
struct PublisherConfig {
  ClientConfig depot;
  std::string default_category;
};

// Throws Error(IoError) when the file cannot be read and Error(ParseError)
// when it is not valid INI. Missing keys stay empty.
PublisherConfig load_config(const std::filesystem::path& path);

// --config flag, else $CURATOR_CONFIG, else ~/.curator.
std::filesystem::path resolve_config_path(const std::optional<std::filesystem::path>& flag);

}  // namespace curator
