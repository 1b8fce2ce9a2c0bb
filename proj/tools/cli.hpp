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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curator/vcs.hpp"

namespace curator::cli {

enum class Verb { publish_software, publish_input, publish_output, publish_all, serve_depot, status };
enum class Backend { mock, http };

struct Command {
  Verb verb = Verb::status;
  std::optional<std::filesystem::path> project;
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> repo;
  std::optional<std::filesystem::path> version_header;
  // Mock backend state; defaults to <project dir>/.curator-depot.jsonl.
  std::optional<std::filesystem::path> depot_state;
  Backend backend = Backend::http;
  std::optional<std::string> bind;
  std::optional<std::string> software_name;
  std::string constant_prefix = "Fluidity";
  bool fileset_authors = false;
};

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

// Executes one command. Anticipated failures are reported as a single
// "error: <Kind>: <detail>" line on `err` with exit code 1.
int run(const Command& command, std::ostream& out, std::ostream& err);

// Parses argv (argv[0] is skipped) and runs it; usage errors exit with 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// A version header, when given, overrides the repository head: its first
// 40-hex token wins and must exist in the repository. Relative header paths
// are taken from `project_dir`.
CommitHash resolve_software_version(const std::filesystem::path& project_dir,
                                    const std::filesystem::path& repo,
                                    const std::optional<std::filesystem::path>& version_header);

}  // namespace curator::cli
