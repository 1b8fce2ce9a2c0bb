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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace curator::testing {

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::filesystem::path& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

// Runs through /bin/sh; stderr is merged into out when merge_stderr is set.
CommandResult run_shell(const std::string& command, bool merge_stderr = false);
std::string shell_quote(std::string_view text);

// Runs git with a fixed identity and clock inside dir; throws on failure.
std::string git(const std::filesystem::path& dir, const std::string& args);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string random_bytes(std::mt19937_64& rng, std::size_t size);

// A small repository with a subdirectory, an executable and a symlink.
struct FixtureRepo {
  std::filesystem::path path;
  std::vector<std::string> commits;  // oldest first
};
FixtureRepo make_fixture_repo(const std::filesystem::path& dir, int commit_count = 2);

// Unpacks with python's zipfile, honouring the unix mode bits and symlinks
// recorded in the archive; independent of the archive writer under test.
void extract_zip(const std::filesystem::path& archive, const std::filesystem::path& dest);

// Sorted one-line-per-entry listing of a tree (type, path, size and content
// hash, or link target), skipping .git.
std::vector<std::string> describe_tree(const std::filesystem::path& root);

// A small advection case laid out like a simulation directory: the project
// file, two input files, the solver repository, and (after simulate) three
// output files including a .stat file with an XML header.
struct TopHatCase {
  std::filesystem::path dir;
  std::filesystem::path project;
  FixtureRepo solver;
};
TopHatCase make_top_hat(const std::filesystem::path& root);
void simulate_top_hat(const TopHatCase& c);

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the built command-line binary with shell-quoted args.
CliResult run_cli(const std::vector<std::string>& args, const std::string& env = "");

}  // namespace curator::testing
