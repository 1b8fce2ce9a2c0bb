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

#include <compare>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace curator {

// A full SHA-1 revision id: exactly 40 lowercase hex characters.
class CommitHash {
 public:
  static std::optional<CommitHash> try_parse(std::string_view text);
  // Throws Error(ParseError) on malformed input.
  static CommitHash parse(std::string_view text);

  const std::string& str() const noexcept { return value_; }
  std::string short_hash() const { return value_.substr(0, 7); }

  friend auto operator<=>(const CommitHash&, const CommitHash&) = default;

 private:
  explicit CommitHash(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

struct RepoInfo {
  std::filesystem::path local_path;
  std::optional<std::string> remote_url;
  CommitHash head;
};

// Reads HEAD and the default remote of the repository at `local_path`.
// Throws Error(NotARepository) or Error(NoCommits).
RepoInfo inspect_repo(const std::filesystem::path& local_path);

// Accepts full or abbreviated hashes, "HEAD", and branch/tag/ref names;
// annotated tags are peeled. Throws Error(UnknownRef) when nothing (or more
// than one object) matches.
CommitHash resolve_commit(const std::filesystem::path& local_path, std::string_view ref);

// Writes a zip of the tree at `commit` with every entry under
// "<name>-<hash[0:7]>/", entries in byte-wise lexicographic order and all
// timestamps equal to the commit time. `name` defaults to the repository
// directory name. If `dest` is a directory the archive is created inside it
// as "<name>-<hash[0:7]>.zip". Returns the archive path.
std::filesystem::path export_archive(const std::filesystem::path& local_path,
                                     const CommitHash& commit,
                                     const std::filesystem::path& dest,
                                     std::optional<std::string> name = std::nullopt);

// File paths (relative to the tree root) of the tree at `commit`, sorted.
std::vector<std::string> list_tree(const std::filesystem::path& local_path,
                                   const CommitHash& commit);

}  // namespace curator
