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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curator/repo_client.hpp"
#include "curator/vcs.hpp"

namespace curator {

struct SoftwareIdentity {
  std::string name;
  CommitHash commit;
  std::filesystem::path local_repo;
  std::string category;
  // Looked up from the repository's default remote when absent.
  std::optional<std::string> remote_url;
};

struct FilesetSpec {
  std::string title;
  std::string description;
  std::vector<std::string> tags;
  std::vector<std::filesystem::path> paths;
  std::optional<ArticleId> existing_article_id;
  // Empty means PublisherOptions::default_category.
  std::string category;
  // Opt-in: also attach the authors listed in this AUTHORS-format file.
  std::optional<std::filesystem::path> authors_file;
};

struct AuthorEntry {
  std::string display_name;
  AuthorId service_author_id = 0;

  friend bool operator==(const AuthorEntry&, const AuthorEntry&) = default;
};

// AUTHORS grammar: one author per line carrying a "<fs:ID>" token (ID a
// positive integer). The display name is the trimmed text before the token.
// Lines without a token, and lines whose first non-blank character is '#',
// are ignored. A repeated ID keeps its first occurrence.
std::vector<AuthorEntry> parse_authors(std::string_view text);
// A missing file yields no authors; an existing but unreadable one throws
// Error(IoError).
std::vector<AuthorEntry> parse_authors_file(const std::filesystem::path& path);

// Checksum sidecars: "<file>.md5" holding 32 lowercase hex digits and '\n'.
std::filesystem::path sidecar_path(const std::filesystem::path& data_file);
std::optional<std::string> read_sidecar(const std::filesystem::path& data_file);
void write_sidecar(const std::filesystem::path& data_file, std::string_view md5);
// True when the sidecar is missing, malformed, or differs from the file's
// current MD5.
bool needs_upload(const std::filesystem::path& data_file);

struct SoftwareHit {
  ArticleId article_id = 0;
  std::optional<std::string> doi;  // absent for an unfinished draft

  friend bool operator==(const SoftwareHit&, const SoftwareHit&) = default;
};

struct SoftwarePublication {
  ArticleId article_id = 0;
  std::string doi;
  bool reused = false;
};

struct DataPublication {
  ArticleId article_id = 0;
  std::string doi;
  std::int64_t version = 0;
  bool published = false;  // false when the depot had nothing new
  std::vector<std::filesystem::path> uploaded;
  std::vector<std::filesystem::path> skipped;
};

struct PublisherOptions {
  std::string default_category;
};

// Drives software and data publications against one depot. One instance
// runs one publication at a time.
class Publisher {
 public:
  explicit Publisher(RepoClient& client, PublisherOptions options = {})
      : client_(client), options_(std::move(options)) {}

  // Looks for a code article tagged with the full commit hash. With several
  // matches the lowest article id wins and a warning is emitted.
  std::optional<SoftwareHit> find_software(std::string_view name, const CommitHash& commit);

  // Reuses an existing publication of the same commit, otherwise creates,
  // uploads the source archive, tags, attaches AUTHORS and publishes. An
  // unfinished draft found by the search is completed instead of duplicated.
  SoftwarePublication publish_software(const SoftwareIdentity& identity);

  // Uploads only files whose content differs from both the local sidecar
  // and the depot copy, then publishes a new version under the same DOI.
  // A run with no changes is a successful no-op.
  DataPublication publish_data(const FilesetSpec& spec);

 private:
  RepoClient& client_;
  PublisherOptions options_;
};

}  // namespace curator
