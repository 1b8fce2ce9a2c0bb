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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace curator {

using ArticleId = std::int64_t;
using FileId = std::int64_t;
using AuthorId = std::int64_t;

enum class ArticleKind { code, fileset };
enum class ArticleStatus { draft, published };

std::string_view to_string(ArticleKind kind) noexcept;
std::string_view to_string(ArticleStatus status) noexcept;
std::optional<ArticleKind> article_kind_from_string(std::string_view text) noexcept;
std::optional<ArticleStatus> article_status_from_string(std::string_view text) noexcept;

struct ArticleMeta {
  std::string title;
  std::string description;
  ArticleKind kind = ArticleKind::fileset;
  std::string category;
  std::vector<std::string> tags;

  friend bool operator==(const ArticleMeta&, const ArticleMeta&) = default;
};

// Throws Error(InvalidMeta) on an empty title or duplicate tags.
void validate(const ArticleMeta& meta);

struct FileEntry {
  FileId file_id = 0;
  std::string name;
  std::uint64_t size = 0;
  std::string md5;

  friend bool operator==(const FileEntry&, const FileEntry&) = default;
};

struct ArticleRecord {
  ArticleId article_id = 0;
  ArticleMeta meta;
  ArticleStatus status = ArticleStatus::draft;
  std::int64_t version = 0;
  std::optional<std::string> doi;
  std::vector<FileEntry> files;
  std::vector<AuthorId> authors;

  bool has_tag(std::string_view tag) const;
  const FileEntry* find_file(std::string_view name) const;

  friend bool operator==(const ArticleRecord&, const ArticleRecord&) = default;
};

struct PublishResult {
  std::string doi;
  std::int64_t version = 0;

  friend bool operator==(const PublishResult&, const PublishResult&) = default;
};

struct RetryPolicy {
  // Delays before the 2nd, 3rd and 4th attempt of a transport-failed call.
  std::vector<std::chrono::milliseconds> backoff{std::chrono::milliseconds(500),
                                                 std::chrono::milliseconds(1000),
                                                 std::chrono::milliseconds(2000)};
  std::chrono::seconds timeout{30};
};

struct ClientConfig {
  std::string base_url;
  std::string client_key;
  std::string client_secret;
  std::string token;
  std::string token_secret;
  RetryPolicy retry;
};

// Throws Error(ParseError) unless the URL is http(s) and every credential
// is present.
void validate_for_http(const ClientConfig& config);

// The depot contract. Every call either returns the post-state documented
// per operation or throws curator::Error with a kind from the closed set.
//
// Reads may be issued concurrently on one instance. Mutations touching the
// same article must be serialized by the caller.
class RepoClient {
 public:
  virtual ~RepoClient() = default;

  virtual ArticleRecord create_article(const ArticleMeta& meta) = 0;
  // Replaces an existing entry with the same base name.
  virtual FileEntry upload_file(ArticleId id, const std::filesystem::path& local_path) = 0;
  // Drafts are included, so an interrupted publication can be resumed.
  virtual std::vector<ArticleRecord> search_by_tag(std::string_view tag) = 0;
  virtual ArticleRecord add_tag(ArticleId id, std::string_view tag) = 0;
  virtual ArticleRecord add_authors(ArticleId id, const std::vector<AuthorId>& author_ids) = 0;
  virtual PublishResult publish_article(ArticleId id) = 0;
  virtual ArticleRecord get_article(ArticleId id) = 0;
};

}  // namespace curator
