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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "curator/repo_client.hpp"

namespace curator {

// DOIs carry the 10.5072 test prefix so they can never resolve.
inline constexpr std::string_view kMockDoiPrefix = "10.5072/mockdepot.";

// Hands out "10.5072/mockdepot.<id>" exactly once per article.
class DoiMinter {
 public:
  std::string mint(ArticleId id);
  bool minted(ArticleId id) const { return minted_.contains(id); }
  void restore(ArticleId id) { minted_.insert(id); }

 private:
  std::set<ArticleId> minted_;
};

struct OpLogEntry {
  std::string op;
  ArticleId article_id = 0;
  std::string detail;

  friend bool operator==(const OpLogEntry&, const OpLogEntry&) = default;
};

// Frozen content of one published version.
struct PublishedVersion {
  std::int64_t version = 0;
  ArticleMeta meta;
  std::vector<FileEntry> files;
  std::vector<AuthorId> authors;

  friend bool operator==(const PublishedVersion&, const PublishedVersion&) = default;
};

// In-process reference depot. Every method takes the caller's token and
// enforces the same contract as the HTTP facade; all state transitions are
// serialized behind one mutex, so the op log is a linearization of the
// successful mutations.
class MockDepot {
 public:
  explicit MockDepot(std::string accepted_token);

  MockDepot(const MockDepot&) = delete;
  MockDepot& operator=(const MockDepot&) = delete;

  ArticleRecord create_article(std::string_view token, const ArticleMeta& meta);
  FileEntry upload_file(std::string_view token, ArticleId id, const std::string& name,
                        std::string bytes);
  std::vector<ArticleRecord> search_by_tag(std::string_view token, std::string_view tag) const;
  ArticleRecord add_tag(std::string_view token, ArticleId id, std::string_view tag);
  ArticleRecord add_authors(std::string_view token, ArticleId id,
                            const std::vector<AuthorId>& author_ids);
  PublishResult publish_article(std::string_view token, ArticleId id);
  ArticleRecord get_article(std::string_view token, ArticleId id) const;

  // Observability for tests and tooling; no auth.
  std::vector<OpLogEntry> op_log() const;
  std::size_t article_count() const;
  std::vector<ArticleRecord> articles() const;
  std::vector<PublishedVersion> published_versions(ArticleId id) const;
  // version 0 addresses the working head; otherwise a published version.
  std::optional<std::string> stored_bytes(ArticleId id, std::int64_t version,
                                          std::string_view name) const;
  bool checks_token(std::string_view token) const { return token == accepted_token_; }

  // Canonical text dump of the whole state, equal for equal states.
  std::string dump() const;

  // JSON-lines persistence: one article per line in the wire representation,
  // plus counter, blob and op-log lines.
  void save(const std::filesystem::path& path) const;
  static std::unique_ptr<MockDepot> load(const std::filesystem::path& path,
                                         std::string accepted_token);

 private:
  struct StoredArticle {
    ArticleRecord head;
    std::vector<PublishedVersion> versions;
  };

  void authorize(std::string_view token) const;
  StoredArticle& find(ArticleId id);
  const StoredArticle& find(ArticleId id) const;
  static bool has_pending_changes(const StoredArticle& article);
  void drop_unreferenced_blob(const StoredArticle& article, FileId file_id);
  void log(std::string op, ArticleId id, std::string detail);

  std::string accepted_token_;
  mutable std::mutex mutex_;
  ArticleId next_article_id_ = 1;
  FileId next_file_id_ = 1;
  std::map<ArticleId, StoredArticle> articles_;
  std::map<FileId, std::string> blobs_;
  DoiMinter minter_;
  std::vector<OpLogEntry> op_log_;

  friend class DepotStore;
};

// RepoClient over a MockDepot living in the same process.
class InProcessClient final : public RepoClient {
 public:
  InProcessClient(MockDepot& depot, std::string token)
      : depot_(depot), token_(std::move(token)) {}

  ArticleRecord create_article(const ArticleMeta& meta) override;
  FileEntry upload_file(ArticleId id, const std::filesystem::path& local_path) override;
  std::vector<ArticleRecord> search_by_tag(std::string_view tag) override;
  ArticleRecord add_tag(ArticleId id, std::string_view tag) override;
  ArticleRecord add_authors(ArticleId id, const std::vector<AuthorId>& author_ids) override;
  PublishResult publish_article(ArticleId id) override;
  ArticleRecord get_article(ArticleId id) override;

 private:
  MockDepot& depot_;
  std::string token_;
};

}  // namespace curator
