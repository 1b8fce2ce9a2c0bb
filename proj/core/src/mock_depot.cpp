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

#include "curator/mock_depot.hpp"

#include <algorithm>
#include <sstream>

#include "curator/checksum.hpp"
#include "curator/error.hpp"
#include "wire.hpp"

namespace curator {

std::string DoiMinter::mint(ArticleId id) {
  if (!minted_.insert(id).second) {
    fail(ErrorKind::AlreadyMinted, "DOI already minted for article " + std::to_string(id));
  }
  return std::string(kMockDoiPrefix) + std::to_string(id);
}

MockDepot::MockDepot(std::string accepted_token) : accepted_token_(std::move(accepted_token)) {}

void MockDepot::authorize(std::string_view token) const {
  if (token.empty() || token != accepted_token_) {
    fail(ErrorKind::AuthFailure, "token rejected");
  }
}

MockDepot::StoredArticle& MockDepot::find(ArticleId id) {
  auto it = articles_.find(id);
  if (it == articles_.end()) fail(ErrorKind::NotFound, "no article " + std::to_string(id));
  return it->second;
}

const MockDepot::StoredArticle& MockDepot::find(ArticleId id) const {
  auto it = articles_.find(id);
  if (it == articles_.end()) fail(ErrorKind::NotFound, "no article " + std::to_string(id));
  return it->second;
}

void MockDepot::log(std::string op, ArticleId id, std::string detail) {
  op_log_.push_back(OpLogEntry{std::move(op), id, std::move(detail)});
}

ArticleRecord MockDepot::create_article(std::string_view token, const ArticleMeta& meta) {
  std::lock_guard lock(mutex_);
  authorize(token);
  validate(meta);
  const ArticleId id = next_article_id_++;
  StoredArticle stored;
  stored.head.article_id = id;
  stored.head.meta = meta;
  auto [it, inserted] = articles_.emplace(id, std::move(stored));
  log("create_article", id, std::string(to_string(meta.kind)) + ":" + meta.title);
  return it->second.head;
}

FileEntry MockDepot::upload_file(std::string_view token, ArticleId id, const std::string& name,
                                 std::string bytes) {
  std::lock_guard lock(mutex_);
  authorize(token);
  auto& article = find(id);
  if (name.empty() || name == "." || name == ".." ||
      name.find_first_of("/\\") != std::string::npos) {
    fail(ErrorKind::InvalidMeta, "file name must be a plain base name: '" + name + "'");
  }
  FileEntry entry;
  entry.file_id = next_file_id_++;
  entry.name = name;
  entry.size = bytes.size();
  entry.md5 = md5_hex(bytes);
  blobs_.emplace(entry.file_id, std::move(bytes));

  auto& files = article.head.files;
  auto it = std::find_if(files.begin(), files.end(),
                         [&](const FileEntry& f) { return f.name == name; });
  if (it != files.end()) {
    const FileId replaced = it->file_id;
    *it = entry;
    drop_unreferenced_blob(article, replaced);
  } else {
    files.push_back(entry);
  }
  log("upload_file", id, entry.name + ":" + entry.md5);
  return entry;
}

void MockDepot::drop_unreferenced_blob(const StoredArticle& article, FileId file_id) {
  for (const auto& version : article.versions) {
    for (const auto& f : version.files) {
      if (f.file_id == file_id) return;
    }
  }
  blobs_.erase(file_id);
}

std::vector<ArticleRecord> MockDepot::search_by_tag(std::string_view token,
                                                    std::string_view tag) const {
  std::lock_guard lock(mutex_);
  authorize(token);
  if (tag.empty()) fail(ErrorKind::InvalidMeta, "search tag is empty");
  std::vector<ArticleRecord> hits;
  for (const auto& [id, article] : articles_) {
    if (article.head.has_tag(tag)) hits.push_back(article.head);
  }
  return hits;
}

ArticleRecord MockDepot::add_tag(std::string_view token, ArticleId id, std::string_view tag) {
  std::lock_guard lock(mutex_);
  authorize(token);
  auto& article = find(id);
  if (tag.empty()) fail(ErrorKind::InvalidMeta, "tag is empty");
  if (!article.head.has_tag(tag)) {
    article.head.meta.tags.emplace_back(tag);
    log("add_tag", id, std::string(tag));
  }
  return article.head;
}

ArticleRecord MockDepot::add_authors(std::string_view token, ArticleId id,
                                     const std::vector<AuthorId>& author_ids) {
  std::lock_guard lock(mutex_);
  authorize(token);
  auto& article = find(id);
  for (AuthorId author : author_ids) {
    if (author <= 0) fail(ErrorKind::InvalidMeta, "author ids must be positive");
  }
  auto& authors = article.head.authors;
  std::string added;
  for (AuthorId author : author_ids) {
    if (std::find(authors.begin(), authors.end(), author) != authors.end()) continue;
    authors.push_back(author);
    if (!added.empty()) added += ",";
    added += std::to_string(author);
  }
  if (!added.empty()) log("add_authors", id, added);
  return article.head;
}

bool MockDepot::has_pending_changes(const StoredArticle& article) {
  if (article.versions.empty()) return !article.head.files.empty();
  const auto& last = article.versions.back();
  if (last.meta != article.head.meta || last.authors != article.head.authors) return true;
  if (last.files.size() != article.head.files.size()) return true;
  for (const auto& f : article.head.files) {
    const auto it = std::find_if(last.files.begin(), last.files.end(),
                                 [&](const FileEntry& g) { return g.name == f.name; });
    if (it == last.files.end() || it->md5 != f.md5) return true;
  }
  return false;
}

PublishResult MockDepot::publish_article(std::string_view token, ArticleId id) {
  std::lock_guard lock(mutex_);
  authorize(token);
  auto& article = find(id);
  if (!has_pending_changes(article)) {
    fail(ErrorKind::NothingToPublish,
         article.versions.empty() ? "article " + std::to_string(id) + " has no files"
                                  : "article " + std::to_string(id) + " has no pending changes");
  }
  auto& head = article.head;
  if (!head.doi) head.doi = minter_.mint(id);
  head.status = ArticleStatus::published;
  head.version += 1;
  article.versions.push_back(PublishedVersion{head.version, head.meta, head.files, head.authors});
  log("publish_article", id, "v" + std::to_string(head.version) + ":" + *head.doi);
  return PublishResult{*head.doi, head.version};
}

ArticleRecord MockDepot::get_article(std::string_view token, ArticleId id) const {
  std::lock_guard lock(mutex_);
  authorize(token);
  return find(id).head;
}

std::vector<OpLogEntry> MockDepot::op_log() const {
  std::lock_guard lock(mutex_);
  return op_log_;
}

std::size_t MockDepot::article_count() const {
  std::lock_guard lock(mutex_);
  return articles_.size();
}

std::vector<ArticleRecord> MockDepot::articles() const {
  std::lock_guard lock(mutex_);
  std::vector<ArticleRecord> out;
  out.reserve(articles_.size());
  for (const auto& [id, article] : articles_) out.push_back(article.head);
  return out;
}

std::vector<PublishedVersion> MockDepot::published_versions(ArticleId id) const {
  std::lock_guard lock(mutex_);
  return find(id).versions;
}

std::optional<std::string> MockDepot::stored_bytes(ArticleId id, std::int64_t version,
                                                   std::string_view name) const {
  std::lock_guard lock(mutex_);
  const auto& article = find(id);
  const std::vector<FileEntry>* files = nullptr;
  if (version == 0) {
    files = &article.head.files;
  } else {
    for (const auto& v : article.versions) {
      if (v.version == version) files = &v.files;
    }
  }
  if (files == nullptr) return std::nullopt;
  for (const auto& f : *files) {
    if (f.name == name) {
      auto blob = blobs_.find(f.file_id);
      if (blob == blobs_.end()) return std::nullopt;
      return blob->second;
    }
  }
  return std::nullopt;
}

std::string MockDepot::dump() const {
  std::lock_guard lock(mutex_);
  std::ostringstream out;
  out << "next_article_id=" << next_article_id_ << " next_file_id=" << next_file_id_ << "\n";
  for (const auto& [id, article] : articles_) {
    out << wire::to_json(article.head).dump() << "\n";
    for (const auto& v : article.versions) {
      wire::json files = wire::json::array();
      for (const auto& f : v.files) files.push_back(wire::to_json(f));
      out << "  v" << v.version << " " << wire::meta_to_json(v.meta).dump() << " "
          << files.dump() << " " << wire::json(v.authors).dump() << "\n";
    }
  }
  for (const auto& [file_id, bytes] : blobs_) {
    out << "blob " << file_id << " " << md5_hex(bytes) << "\n";
  }
  for (const auto& op : op_log_) {
    out << "op " << op.op << " " << op.article_id << " " << op.detail << "\n";
  }
  return out.str();
}

ArticleRecord InProcessClient::create_article(const ArticleMeta& meta) {
  return depot_.create_article(token_, meta);
}

FileEntry InProcessClient::upload_file(ArticleId id, const std::filesystem::path& local_path) {
  std::string bytes = read_file(local_path);
  return depot_.upload_file(token_, id, local_path.filename().string(), std::move(bytes));
}

std::vector<ArticleRecord> InProcessClient::search_by_tag(std::string_view tag) {
  return depot_.search_by_tag(token_, tag);
}

ArticleRecord InProcessClient::add_tag(ArticleId id, std::string_view tag) {
  return depot_.add_tag(token_, id, tag);
}

ArticleRecord InProcessClient::add_authors(ArticleId id, const std::vector<AuthorId>& ids) {
  return depot_.add_authors(token_, id, ids);
}

PublishResult InProcessClient::publish_article(ArticleId id) {
  return depot_.publish_article(token_, id);
}

ArticleRecord InProcessClient::get_article(ArticleId id) {
  return depot_.get_article(token_, id);
}

}  // namespace curator
