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

#include "curator/publisher.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <set>

#include "curator/checksum.hpp"
#include "curator/error.hpp"
#include "curator/log.hpp"

namespace curator {
namespace fs = std::filesystem;

namespace {

// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path_ = fs::temp_directory_path() /
            ("curator-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const noexcept { return path_; }

 private:
  fs::path path_;
};

std::vector<AuthorId> author_ids(const std::vector<AuthorEntry>& entries) {
  std::vector<AuthorId> ids;
  ids.reserve(entries.size());
  for (const auto& e : entries) ids.push_back(e.service_author_id);
  return ids;
}

void attach_authors(RepoClient& client, const ArticleRecord& article,
                    const std::vector<AuthorId>& ids) {
  // Skip the call entirely when nothing would change.
  const bool missing = std::any_of(ids.begin(), ids.end(), [&](AuthorId id) {
    return std::find(article.authors.begin(), article.authors.end(), id) == article.authors.end();
  });
  if (missing) client.add_authors(article.article_id, ids);
}

}  // namespace

fs::path sidecar_path(const fs::path& data_file) {
  auto p = data_file;
  p += ".md5";
  return p;
}

std::optional<std::string> read_sidecar(const fs::path& data_file) {
  const auto path = sidecar_path(data_file);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return std::nullopt;
  const auto text = read_file(path);
  if (text.size() != 33 || text.back() != '\n') return std::nullopt;
  auto digest = text.substr(0, 32);
  if (!is_md5_hex(digest)) return std::nullopt;
  return digest;
}

void write_sidecar(const fs::path& data_file, std::string_view md5) {
  if (!is_md5_hex(md5)) fail(ErrorKind::Internal, "refusing to write malformed sidecar");
  write_file_atomic(sidecar_path(data_file), std::string(md5) + "\n");
}

bool needs_upload(const fs::path& data_file) {
  const auto stored = read_sidecar(data_file);
  if (!stored) return true;
  return *stored != md5_file(data_file);
}

std::optional<SoftwareHit> Publisher::find_software(std::string_view name,
                                                    const CommitHash& commit) {
  auto hits = client_.search_by_tag(commit.str());
  std::erase_if(hits, [](const ArticleRecord& r) { return r.meta.kind != ArticleKind::code; });
  if (hits.empty()) return std::nullopt;
  std::sort(hits.begin(), hits.end(),
            [](const ArticleRecord& a, const ArticleRecord& b) { return a.article_id < b.article_id; });
  if (hits.size() > 1) {
    warn(std::to_string(hits.size()) + " code articles are tagged " + commit.str() + " for '" +
         std::string(name) + "'; using article " + std::to_string(hits.front().article_id));
  }
  return SoftwareHit{hits.front().article_id, hits.front().doi};
}

SoftwarePublication Publisher::publish_software(const SoftwareIdentity& identity) {
  if (identity.name.empty()) fail(ErrorKind::InvalidMeta, "software name is empty");

  const auto hit = find_software(identity.name, identity.commit);
  if (hit && hit->doi) return SoftwarePublication{hit->article_id, *hit->doi, true};

  // Exporting first surfaces UnknownRef before anything is created.
  TempDir scratch;
  const auto archive =
      export_archive(identity.local_repo, identity.commit, scratch.path(), identity.name);

  std::optional<std::string> remote = identity.remote_url;
  if (!remote) remote = inspect_repo(identity.local_repo).remote_url;

  ArticleRecord article;
  if (hit) {
    article = client_.get_article(hit->article_id);
  } else {
    ArticleMeta meta;
    meta.title = identity.name + " (" + identity.commit.short_hash() + ")";
    meta.description = "Source code of " + identity.name + " at commit " + identity.commit.str() + ".";
    if (remote) meta.description += " Repository: " + *remote;
    meta.kind = ArticleKind::code;
    meta.category = identity.category.empty() ? options_.default_category : identity.category;
    article = client_.create_article(meta);
  }

  const auto* existing = article.find_file(archive.filename().string());
  if (existing == nullptr || existing->md5 != md5_file(archive)) {
    client_.upload_file(article.article_id, archive);
  }

  article = client_.add_tag(article.article_id, identity.commit.str());
  const auto authors = parse_authors_file(identity.local_repo / "AUTHORS");
  if (!authors.empty()) attach_authors(client_, article, author_ids(authors));

  const auto result = client_.publish_article(article.article_id);
  return SoftwarePublication{article.article_id, result.doi, false};
}

DataPublication Publisher::publish_data(const FilesetSpec& spec) {
  if (spec.title.empty()) fail(ErrorKind::InvalidMeta, "fileset title is empty");
  if (spec.paths.empty()) fail(ErrorKind::InvalidMeta, "fileset has no files");
  std::set<std::string> names;
  for (const auto& path : spec.paths) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) fail(ErrorKind::IoError, "not a readable file: " + path.string());
    const auto name = path.filename().string();
    if (name.ends_with(".md5")) fail(ErrorKind::InvalidMeta, "checksum sidecars are never uploaded: " + name);
    if (!names.insert(name).second) fail(ErrorKind::InvalidMeta, "duplicate file name in fileset: " + name);
  }

  ArticleRecord article;
  if (spec.existing_article_id) {
    article = client_.get_article(*spec.existing_article_id);
    if (article.meta.kind != ArticleKind::fileset) {
      fail(ErrorKind::KindMismatch,
           "article " + std::to_string(article.article_id) + " is a code article, not a fileset");
    }
    for (const auto& tag : spec.tags) {
      if (!article.has_tag(tag)) article = client_.add_tag(article.article_id, tag);
    }
  } else {
    ArticleMeta meta;
    meta.title = spec.title;
    meta.description = spec.description;
    meta.kind = ArticleKind::fileset;
    meta.category = spec.category.empty() ? options_.default_category : spec.category;
    for (const auto& tag : spec.tags) {
      if (std::find(meta.tags.begin(), meta.tags.end(), tag) == meta.tags.end()) meta.tags.push_back(tag);
    }
    article = client_.create_article(meta);
  }

  DataPublication out;
  out.article_id = article.article_id;
  for (const auto& path : spec.paths) {
    const auto current = md5_file(path);
    const auto stored = read_sidecar(path);
    const auto* remote = article.find_file(path.filename().string());
    const bool changed = !stored || *stored != current;
    if (changed || remote == nullptr || remote->md5 != current) {
      const auto entry = client_.upload_file(article.article_id, path);
      write_sidecar(path, entry.md5);
      out.uploaded.push_back(path);
    } else {
      out.skipped.push_back(path);
    }
  }

  if (spec.authors_file) {
    const auto authors = parse_authors_file(*spec.authors_file);
    if (!authors.empty()) attach_authors(client_, client_.get_article(article.article_id), author_ids(authors));
  }

  try {
    const auto result = client_.publish_article(article.article_id);
    out.doi = result.doi;
    out.version = result.version;
    out.published = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NothingToPublish) throw;
    const auto current = client_.get_article(article.article_id);
    if (!current.doi) throw;
    out.doi = *current.doi;
    out.version = current.version;
  }
  return out;
}

}  // namespace curator
