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

#include "curator/repo_client.hpp"

#include <algorithm>
#include <set>

#include "curator/error.hpp"

namespace curator {

std::string_view to_string(ArticleKind kind) noexcept {
  return kind == ArticleKind::code ? "code" : "fileset";
}

std::string_view to_string(ArticleStatus status) noexcept {
  return status == ArticleStatus::draft ? "draft" : "published";
}

std::optional<ArticleKind> article_kind_from_string(std::string_view text) noexcept {
  if (text == "code") return ArticleKind::code;
  if (text == "fileset") return ArticleKind::fileset;
  return std::nullopt;
}

std::optional<ArticleStatus> article_status_from_string(std::string_view text) noexcept {
  if (text == "draft") return ArticleStatus::draft;
  if (text == "published") return ArticleStatus::published;
  return std::nullopt;
}

void validate(const ArticleMeta& meta) {
  if (meta.title.empty()) fail(ErrorKind::InvalidMeta, "article title is empty");
  std::set<std::string_view> seen;
  for (const auto& tag : meta.tags) {
    if (tag.empty()) fail(ErrorKind::InvalidMeta, "empty tag");
    if (!seen.insert(tag).second) fail(ErrorKind::InvalidMeta, "duplicate tag: " + tag);
  }
}

bool ArticleRecord::has_tag(std::string_view tag) const {
  return std::find(meta.tags.begin(), meta.tags.end(), tag) != meta.tags.end();
}

const FileEntry* ArticleRecord::find_file(std::string_view name) const {
  auto it = std::find_if(files.begin(), files.end(),
                         [&](const FileEntry& f) { return f.name == name; });
  return it == files.end() ? nullptr : &*it;
}

void validate_for_http(const ClientConfig& config) {
  const std::string_view url = config.base_url;
  if (!url.starts_with("http://") && !url.starts_with("https://")) {
    fail(ErrorKind::ParseError, "base_url must use http or https: '" + config.base_url + "'");
  }
  const std::pair<std::string_view, const std::string*> fields[] = {
      {"client_key", &config.client_key},
      {"client_secret", &config.client_secret},
      {"token", &config.token},
      {"token_secret", &config.token_secret},
  };
  for (const auto& [name, value] : fields) {
    if (value->empty()) {
      fail(ErrorKind::ParseError, "missing credential '" + std::string(name) + "'");
    }
  }
}

}  // namespace curator
