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

#include "wire.hpp"

namespace curator::wire {
namespace {

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::ParseError, std::string("bad type for field '") + key + "'");
  }
}

}  // namespace

json to_json(const FileEntry& entry) {
  return json{{"file_id", entry.file_id},
              {"name", entry.name},
              {"size", entry.size},
              {"md5", entry.md5}};
}

json meta_to_json(const ArticleMeta& meta) {
  return json{{"title", meta.title},
              {"description", meta.description},
              {"kind", to_string(meta.kind)},
              {"category", meta.category},
              {"tags", meta.tags}};
}

json to_json(const ArticleRecord& record) {
  json files = json::array();
  for (const auto& f : record.files) files.push_back(to_json(f));
  return json{{"article_id", record.article_id},
              {"title", record.meta.title},
              {"description", record.meta.description},
              {"kind", to_string(record.meta.kind)},
              {"category", record.meta.category},
              {"tags", record.meta.tags},
              {"status", to_string(record.status)},
              {"version", record.version},
              {"doi", record.doi ? json(*record.doi) : json(nullptr)},
              {"files", std::move(files)},
              {"authors", record.authors}};
}

FileEntry file_entry_from_json(const json& j) {
  FileEntry entry;
  entry.file_id = get_field<FileId>(j, "file_id");
  entry.name = get_field<std::string>(j, "name");
  entry.size = get_field<std::uint64_t>(j, "size");
  entry.md5 = get_field<std::string>(j, "md5");
  return entry;
}

ArticleMeta meta_from_json(const json& j) {
  ArticleMeta meta;
  meta.title = get_field<std::string>(j, "title");
  meta.description = j.contains("description") ? get_field<std::string>(j, "description") : "";
  auto kind = article_kind_from_string(get_field<std::string>(j, "kind"));
  if (!kind) fail(ErrorKind::InvalidMeta, "kind must be \"code\" or \"fileset\"");
  meta.kind = *kind;
  meta.category = j.contains("category") ? get_field<std::string>(j, "category") : "";
  if (j.contains("tags")) meta.tags = get_field<std::vector<std::string>>(j, "tags");
  return meta;
}

ArticleRecord article_from_json(const json& j) {
  ArticleRecord record;
  record.article_id = get_field<ArticleId>(j, "article_id");
  record.meta = meta_from_json(j);
  auto status = article_status_from_string(get_field<std::string>(j, "status"));
  if (!status) fail(ErrorKind::ParseError, "bad article status");
  record.status = *status;
  record.version = get_field<std::int64_t>(j, "version");
  if (!j.contains("doi")) fail(ErrorKind::ParseError, "missing field 'doi'");
  if (!j.at("doi").is_null()) record.doi = get_field<std::string>(j, "doi");
  if (!j.contains("files") || !j.at("files").is_array()) {
    fail(ErrorKind::ParseError, "missing field 'files'");
  }
  for (const auto& f : j.at("files")) record.files.push_back(file_entry_from_json(f));
  record.authors = get_field<std::vector<AuthorId>>(j, "authors");
  return record;
}

json error_body(ErrorKind kind) { return json{{"error", to_string(kind)}}; }

int http_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::AuthFailure: return 401;
    case ErrorKind::NotFound: return 404;
    case ErrorKind::InvalidMeta: return 422;
    case ErrorKind::Conflict:
    case ErrorKind::AlreadyMinted:
    case ErrorKind::NothingToPublish:
    case ErrorKind::KindMismatch: return 409;
    case ErrorKind::ParseError: return 400;
    default: return 500;
  }
}

ErrorKind error_from_response(int status, const std::string& body) {
  auto parsed = json::parse(body, nullptr, false);
  if (parsed.is_object() && parsed.contains("error") && parsed.at("error").is_string()) {
    if (auto kind = error_kind_from_string(parsed.at("error").get<std::string>())) return *kind;
  }
  switch (status) {
    case 401: return ErrorKind::AuthFailure;
    case 404: return ErrorKind::NotFound;
    case 422: return ErrorKind::InvalidMeta;
    case 409: return ErrorKind::Conflict;
    case 400: return ErrorKind::ParseError;
    default: return ErrorKind::TransportError;
  }
}

}  // namespace curator::wire
