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

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "curator/checksum.hpp"
#include "curator/error.hpp"
#include "curator/mock_depot.hpp"
#include "wire.hpp"

namespace curator {
namespace {

std::string base64_encode(std::string_view bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(bytes.data()),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) fail(ErrorKind::ParseError, "bad base64 length in depot state");
  std::string out(3 * text.size() / 4, '\0');
  const int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) fail(ErrorKind::ParseError, "bad base64 in depot state");
  // EVP_DecodeBlock keeps the zero bytes produced by '=' padding.
  std::size_t padding = 0;
  if (!text.empty() && text.back() == '=') ++padding;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++padding;
  out.resize(static_cast<std::size_t>(n) - padding);
  return out;
}

}  // namespace

// Serializer with access to the depot's private state.
class DepotStore {
 public:
  static void save(const MockDepot& depot, const std::filesystem::path& path) {
    std::lock_guard lock(depot.mutex_);
    std::ostringstream out;
    out << wire::json{{"depot",
                       {{"format", 1},
                        {"next_article_id", depot.next_article_id_},
                        {"next_file_id", depot.next_file_id_}}}}
               .dump()
        << "\n";
    for (const auto& [id, article] : depot.articles_) {
      auto line = wire::to_json(article.head);
      auto versions = wire::json::array();
      for (const auto& v : article.versions) {
        auto files = wire::json::array();
        for (const auto& f : v.files) files.push_back(wire::to_json(f));
        auto meta = wire::meta_to_json(v.meta);
        meta["version"] = v.version;
        meta["files"] = std::move(files);
        meta["authors"] = v.authors;
        versions.push_back(std::move(meta));
      }
      line["published_versions"] = std::move(versions);
      out << wire::json{{"article", std::move(line)}}.dump() << "\n";
    }
    for (const auto& [file_id, bytes] : depot.blobs_) {
      out << wire::json{{"blob", {{"file_id", file_id}, {"data", base64_encode(bytes)}}}}.dump()
          << "\n";
    }
    for (const auto& op : depot.op_log_) {
      out << wire::json{{"op",
                         {{"op", op.op}, {"article_id", op.article_id}, {"detail", op.detail}}}}
                 .dump()
          << "\n";
    }
    write_file_atomic(path, out.str());
  }

  static std::unique_ptr<MockDepot> load(const std::filesystem::path& path, std::string token) {
    auto depot = std::make_unique<MockDepot>(std::move(token));
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot open depot state " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto j = wire::json::parse(line, nullptr, false);
      if (!j.is_object() || j.size() != 1) {
        fail(ErrorKind::ParseError,
             path.string() + ":" + std::to_string(line_no) + ": malformed depot state line");
      }
      try {
        apply_line(*depot, j);
      } catch (const wire::json::exception& e) {
        fail(ErrorKind::ParseError, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
    return depot;
  }

 private:
  static void apply_line(MockDepot& depot, const wire::json& j) {
    if (j.contains("depot")) {
      const auto& d = j.at("depot");
      depot.next_article_id_ = d.at("next_article_id").get<ArticleId>();
      depot.next_file_id_ = d.at("next_file_id").get<FileId>();
    } else if (j.contains("article")) {
      const auto& a = j.at("article");
      MockDepot::StoredArticle stored;
      stored.head = wire::article_from_json(a);
      for (const auto& v : a.at("published_versions")) {
        PublishedVersion version;
        version.version = v.at("version").get<std::int64_t>();
        version.meta = wire::meta_from_json(v);
        for (const auto& f : v.at("files")) version.files.push_back(wire::file_entry_from_json(f));
        version.authors = v.at("authors").get<std::vector<AuthorId>>();
        stored.versions.push_back(std::move(version));
      }
      if (stored.head.doi) depot.minter_.restore(stored.head.article_id);
      depot.articles_.emplace(stored.head.article_id, std::move(stored));
    } else if (j.contains("blob")) {
      const auto& b = j.at("blob");
      depot.blobs_.emplace(b.at("file_id").get<FileId>(),
                           base64_decode(b.at("data").get<std::string>()));
    } else if (j.contains("op")) {
      const auto& o = j.at("op");
      depot.op_log_.push_back(OpLogEntry{o.at("op").get<std::string>(),
                                         o.at("article_id").get<ArticleId>(),
                                         o.at("detail").get<std::string>()});
    } else {
      fail(ErrorKind::ParseError, "unknown depot state record");
    }
  }
};

void MockDepot::save(const std::filesystem::path& path) const { DepotStore::save(*this, path); }

std::unique_ptr<MockDepot> MockDepot::load(const std::filesystem::path& path,
                                           std::string accepted_token) {
  return DepotStore::load(path, std::move(accepted_token));
}

}  // namespace curator
