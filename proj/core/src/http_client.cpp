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

#include "curator/http_client.hpp"

#include <httplib.h>

#include <thread>

#include "curator/checksum.hpp"
#include "curator/error.hpp"
#include "wire.hpp"

namespace curator {
namespace {

using wire::json;

// Splits "http://host:port/prefix" into the client origin and a path prefix.
std::pair<std::string, std::string> split_base_url(const std::string& base_url) {
  const auto scheme_end = base_url.find("://");
  const auto path_start = base_url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) return {base_url, ""};
  std::string prefix = base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {base_url.substr(0, path_start), prefix};
}

json parse_json(const httplib::Result& res) {
  auto body = json::parse(res->body, nullptr, false);
  if (body.is_discarded()) fail(ErrorKind::TransportError, "depot sent a non-JSON body");
  return body;
}

}  // namespace

struct HttpRepoClient::Impl {
  ClientConfig config;
  std::string prefix;
  httplib::Client client;
  httplib::Headers headers;

  explicit Impl(ClientConfig cfg)
      : config(std::move(cfg)),
        prefix(split_base_url(config.base_url).second),
        client(split_base_url(config.base_url).first) {
    const auto timeout = config.retry.timeout;
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_keep_alive(false);
    headers.emplace("Authorization", "token " + config.token);
  }

  // Runs one request, retrying transport failures, and maps error statuses.
  template <typename Send>
  httplib::Result call(Send&& send, const std::string& what) {
    const auto& backoff = config.retry.backoff;
    for (std::size_t attempt = 0;; ++attempt) {
      httplib::Result res = send();
      if (res) {
        if (res->status >= 200 && res->status < 300) return res;
        const ErrorKind kind = wire::error_from_response(res->status, res->body);
        fail(kind, what + ": depot answered " + std::to_string(res->status));
      }
      if (attempt >= backoff.size()) {
        fail(ErrorKind::TransportError,
             what + ": " + httplib::to_string(res.error()) + " after " +
                 std::to_string(attempt + 1) + " attempts");
      }
      std::this_thread::sleep_for(backoff[attempt]);
    }
  }

  std::string path(const std::string& suffix) const { return prefix + suffix; }

  static std::string article_path(ArticleId id, const char* tail = "") {
    return "/v1/articles/" + std::to_string(id) + tail;
  }

  ArticleRecord post_for_record(const std::string& p, const json& body, const std::string& what) {
    auto res = call([&] { return client.Post(path(p), headers, body.dump(), "application/json"); },
                    what);
    return wire::article_from_json(parse_json(res));
  }
};

HttpRepoClient::HttpRepoClient(ClientConfig config) {
  validate_for_http(config);
  impl_ = std::make_unique<Impl>(std::move(config));
}

HttpRepoClient::~HttpRepoClient() = default;

ArticleRecord HttpRepoClient::create_article(const ArticleMeta& meta) {
  const auto body = wire::meta_to_json(meta).dump();
  auto res = impl_->call(
      [&] { return impl_->client.Post(impl_->path("/v1/articles"), impl_->headers, body,
                                      "application/json"); },
      "create_article");
  const auto reply = parse_json(res);
  if (!reply.contains("article_id") || !reply.at("article_id").is_number_integer()) {
    fail(ErrorKind::TransportError, "create_article: reply lacks article_id");
  }
  return get_article(reply.at("article_id").get<ArticleId>());
}

FileEntry HttpRepoClient::upload_file(ArticleId id, const std::filesystem::path& local_path) {
  const std::string bytes = read_file(local_path);
  // Percent-encoded: the server URL-decodes header values, and raw non-ASCII
  // bytes are not safe in a header anyway.
  auto headers = impl_->headers;
  headers.emplace("X-File-Name", httplib::detail::encode_query_param(local_path.filename().string()));
  auto res = impl_->call(
      [&] {
        return impl_->client.Post(impl_->path(Impl::article_path(id, "/files")), headers, bytes,
                                  "application/octet-stream");
      },
      "upload_file");
  return wire::file_entry_from_json(parse_json(res));
}

std::vector<ArticleRecord> HttpRepoClient::search_by_tag(std::string_view tag) {
  const httplib::Params params{{"tag", std::string(tag)}};
  auto res = impl_->call(
      [&] { return impl_->client.Get(impl_->path("/v1/articles/search"), params, impl_->headers); },
      "search_by_tag");
  const auto reply = parse_json(res);
  if (!reply.contains("items") || !reply.at("items").is_array()) {
    fail(ErrorKind::TransportError, "search_by_tag: reply lacks items");
  }
  std::vector<ArticleRecord> out;
  for (const auto& item : reply.at("items")) out.push_back(wire::article_from_json(item));
  return out;
}

ArticleRecord HttpRepoClient::add_tag(ArticleId id, std::string_view tag) {
  return impl_->post_for_record(Impl::article_path(id, "/tags"), json{{"tag", tag}}, "add_tag");
}

ArticleRecord HttpRepoClient::add_authors(ArticleId id, const std::vector<AuthorId>& author_ids) {
  return impl_->post_for_record(Impl::article_path(id, "/authors"),
                                json{{"author_ids", author_ids}}, "add_authors");
}

PublishResult HttpRepoClient::publish_article(ArticleId id) {
  auto res = impl_->call(
      [&] {
        return impl_->client.Post(impl_->path(Impl::article_path(id, "/publish")), impl_->headers,
                                  "{}", "application/json");
      },
      "publish_article");
  const auto reply = parse_json(res);
  try {
    return PublishResult{reply.at("doi").get<std::string>(), reply.at("version").get<std::int64_t>()};
  } catch (const json::exception&) {
    fail(ErrorKind::TransportError, "publish_article: malformed reply");
  }
}

ArticleRecord HttpRepoClient::get_article(ArticleId id) {
  auto res = impl_->call(
      [&] { return impl_->client.Get(impl_->path(Impl::article_path(id)), impl_->headers); },
      "get_article");
  return wire::article_from_json(parse_json(res));
}

}  // namespace curator
