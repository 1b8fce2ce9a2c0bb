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

#include "curator/depot_server.hpp"

#include <httplib.h>

#include <charconv>

#include "curator/error.hpp"
#include "wire.hpp"

namespace curator {
namespace {

using wire::json;

constexpr std::string_view kTokenScheme = "token ";

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorKind kind) {
  send_json(res, wire::http_status(kind), wire::error_body(kind));
}

std::string bearer(const httplib::Request& req) {
  const auto header = req.get_header_value("Authorization");
  if (!std::string_view(header).starts_with(kTokenScheme)) return {};
  return header.substr(kTokenScheme.size());
}

ArticleId path_id(const httplib::Request& req) {
  const std::string& text = req.matches[1].str();
  ArticleId id = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, id);
  if (ec != std::errc() || ptr != end || id <= 0) {
    fail(ErrorKind::NotFound, "no article " + text);
  }
  return id;
}

json parse_body(const httplib::Request& req) {
  auto body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    fail(ErrorKind::InvalidMeta, "request body is not a JSON object");
  }
  return body;
}

}  // namespace

BindAddress BindAddress::parse(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    fail(ErrorKind::BindError, "bind address must be host:port, got '" + std::string(text) + "'");
  }
  BindAddress address;
  address.host = std::string(text.substr(0, colon));
  const auto port_text = text.substr(colon + 1);
  const auto [ptr, ec] =
      std::from_chars(port_text.data(), port_text.data() + port_text.size(), address.port);
  if (ec != std::errc() || ptr != port_text.data() + port_text.size() || address.port < 0 ||
      address.port > 65535) {
    fail(ErrorKind::BindError, "invalid port in '" + std::string(text) + "'");
  }
  return address;
}

DepotServer::DepotServer(MockDepot& depot)
    : depot_(depot), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

DepotServer::~DepotServer() { stop(); }

void DepotServer::install_routes() {
  // Wraps a handler with auth, error mapping and the mutation hook.
  auto route = [this](bool mutates, auto handler) {
    return [this, mutates, handler](const httplib::Request& req, httplib::Response& res) {
      try {
        const std::string token = bearer(req);
        if (!depot_.checks_token(token) || token.empty()) {
          send_error(res, ErrorKind::AuthFailure);
          return;
        }
        handler(token, req, res);
        if (mutates && on_mutation_) on_mutation_();
      } catch (const Error& e) {
        send_error(res, e.kind());
      } catch (const std::exception&) {
        send_error(res, ErrorKind::Internal);
      }
    };
  };

  auto& srv = *server_;

  srv.Post("/v1/articles", route(true, [this](const std::string& token, const httplib::Request& req,
                                              httplib::Response& res) {
    const auto meta = wire::meta_from_json(parse_body(req));
    const auto record = depot_.create_article(token, meta);
    send_json(res, 201, json{{"article_id", record.article_id}});
  }));

  srv.Get("/v1/articles/search", route(false, [this](const std::string& token,
                                                     const httplib::Request& req,
                                                     httplib::Response& res) {
    const std::string tag = req.get_param_value("tag");
    json items = json::array();
    for (const auto& record : depot_.search_by_tag(token, tag)) items.push_back(wire::to_json(record));
    send_json(res, 200, json{{"items", std::move(items)}});
  }));

  srv.Get(R"(/v1/articles/([^/]+))", route(false, [this](const std::string& token,
                                                        const httplib::Request& req,
                                                        httplib::Response& res) {
    send_json(res, 200, wire::to_json(depot_.get_article(token, path_id(req))));
  }));

  srv.Post(R"(/v1/articles/([^/]+)/files)", route(true, [this](const std::string& token,
                                                              const httplib::Request& req,
                                                              httplib::Response& res) {
    const ArticleId id = path_id(req);
    if (!req.has_header("X-File-Name")) fail(ErrorKind::InvalidMeta, "missing X-File-Name");
    // httplib has already percent-decoded the header value.
    const auto entry = depot_.upload_file(token, id, req.get_header_value("X-File-Name"), req.body);
    send_json(res, 201, wire::to_json(entry));
  }));

  srv.Post(R"(/v1/articles/([^/]+)/tags)", route(true, [this](const std::string& token,
                                                             const httplib::Request& req,
                                                             httplib::Response& res) {
    const ArticleId id = path_id(req);
    const auto body = parse_body(req);
    if (!body.contains("tag") || !body.at("tag").is_string()) {
      fail(ErrorKind::InvalidMeta, "body needs a string 'tag'");
    }
    send_json(res, 200, wire::to_json(depot_.add_tag(token, id, body.at("tag").get<std::string>())));
  }));

  srv.Post(R"(/v1/articles/([^/]+)/authors)", route(true, [this](const std::string& token,
                                                                const httplib::Request& req,
                                                                httplib::Response& res) {
    const ArticleId id = path_id(req);
    const auto body = parse_body(req);
    std::vector<AuthorId> ids;
    try {
      ids = body.at("author_ids").get<std::vector<AuthorId>>();
    } catch (const json::exception&) {
      fail(ErrorKind::InvalidMeta, "body needs an integer array 'author_ids'");
    }
    send_json(res, 200, wire::to_json(depot_.add_authors(token, id, ids)));
  }));

  srv.Post(R"(/v1/articles/([^/]+)/publish)", route(true, [this](const std::string& token,
                                                                const httplib::Request& req,
                                                                httplib::Response& res) {
    const auto result = depot_.publish_article(token, path_id(req));
    send_json(res, 200, json{{"doi", result.doi}, {"version", result.version}});
  }));

  // Anything else, including unknown routes, is a missing resource.
  srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.status == 404 && res.body.empty()) send_error(res, ErrorKind::NotFound);
  });
}

void DepotServer::start(const BindAddress& address) {
  if (thread_.joinable()) fail(ErrorKind::BindError, "server already running");
  host_ = address.host;
  if (address.port == 0) {
    port_ = server_->bind_to_any_port(address.host);
    if (port_ <= 0) fail(ErrorKind::BindError, "cannot bind " + address.host + ":0");
  } else {
    if (!server_->bind_to_port(address.host, address.port)) {
      fail(ErrorKind::BindError,
           "cannot bind " + address.host + ":" + std::to_string(address.port));
    }
    port_ = address.port;
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void DepotServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string DepotServer::base_url() const {
  return "http://" + host_ + ":" + std::to_string(port_);
}

}  // namespace curator
