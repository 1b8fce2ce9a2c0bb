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

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "curator/mock_depot.hpp"

namespace httplib {
class Server;
}

namespace curator {

struct BindAddress {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks an ephemeral port

  // "host:port"; throws Error(BindError) when malformed.
  static BindAddress parse(std::string_view text);
};

// HTTP facade translating the depot wire protocol onto a MockDepot.
// Connections are served concurrently; the depot applies them one at a time.
class DepotServer {
 public:
  explicit DepotServer(MockDepot& depot);
  ~DepotServer();

  DepotServer(const DepotServer&) = delete;
  DepotServer& operator=(const DepotServer&) = delete;

  // Invoked after every request that changed depot state.
  void on_mutation(std::function<void()> hook) { on_mutation_ = std::move(hook); }

  // Binds and starts serving on a background thread. Throws Error(BindError).
  void start(const BindAddress& address);
  // Idempotent.
  void stop();

  int port() const noexcept { return port_; }
  std::string base_url() const;

 private:
  void install_routes();

  MockDepot& depot_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;
  std::function<void()> on_mutation_;
};

}  // namespace curator
