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

#include <memory>

#include "curator/repo_client.hpp"

namespace httplib {
class Client;
}

namespace curator {

// RepoClient speaking the depot wire protocol over HTTP. Calls that fail at
// the transport level are retried per ClientConfig::retry before surfacing
// as Error(TransportError); HTTP error statuses are never retried.
class HttpRepoClient final : public RepoClient {
 public:
  explicit HttpRepoClient(ClientConfig config);
  ~HttpRepoClient() override;

  ArticleRecord create_article(const ArticleMeta& meta) override;
  FileEntry upload_file(ArticleId id, const std::filesystem::path& local_path) override;
  std::vector<ArticleRecord> search_by_tag(std::string_view tag) override;
  ArticleRecord add_tag(ArticleId id, std::string_view tag) override;
  ArticleRecord add_authors(ArticleId id, const std::vector<AuthorId>& author_ids) override;
  PublishResult publish_article(ArticleId id) override;
  ArticleRecord get_article(ArticleId id) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace curator
