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

#include <gtest/gtest.h>
#include <httplib.h>

#include <algorithm>
#include <random>
#include <set>

#include "curator/checksum.hpp"
#include "curator/depot_server.hpp"
#include "curator/error.hpp"
#include "curator/mock_depot.hpp"
#include "support.hpp"

namespace curator {
namespace {

constexpr const char* kToken = "secret";

ArticleMeta meta(std::string title, ArticleKind kind = ArticleKind::fileset,
                 std::vector<std::string> tags = {}) {
  ArticleMeta m;
  m.title = std::move(title);
  m.kind = kind;
  m.tags = std::move(tags);
  return m;
}

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

TEST(DoiMinter, MintsOncePerArticle) {
  DoiMinter minter;
  EXPECT_EQ(minter.mint(12), "10.5072/mockdepot.12");
  EXPECT_TRUE(minter.minted(12));
  EXPECT_EQ(kind_of([&] { minter.mint(12); }), ErrorKind::AlreadyMinted);
  EXPECT_EQ(minter.mint(13), "10.5072/mockdepot.13");
}

TEST(MockDepot, RejectsBadToken) {
  MockDepot depot(kToken);
  EXPECT_EQ(kind_of([&] { depot.create_article("wrong", meta("x")); }), ErrorKind::AuthFailure);
  EXPECT_EQ(kind_of([&] { depot.create_article("", meta("x")); }), ErrorKind::AuthFailure);
  EXPECT_EQ(depot.article_count(), 0u);
  EXPECT_TRUE(depot.op_log().empty());
}

TEST(MockDepot, ValidatesMeta) {
  MockDepot depot(kToken);
  EXPECT_EQ(kind_of([&] { depot.create_article(kToken, meta("")); }), ErrorKind::InvalidMeta);
  EXPECT_EQ(kind_of([&] { depot.create_article(kToken, meta("t", ArticleKind::code, {"a", "a"})); }),
            ErrorKind::InvalidMeta);
  EXPECT_EQ(kind_of([&] { depot.create_article(kToken, meta("t", ArticleKind::code, {""})); }),
            ErrorKind::InvalidMeta);
}

TEST(MockDepot, ArticleIdsAreUniqueAndIncreasing) {
  MockDepot depot(kToken);
  std::set<ArticleId> seen;
  ArticleId last = 0;
  for (int i = 0; i < 50; ++i) {
    const auto record = depot.create_article(kToken, meta("a" + std::to_string(i)));
    EXPECT_GT(record.article_id, last);
    last = record.article_id;
    seen.insert(record.article_id);
    EXPECT_EQ(record.status, ArticleStatus::draft);
    EXPECT_EQ(record.version, 0);
    EXPECT_FALSE(record.doi);
  }
  EXPECT_EQ(seen.size(), 50u);
}

TEST(MockDepot, UploadRecordsChecksumAndReplacesByName) {
  MockDepot depot(kToken);
  const auto id = depot.create_article(kToken, meta("data")).article_id;
  const auto first = depot.upload_file(kToken, id, "a.dat", "alpha");
  EXPECT_EQ(first.md5, md5_hex(std::string_view("alpha")));
  EXPECT_EQ(first.size, 5u);
  const auto second = depot.upload_file(kToken, id, "a.dat", "beta!");
  EXPECT_NE(first.file_id, second.file_id);
  const auto record = depot.get_article(kToken, id);
  ASSERT_EQ(record.files.size(), 1u);
  EXPECT_EQ(record.files[0], second);
  EXPECT_EQ(depot.stored_bytes(id, 0, "a.dat"), "beta!");
}

TEST(MockDepot, UploadRejectsPathNames) {
  MockDepot depot(kToken);
  const auto id = depot.create_article(kToken, meta("data")).article_id;
  for (const char* name : {"", ".", "..", "dir/a", "dir\\a"}) {
    EXPECT_EQ(kind_of([&] { depot.upload_file(kToken, id, name, "x"); }), ErrorKind::InvalidMeta) << name;
  }
  EXPECT_EQ(kind_of([&] { depot.upload_file(kToken, id + 1, "a", "x"); }), ErrorKind::NotFound);
}

TEST(MockDepot, TagsAreSetLikeAndSearchable) {
  MockDepot depot(kToken);
  const auto a = depot.create_article(kToken, meta("a", ArticleKind::code, {"x"})).article_id;
  const auto b = depot.create_article(kToken, meta("b")).article_id;
  depot.add_tag(kToken, b, "x");
  const auto log_size = depot.op_log().size();
  const auto again = depot.add_tag(kToken, b, "x");
  EXPECT_EQ(std::count(again.meta.tags.begin(), again.meta.tags.end(), "x"), 1);
  EXPECT_EQ(depot.op_log().size(), log_size);

  // Oracle: brute-force filter over all stored articles.
  for (const std::string tag : {"x", "y"}) {
    std::vector<ArticleId> expected;
    for (const auto& article : depot.articles()) {
      if (std::find(article.meta.tags.begin(), article.meta.tags.end(), tag) != article.meta.tags.end()) {
        expected.push_back(article.article_id);
      }
    }
    std::vector<ArticleId> got;
    for (const auto& hit : depot.search_by_tag(kToken, tag)) got.push_back(hit.article_id);
    EXPECT_EQ(got, expected) << tag;
  }
  EXPECT_EQ(depot.search_by_tag(kToken, "x").size(), 2u);
  EXPECT_EQ(a, 1);
  EXPECT_EQ(kind_of([&] { depot.search_by_tag(kToken, ""); }), ErrorKind::InvalidMeta);
}

TEST(MockDepot, AuthorsDedupPreservingOrder) {
  MockDepot depot(kToken);
  const auto id = depot.create_article(kToken, meta("a")).article_id;
  depot.add_authors(kToken, id, {5, 3, 5});
  const auto record = depot.add_authors(kToken, id, {3, 9});
  EXPECT_EQ(record.authors, (std::vector<AuthorId>{5, 3, 9}));
  EXPECT_EQ(kind_of([&] { depot.add_authors(kToken, id, {0}); }), ErrorKind::InvalidMeta);
  EXPECT_EQ(depot.get_article(kToken, id).authors, record.authors);
}

TEST(MockDepot, PublishMintsOnceAndVersions) {
  MockDepot depot(kToken);
  const auto id = depot.create_article(kToken, meta("a")).article_id;
  EXPECT_EQ(kind_of([&] { depot.publish_article(kToken, id); }), ErrorKind::NothingToPublish);
  depot.upload_file(kToken, id, "f", "1");
  const auto v1 = depot.publish_article(kToken, id);
  EXPECT_EQ(v1.version, 1);
  EXPECT_EQ(v1.doi, std::string(kMockDoiPrefix) + std::to_string(id));
  EXPECT_EQ(kind_of([&] { depot.publish_article(kToken, id); }), ErrorKind::NothingToPublish);

  depot.upload_file(kToken, id, "f", "1");  // same content, new file id
  EXPECT_EQ(kind_of([&] { depot.publish_article(kToken, id); }), ErrorKind::NothingToPublish);

  depot.upload_file(kToken, id, "f", "2");
  const auto head = depot.get_article(kToken, id);
  EXPECT_EQ(head.status, ArticleStatus::published);
  EXPECT_EQ(head.version, 1);
  const auto v2 = depot.publish_article(kToken, id);
  EXPECT_EQ(v2.doi, v1.doi);
  EXPECT_EQ(v2.version, 2);
  EXPECT_EQ(depot.stored_bytes(id, 1, "f"), "1");
  EXPECT_EQ(depot.stored_bytes(id, 2, "f"), "2");
  EXPECT_EQ(depot.published_versions(id).size(), 2u);
}

TEST(MockDepot, MetadataChangeIsPublishable) {
  MockDepot depot(kToken);
  const auto id = depot.create_article(kToken, meta("a")).article_id;
  depot.upload_file(kToken, id, "f", "1");
  depot.publish_article(kToken, id);
  depot.add_tag(kToken, id, "new");
  EXPECT_EQ(depot.publish_article(kToken, id).version, 2);
}

TEST(MockDepot, SaveLoadRoundTrip) {
  testing::TempDir dir;
  MockDepot depot(kToken);
  const auto a = depot.create_article(kToken, meta("a", ArticleKind::code, {"t"})).article_id;
  depot.upload_file(kToken, a, "bin", std::string("\0\x01\xff", 3));
  depot.add_authors(kToken, a, {4});
  depot.publish_article(kToken, a);
  depot.upload_file(kToken, a, "bin", "v2");
  depot.create_article(kToken, meta("b"));
  depot.save(dir / "state.jsonl");

  auto loaded = MockDepot::load(dir / "state.jsonl", kToken);
  EXPECT_EQ(loaded->dump(), depot.dump());
  EXPECT_EQ(loaded->stored_bytes(a, 1, "bin"), std::string("\0\x01\xff", 3));
  // Counters survive: the next ids continue where the saved depot stopped.
  EXPECT_EQ(loaded->create_article(kToken, meta("c")).article_id, 3);
  EXPECT_EQ(loaded->publish_article(kToken, a).doi, std::string(kMockDoiPrefix) + std::to_string(a));
}

TEST(MockDepot, LoadRejectsGarbage) {
  testing::TempDir dir;
  testing::write_text(dir / "bad.jsonl", "{not json\n");
  EXPECT_EQ(kind_of([&] { MockDepot::load(dir / "bad.jsonl", kToken); }), ErrorKind::ParseError);
}

class DepotServerTest : public ::testing::Test {
 protected:
  void SetUp() override { server.start(BindAddress{"127.0.0.1", 0}); }
  void TearDown() override { server.stop(); }

  MockDepot depot{kToken};
  DepotServer server{depot};
};

TEST_F(DepotServerTest, UnknownRouteIs404) {
  httplib::Client client("127.0.0.1", server.port());
  auto res = client.Get("/v1/nothing-here", {{"Authorization", std::string("token ") + kToken}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  EXPECT_NE(res->body.find("NotFound"), std::string::npos);
}

TEST_F(DepotServerTest, MissingAuthIs401) {
  httplib::Client client("127.0.0.1", server.port());
  auto res = client.Post("/v1/articles", R"({"title":"x","kind":"fileset"})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 401);
  EXPECT_EQ(depot.article_count(), 0u);
}

TEST_F(DepotServerTest, UnknownArticleIs404) {
  httplib::Client client("127.0.0.1", server.port());
  auto res = client.Get("/v1/articles/99", {{"Authorization", std::string("token ") + kToken}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
}

TEST(DepotServer, MutationHookFires) {
  MockDepot depot(kToken);
  DepotServer server(depot);
  int calls = 0;
  server.on_mutation([&] { ++calls; });
  server.start(BindAddress{"127.0.0.1", 0});
  httplib::Client client("127.0.0.1", server.port());
  auto res = client.Post("/v1/articles", {{"Authorization", std::string("token ") + kToken}},
                         R"({"title":"x","kind":"fileset","description":"","category":"","tags":[]})",
                         "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 201);
  EXPECT_EQ(calls, 1);
  server.stop();
  server.stop();
}

TEST(BindAddress, Parses) {
  const auto a = BindAddress::parse("0.0.0.0:8080");
  EXPECT_EQ(a.host, "0.0.0.0");
  EXPECT_EQ(a.port, 8080);
  EXPECT_EQ(kind_of([] { BindAddress::parse("nope"); }), ErrorKind::BindError);
  EXPECT_EQ(kind_of([] { BindAddress::parse("h:70000"); }), ErrorKind::BindError);
  EXPECT_EQ(kind_of([] { BindAddress::parse(":80"); }), ErrorKind::BindError);
}

}  // namespace
}  // namespace curator
