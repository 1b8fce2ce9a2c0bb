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
#include <signal.h>

#include <cstdio>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "curator/checksum.hpp"
#include "curator/depot_server.hpp"
#include "curator/http_client.hpp"
#include "curator/mock_depot.hpp"
#include "curator/provenance.hpp"
#include "support.hpp"

namespace curator {
namespace {

namespace fs = std::filesystem;
using testing::run_cli;
using testing::TempDir;

int count_lines(const std::string& text) { return static_cast<int>(std::count(text.begin(), text.end(), '\n')); }

// A domain failure: exit 1 and exactly one diagnostic line naming the kind.
void expect_clean_failure(const testing::CliResult& r, const std::string& kind) {
  EXPECT_EQ(r.exit_code, 1) << r.err;
  EXPECT_EQ(count_lines(r.err), 1) << r.err;
  EXPECT_EQ(r.err.rfind("error: " + kind + ": ", 0), 0u) << r.err;
  EXPECT_EQ(r.err.find("terminate"), std::string::npos);
}

std::string last_result(const std::string& out) {
  const auto at = out.rfind("result: ");
  return at == std::string::npos ? "" : out.substr(at, out.find('\n', at) - at);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    top_hat = testing::make_top_hat(tmp.path());
    testing::write_text(tmp / "none.ini", "");
  }

  std::vector<std::string> args(const std::string& verb, std::vector<std::string> extra = {}) {
    std::vector<std::string> a{verb, "-p", top_hat.project.string(), "--backend", "mock",
                               "-c", (tmp / "none.ini").string()};
    a.insert(a.end(), extra.begin(), extra.end());
    return a;
  }
  std::vector<std::string> with_repo(const std::string& verb) {
    return args(verb, {"--repo", top_hat.solver.path.string()});
  }

  TempDir tmp;
  testing::TopHatCase top_hat;
};

TEST_F(CliTest, StagedPublication) {
  testing::write_text(tmp / "none.ini", "[general]\ndefault_category = Fluid Dynamics\n");
  const auto sw = run_cli(with_repo("publish-software"));
  ASSERT_EQ(sw.exit_code, 0) << sw.err;
  const auto in = run_cli(args("publish-input"));
  ASSERT_EQ(in.exit_code, 0) << in.err;
  const auto early = run_cli(args("publish-output"));
  EXPECT_EQ(early.exit_code, 1);  // nothing to match yet: no outputs
  testing::simulate_top_hat(top_hat);
  const auto out = run_cli(args("publish-output"));
  ASSERT_EQ(out.exit_code, 0) << out.err;

  const auto options = read_publish_options(top_hat.project);
  std::set<std::string> dois;
  for (Slot s : {Slot::software, Slot::input, Slot::output}) {
    ASSERT_TRUE(options.slot(s).doi);
    dois.insert(*options.slot(s).doi);
  }
  EXPECT_EQ(dois.size(), 3u);
  EXPECT_EQ(last_result(sw.out), "result: article_id=" + std::to_string(*options.slot(Slot::software).article_id) +
                                     " doi=" + *options.slot(Slot::software).doi);

  const auto stat = read_file(top_hat.dir / "top_hat.stat");
  EXPECT_NE(stat.find("<constant name=\"FluidityVersion\" type=\"string\" value=\"" + top_hat.solver.commits.back() +
                      "\"/>"),
            std::string::npos);
  EXPECT_NE(stat.find("<constant name=\"SoftwareDOI\" type=\"string\" value=\"" +
                      *options.slot(Slot::software).doi + "\"/>"),
            std::string::npos);

  // Second pass: everything is reused or unchanged.
  const auto again = run_cli(with_repo("publish-all"));
  ASSERT_EQ(again.exit_code, 0) << again.err;
  EXPECT_NE(again.out.find("reusing " + *options.slot(Slot::software).doi), std::string::npos);
  EXPECT_EQ(read_publish_options(top_hat.project), options);

  const auto state = MockDepot::load(top_hat.dir / ".curator-depot.jsonl", "mock-token");
  EXPECT_EQ(state->article_count(), 3u);

  const auto status = run_cli(args("status"));
  EXPECT_EQ(status.exit_code, 0);
  EXPECT_NE(status.out.find("input: article_id=" + std::to_string(*options.slot(Slot::input).article_id)),
            std::string::npos);
}

TEST_F(CliTest, RerunsLeaveDepotUntouched) {
  testing::simulate_top_hat(top_hat);
  ASSERT_EQ(run_cli(with_repo("publish-all")).exit_code, 0);
  const auto state = top_hat.dir / ".curator-depot.jsonl";
  const auto before = MockDepot::load(state, "mock-token")->dump();
  const auto project = read_file(top_hat.project);
  for (const auto& verb : {"publish-software", "publish-input", "publish-output", "publish-all"}) {
    const auto r = run_cli(with_repo(verb));
    ASSERT_EQ(r.exit_code, 0) << verb << r.err;
    EXPECT_EQ(MockDepot::load(state, "mock-token")->dump(), before) << verb;
    EXPECT_EQ(read_file(top_hat.project), project) << verb;
  }
}

TEST_F(CliTest, PublishAllEqualsStagedSequence) {
  testing::simulate_top_hat(top_hat);
  TempDir other_root;
  const auto other = testing::make_top_hat(other_root.path());
  testing::simulate_top_hat(other);
  // Same solver history in both: reuse this case's repository.
  ASSERT_EQ(run_cli(with_repo("publish-all")).exit_code, 0);
  auto staged = [&](const std::string& verb) {
    std::vector<std::string> a{verb, "-p", other.project.string(), "--backend", "mock", "-c",
                               (tmp / "none.ini").string(), "--repo", top_hat.solver.path.string()};
    return run_cli(a).exit_code;
  };
  ASSERT_EQ(staged("publish-software"), 0);
  ASSERT_EQ(staged("publish-input"), 0);
  ASSERT_EQ(staged("publish-output"), 0);
  EXPECT_EQ(read_file(other.project), read_file(top_hat.project));
  EXPECT_EQ(MockDepot::load(other.dir / ".curator-depot.jsonl", "mock-token")->dump(),
            MockDepot::load(top_hat.dir / ".curator-depot.jsonl", "mock-token")->dump());
  EXPECT_EQ(read_file(other.dir / "top_hat.stat"), read_file(top_hat.dir / "top_hat.stat"));
}

TEST_F(CliTest, VersionHeaderWithoutHash) {
  testing::write_text(top_hat.dir / "version.h", "#define VERSION \"4.1.11\"\n");
  auto a = with_repo("publish-software");
  a.push_back("--version-header");
  a.push_back((top_hat.dir / "version.h").string());
  expect_clean_failure(run_cli(a), "ParseError");
}

TEST_F(CliTest, OutputBeforeAnythingElse) {
  const auto r = run_cli(args("publish-output"));
  expect_clean_failure(r, "MissingProvenance");
  EXPECT_EQ(r.err, "error: MissingProvenance: software DOI not yet recorded\n");
}

TEST_F(CliTest, OutputNeedsRecordedSoftwareAndInput) {
  testing::simulate_top_hat(top_hat);
  const auto r = run_cli(args("publish-output"));
  expect_clean_failure(r, "MissingProvenance");
  EXPECT_NE(r.err.find("software DOI not yet recorded"), std::string::npos);
  ASSERT_EQ(run_cli(with_repo("publish-software")).exit_code, 0);
  const auto r2 = run_cli(args("publish-output"));
  expect_clean_failure(r2, "MissingProvenance");
  EXPECT_NE(r2.err.find("input data DOI not yet recorded"), std::string::npos);
}

TEST_F(CliTest, UnknownArticle) {
  write_publication_ids(top_hat.project, Slot::input, 999, "10.5072/mockdepot.999");
  expect_clean_failure(run_cli(args("publish-input")), "NotFound");
}

TEST_F(CliTest, MissingCommit) {
  testing::write_text(top_hat.dir / "version.h", "#define FLUIDITY_VERSION \"" + std::string(40, 'c') + "\"\n");
  auto a = with_repo("publish-software");
  a.push_back("--version-header");
  a.push_back((top_hat.dir / "version.h").string());
  expect_clean_failure(run_cli(a), "UnknownRef");
}

TEST_F(CliTest, VersionHeaderSelectsCommit) {
  testing::write_text(top_hat.dir / "version.h",
                      "// build " + std::string(48, 'f') + "\n#define V \"" + top_hat.solver.commits[0] + "\"\n");
  auto a = with_repo("publish-software");
  a.push_back("--version-header");
  a.push_back((top_hat.dir / "version.h").string());
  const auto r = run_cli(a);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find(top_hat.solver.commits[0]), std::string::npos);
}

TEST_F(CliTest, NotARepository) {
  auto a = args("publish-software", {"--repo", tmp.path().string()});
  expect_clean_failure(run_cli(a), "NotARepository");
}

TEST_F(CliTest, MalformedProjectFile) {
  testing::write_text(top_hat.project, "<fluidity_options>\n  <publish enabled=\"true\">\n</fluidity_options>\n");
  expect_clean_failure(run_cli(args("publish-input")), "ParseError");
  testing::write_text(top_hat.project, "<fluidity_options><publish><input/></publish></fluidity_options>");
  expect_clean_failure(run_cli(args("publish-input")), "SchemaError");
}

TEST_F(CliTest, MissingProjectFile) {
  fs::remove(top_hat.project);
  expect_clean_failure(run_cli(args("status")), "IoError");
}

TEST_F(CliTest, DisabledPublishing) {
  testing::write_text(top_hat.project, "<fluidity_options><publish enabled=\"false\"/></fluidity_options>");
  expect_clean_failure(run_cli(args("publish-input")), "SchemaError");
}

TEST_F(CliTest, MalformedConfig) {
  testing::write_text(tmp / "none.ini", "[depot\n");
  expect_clean_failure(run_cli(args("publish-input")), "ParseError");
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  for (const auto& a : std::vector<std::vector<std::string>>{
           {}, {"frobnicate"}, {"publish-input", "--backend", "cloud"}, {"publish-input"}, {"serve-depot"}}) {
    const auto r = run_cli(a);
    EXPECT_EQ(r.exit_code, 2) << (a.empty() ? "" : a[0]) << " " << r.err;
    EXPECT_EQ(r.err.find("terminate"), std::string::npos);
  }
  EXPECT_EQ(run_cli({"--help"}).exit_code, 0);
}

class HttpCliTest : public CliTest {
 protected:
  void SetUp() override {
    CliTest::SetUp();
    server.start(BindAddress{"127.0.0.1", 0});
  }
  void TearDown() override { server.stop(); }

  void write_config(const std::string& token) {
    testing::write_text(tmp / "none.ini", "[depot]\nbase_url = " + server.base_url() +
                                              "\nclient_key = k\nclient_secret = s\ntoken = " + token +
                                              "\ntoken_secret = ts\n");
  }
  std::vector<std::string> http(std::vector<std::string> a) {
    a[4] = "http";
    return a;
  }

  MockDepot depot{"right"};
  DepotServer server{depot};
};

TEST_F(HttpCliTest, BadCredentials) {
  write_config("wrong");
  expect_clean_failure(run_cli(http(with_repo("publish-software"))), "AuthFailure");
  EXPECT_EQ(depot.article_count(), 0u);
}

TEST_F(HttpCliTest, PublishAllOverHttp) {
  write_config("right");
  testing::simulate_top_hat(top_hat);
  const auto r = run_cli(http(with_repo("publish-all")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(depot.article_count(), 3u);
  const auto options = read_publish_options(top_hat.project);
  const auto out = depot.get_article("right", *options.slot(Slot::output).article_id);
  EXPECT_EQ(out.files.size(), 3u);
  EXPECT_EQ(out.doi, options.slot(Slot::output).doi);
}

TEST_F(CliTest, UnreachableDepotIsTransportError) {
  testing::write_text(tmp / "none.ini",
                      "[depot]\nbase_url = http://127.0.0.1:1\nclient_key = k\nclient_secret = s\ntoken = t\n"
                      "token_secret = ts\n");
  auto a = args("publish-input");
  a[4] = "http";
  expect_clean_failure(run_cli(a), "TransportError");
}

TEST_F(CliTest, ServeDepotSubprocess) {
  const auto state = tmp / "served.jsonl";
  const std::string command = "sh -c 'echo $$; exec " + testing::shell_quote(CURATOR_CLI_BINARY) +
                              " serve-depot --bind 127.0.0.1:0 --depot-state " +
                              testing::shell_quote(state.string()) + " -c " +
                              testing::shell_quote((tmp / "served.ini").string()) + "'";
  testing::write_text(tmp / "served.ini", "[depot]\ntoken = served\n");
  FILE* pipe = popen(command.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  char line[256];
  ASSERT_NE(fgets(line, sizeof line, pipe), nullptr);
  const pid_t pid = std::stoi(line);
  ASSERT_NE(fgets(line, sizeof line, pipe), nullptr);
  std::string listening(line);
  ASSERT_EQ(listening.rfind("listening on http://127.0.0.1:", 0), 0u) << listening;
  const std::string url = listening.substr(13, listening.size() - 14);

  ClientConfig config{url, "k", "s", "served", "ts", {}};
  config.retry.backoff = {};
  {
    auto client = std::make_unique<HttpRepoClient>(config);
    ArticleMeta meta;
    meta.title = "served";
    client->create_article(meta);
  }
  kill(pid, SIGTERM);
  std::string rest;
  while (fgets(line, sizeof line, pipe) != nullptr) rest += line;
  EXPECT_EQ(pclose(pipe), 0);
  EXPECT_NE(rest.find("stopped"), std::string::npos);
  EXPECT_EQ(MockDepot::load(state, "served")->article_count(), 1u);
}

TEST(CliLibrary, RunReportsErrorsInProcess) {
  cli::Command command;
  command.verb = cli::Verb::publish_input;
  std::ostringstream out, err;
  EXPECT_EQ(cli::run(command, out, err), cli::kUsageError);
  command.project = "/nonexistent/p.flml";
  err.str("");
  EXPECT_EQ(cli::run(command, out, err), cli::kDomainError);
  EXPECT_EQ(err.str().rfind("error: IoError: ", 0), 0u);
}

}  // namespace
}  // namespace curator
