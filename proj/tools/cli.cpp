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

#include "cli.hpp"

#include <CLI11.hpp>
#include <signal.h>

#include <iostream>
#include <memory>
#include <regex>

#include "curator/checksum.hpp"
#include "curator/config.hpp"
#include "curator/depot_server.hpp"
#include "curator/error.hpp"
#include "curator/http_client.hpp"
#include "curator/log.hpp"
#include "curator/mock_depot.hpp"
#include "curator/provenance.hpp"
#include "curator/publisher.hpp"

namespace curator::cli {
namespace fs = std::filesystem;

namespace {

constexpr const char* kDefaultMockToken = "mock-token";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The depot a command talks to, plus persistence for the mock backend.
class Session {
 public:
  Session(const Command& command, const fs::path& default_state) {
    const auto config_path = resolve_config_path(command.config);
    std::error_code ec;
    if (command.backend == Backend::http || command.config || fs::exists(config_path, ec)) {
      config_ = load_config(config_path);
    }
    if (command.backend == Backend::http) {
      client_ = std::make_unique<HttpRepoClient>(config_.depot);
      return;
    }
    const std::string token = config_.depot.token.empty() ? kDefaultMockToken : config_.depot.token;
    state_path_ = command.depot_state.value_or(default_state);
    depot_ = fs::exists(*state_path_, ec) ? MockDepot::load(*state_path_, token)
                                          : std::make_unique<MockDepot>(token);
    client_ = std::make_unique<InProcessClient>(*depot_, token);
  }

  // Persists whatever reached the depot, including partial work of a
  // failed command.
  ~Session() {
    if (depot_ && state_path_) {
      try {
        depot_->save(*state_path_);
      } catch (const std::exception& e) {
        std::cerr << "error: IoError: cannot save depot state: " << e.what() << '\n';
      }
    }
  }

  RepoClient& client() { return *client_; }
  const PublisherConfig& config() const { return config_; }

 private:
  PublisherConfig config_;
  std::unique_ptr<MockDepot> depot_;
  std::optional<fs::path> state_path_;
  std::unique_ptr<RepoClient> client_;
};

struct Project {
  fs::path path;
  fs::path dir;
  PublishOptions options;
  std::string label;
};

Project load_project(const Command& command) {
  if (!command.project) throw UsageError("--project is required");
  Project project;
  project.path = fs::absolute(*command.project);
  project.dir = project.path.parent_path();
  std::error_code ec;
  if (!fs::is_regular_file(project.path, ec)) {
    fail(ErrorKind::IoError, "project file not found: " + project.path.string());
  }
  project.options = read_publish_options(project.path);
  project.label = project.options.simulation_name.empty() ? project.path.stem().string()
                                                          : project.options.simulation_name;
  return project;
}

void require_enabled(const Project& project) {
  if (!project.options.enabled) {
    fail(ErrorKind::SchemaError, "publishing is not enabled in " + project.path.string());
  }
}

void print_result(std::ostream& out, ArticleId id, const std::string& doi) {
  out << "result: article_id=" << id << " doi=" << doi << '\n';
}

std::string default_software_name(const Command& command, const fs::path& work_tree) {
  if (command.software_name && !command.software_name->empty()) return *command.software_name;
  auto dir = fs::absolute(work_tree).lexically_normal();
  if (!dir.has_filename()) dir = dir.parent_path();
  return dir.filename().string();
}

void publish_software(const Command& command, Project& project, Session& session, std::ostream& out) {
  if (!command.repo) throw UsageError("--repo is required to publish software");
  require_enabled(project);
  const auto commit = resolve_software_version(project.dir, *command.repo, command.version_header);
  Publisher publisher(session.client(), PublisherOptions{session.config().default_category});
  const auto work_tree = inspect_repo(*command.repo).local_path;
  SoftwareIdentity identity{default_software_name(command, work_tree), commit, work_tree, "", std::nullopt};
  const auto publication = publisher.publish_software(identity);
  if (publication.reused) {
    out << "reusing " << publication.doi << '\n';
  } else {
    out << "published " << identity.name << " at " << commit.str() << " as " << publication.doi << '\n';
  }
  write_publication_ids(project.path, Slot::software, publication.article_id, publication.doi);
  project.options.slot(Slot::software).article_id = publication.article_id;
  project.options.slot(Slot::software).doi = publication.doi;
  print_result(out, publication.article_id, publication.doi);
}

void report_data(const DataPublication& publication, std::ostream& out) {
  for (const auto& path : publication.uploaded) out << "uploaded " << path.filename().string() << '\n';
  for (const auto& path : publication.skipped) out << "unchanged " << path.filename().string() << '\n';
  if (publication.published) {
    out << "published version " << publication.version << " as " << publication.doi << '\n';
  } else {
    out << "no changes; keeping " << publication.doi << '\n';
  }
}

DataPublication publish_fileset(const Command& command, Project& project, Session& session, Slot slot,
                                const std::string& title, const std::string& description) {
  const auto& state = project.options.slot(slot);
  const auto paths = expand_patterns(state.patterns, project.dir);
  if (paths.empty()) {
    std::string joined;
    for (const auto& p : state.patterns) joined += (joined.empty() ? "" : ";") + p;
    fail(ErrorKind::InvalidMeta, "no files in " + project.dir.string() + " match " + std::string(to_string(slot)) +
                                     " patterns '" + joined + "'");
  }
  FilesetSpec spec;
  spec.title = title;
  spec.description = description;
  spec.tags = {project.label, std::string(to_string(slot)) + "-data"};
  if (spec.tags[0] == spec.tags[1]) spec.tags.pop_back();
  spec.paths = paths;
  spec.existing_article_id = state.article_id;
  if (command.fileset_authors && command.repo) spec.authors_file = *command.repo / "AUTHORS";
  Publisher publisher(session.client(), PublisherOptions{session.config().default_category});
  auto publication = publisher.publish_data(spec);
  write_publication_ids(project.path, slot, publication.article_id, publication.doi);
  project.options.slot(slot).article_id = publication.article_id;
  project.options.slot(slot).doi = publication.doi;
  return publication;
}

void publish_input(const Command& command, Project& project, Session& session, std::ostream& out) {
  require_enabled(project);
  std::string description = "Input data for the simulation '" + project.label + "'.";
  if (const auto& sw = project.options.slot(Slot::software).doi) description += " Software DOI: " + *sw + ".";
  const auto publication =
      publish_fileset(command, project, session, Slot::input, project.label + " input data", description);
  report_data(publication, out);
  print_result(out, publication.article_id, publication.doi);
}

// Prefers the version the caller names; otherwise reads the commit tag of
// the recorded software publication.
CommitHash recorded_software_version(const Command& command, const Project& project, Session& session) {
  if (command.repo) return resolve_software_version(project.dir, *command.repo, command.version_header);
  const auto article = session.client().get_article(*project.options.slot(Slot::software).article_id);
  for (const auto& tag : article.meta.tags) {
    if (auto hash = CommitHash::try_parse(tag)) return *hash;
  }
  fail(ErrorKind::MissingProvenance, "software article " + std::to_string(article.article_id) +
                                         " carries no commit tag; pass --repo");
}

void publish_output(const Command& command, Project& project, Session& session, std::ostream& out) {
  require_enabled(project);
  const auto& software = project.options.slot(Slot::software);
  const auto& input = project.options.slot(Slot::input);
  if (!software.doi || !software.article_id) {
    fail(ErrorKind::MissingProvenance, "software DOI not yet recorded");
  }
  if (!input.doi || !input.article_id) fail(ErrorKind::MissingProvenance, "input data DOI not yet recorded");

  const ProvenanceConstants constants{recorded_software_version(command, project, session), *software.doi,
                                      *input.doi};
  const auto names = ConstantNames::with_prefix(command.constant_prefix);
  bool any_stat = false;
  for (const auto& path : expand_patterns(project.options.slot(Slot::output).patterns, project.dir)) {
    if (path.extension() != ".stat") continue;
    any_stat = true;
    if (inject_provenance(path, constants, names)) {
      out << "injected provenance into " << path.filename().string() << '\n';
    }
  }
  if (!any_stat) warn("no .stat file among the outputs; provenance constants not injected");

  std::string description = "Output data of the simulation '" + project.label + "'. Software DOI: " +
                            *software.doi + ". Input data DOI: " + *input.doi + ".";
  const auto publication =
      publish_fileset(command, project, session, Slot::output, project.label + " output data", description);
  report_data(publication, out);
  print_result(out, publication.article_id, publication.doi);
}

void status(const Project& project, std::ostream& out) {
  out << "project: " << project.path.string() << '\n';
  out << "publish: " << (project.options.enabled ? "enabled" : "disabled") << '\n';
  for (Slot slot : {Slot::software, Slot::input, Slot::output}) {
    const auto& state = project.options.slot(slot);
    out << to_string(slot) << ": article_id="
        << (state.article_id ? std::to_string(*state.article_id) : std::string("-"))
        << " doi=" << state.doi.value_or("-") << '\n';
  }
}

int serve_depot(const Command& command, std::ostream& out) {
  if (!command.bind) throw UsageError("serve-depot requires --bind <addr:port>");
  const auto address = BindAddress::parse(*command.bind);
  PublisherConfig config;
  const auto config_path = resolve_config_path(command.config);
  std::error_code ec;
  if (command.config || fs::exists(config_path, ec)) config = load_config(config_path);
  const std::string token = config.depot.token.empty() ? kDefaultMockToken : config.depot.token;

  std::unique_ptr<MockDepot> depot;
  if (command.depot_state && fs::exists(*command.depot_state, ec)) {
    depot = MockDepot::load(*command.depot_state, token);
  } else {
    depot = std::make_unique<MockDepot>(token);
  }

  // Block the stop signals before the server threads exist so that only
  // sigwait below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  DepotServer server(*depot);
  if (command.depot_state) {
    const fs::path state = *command.depot_state;
    server.on_mutation([&depot, state] { depot->save(state); });
  }
  server.start(address);
  out << "listening on " << server.base_url() << std::endl;
  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  if (command.depot_state) depot->save(*command.depot_state);
  out << "stopped" << std::endl;
  return kOk;
}

std::string one_line(std::string text) {
  for (auto& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

}  // namespace

CommitHash resolve_software_version(const fs::path& project_dir, const fs::path& repo,
                                    const std::optional<fs::path>& version_header) {
  if (!version_header) return inspect_repo(repo).head;
  const auto header = version_header->is_absolute() ? *version_header : project_dir / *version_header;
  const auto text = read_file(header);
  static const std::regex kHash("(^|[^0-9a-fA-F])([0-9a-fA-F]{40})(?![0-9a-fA-F])");
  std::smatch match;
  if (!std::regex_search(text, match, kHash)) {
    fail(ErrorKind::ParseError, header.string() + " contains no 40-hex commit hash");
  }
  std::string hash = match[2].str();
  std::transform(hash.begin(), hash.end(), hash.begin(), ::tolower);
  try {
    return resolve_commit(repo, hash);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnknownRef) throw;
    fail(ErrorKind::UnknownRef, "version header " + header.string() + " names " + hash +
                                    ", which is not in " + repo.string() +
                                    "; fetch that commit or rebuild so the header matches");
  }
}

int run(const Command& command, std::ostream& out, std::ostream& err) {
  try {
    if (command.verb == Verb::serve_depot) return serve_depot(command, out);
    auto project = load_project(command);
    if (command.verb == Verb::status) {
      status(project, out);
      return kOk;
    }
    Session session(command, project.dir / ".curator-depot.jsonl");
    switch (command.verb) {
      case Verb::publish_software: publish_software(command, project, session, out); break;
      case Verb::publish_input: publish_input(command, project, session, out); break;
      case Verb::publish_output: publish_output(command, project, session, out); break;
      case Verb::publish_all:
        publish_software(command, project, session, out);
        publish_input(command, project, session, out);
        publish_output(command, project, session, out);
        break;
      default: break;
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << one_line(e.what()) << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: Internal: " << one_line(e.what()) << '\n';
    return kDomainError;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Publish software, input and output data of a simulation to a citable depot", "curator"};
  app.require_subcommand(1);

  Command command;
  std::string project, config, repo, header, state, bind, name, backend = "http";
  app.add_option("-p,--project", project, "Simulation project file (XML)");
  app.add_option("-c,--config", config, "Configuration file (default $CURATOR_CONFIG or ~/.curator)");
  app.add_option("--repo", repo, "Local git repository of the software");
  app.add_option("--version-header", header, "Header whose 40-hex token overrides the repository head");
  app.add_option("--backend", backend, "Depot backend")->check(CLI::IsMember({"mock", "http"}));
  app.add_option("--bind", bind, "addr:port for serve-depot");
  app.add_option("--depot-state", state, "State file of the mock depot");
  app.add_option("--software-name", name, "Software name (default: repository directory name)");
  app.add_option("--constant-prefix", command.constant_prefix, "Prefix of the <prefix>Version constant");
  app.add_flag("--fileset-authors", command.fileset_authors, "Also attach AUTHORS entries to data filesets");

  const std::pair<const char*, Verb> verbs[] = {
      {"publish-software", Verb::publish_software}, {"publish-input", Verb::publish_input},
      {"publish-output", Verb::publish_output},     {"publish-all", Verb::publish_all},
      {"serve-depot", Verb::serve_depot},           {"status", Verb::status},
  };
  const char* help[] = {"Publish (or reuse) the software version",
                        "Publish the input data fileset",
                        "Inject provenance and publish the output data fileset",
                        "Run all three publishing stages",
                        "Serve the reference depot over HTTP",
                        "Show recorded article ids and DOIs"};
  std::vector<CLI::App*> subcommands;
  for (std::size_t i = 0; i < std::size(verbs); ++i) {
    subcommands.push_back(app.add_subcommand(verbs[i].first, help[i])->fallthrough());
  }

  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << one_line(e.what()) << '\n';
    return e.get_exit_code() == 0 ? kOk : kUsageError;
  }

  for (std::size_t i = 0; i < subcommands.size(); ++i) {
    if (subcommands[i]->parsed()) command.verb = verbs[i].second;
  }
  auto opt_path = [](const std::string& s) -> std::optional<fs::path> {
    if (s.empty()) return std::nullopt;
    return fs::path(s);
  };
  command.project = opt_path(project);
  command.config = opt_path(config);
  command.repo = opt_path(repo);
  command.depot_state = opt_path(state);
  if (auto h = opt_path(header)) command.version_header = fs::absolute(*h);
  if (!bind.empty()) command.bind = bind;
  if (!name.empty()) command.software_name = name;
  command.backend = backend == "mock" ? Backend::mock : Backend::http;
  return run(command, out, err);
}

}  // namespace curator::cli
