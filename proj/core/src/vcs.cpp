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

#include "curator/vcs.hpp"

#include <algorithm>

#include "curator/checksum.hpp"
#include "curator/error.hpp"
#include "curator/log.hpp"
#include "git_objects.hpp"
#include "zip_writer.hpp"

namespace curator {
namespace fs = std::filesystem;

namespace {

constexpr std::uint32_t kModeTypeMask = 0170000;
constexpr std::uint32_t kModeTree = 0040000;
constexpr std::uint32_t kModeRegular = 0100000;
constexpr std::uint32_t kModeSymlink = 0120000;
constexpr std::uint32_t kModeGitlink = 0160000;

// Follows annotated tags until a commit is reached.
std::optional<git::ObjectId> peel_to_commit(const git::Repository& repo, git::ObjectId id) {
  for (int depth = 0; depth < 32; ++depth) {
    auto object = repo.objects().read(id);
    if (!object) return std::nullopt;
    if (object->type == git::ObjectType::commit) return id;
    if (object->type != git::ObjectType::tag) return std::nullopt;
    auto target = git::parse_tag_target(object->data);
    if (!target) return std::nullopt;
    id = *target;
  }
  return std::nullopt;
}

git::Commit load_commit(const git::Repository& repo, const CommitHash& hash) {
  const auto id = git::ObjectId::from_hex(hash.str());
  auto object = id ? repo.objects().read(*id) : std::nullopt;
  if (!object || object->type != git::ObjectType::commit) {
    fail(ErrorKind::UnknownRef, "commit " + hash.str() + " is not in " + repo.git_dir().string());
  }
  return git::parse_commit(object->data);
}

struct TreeFile {
  std::string path;
  std::uint32_t mode = 0;
  git::ObjectId blob;
};

void walk_tree(const git::Repository& repo, const git::ObjectId& tree_id, const std::string& prefix,
               std::vector<TreeFile>& out) {
  auto tree = repo.objects().read(tree_id);
  if (!tree || tree->type != git::ObjectType::tree) {
    fail(ErrorKind::IoError, "missing tree object " + tree_id.hex());
  }
  for (auto& entry : git::parse_tree(tree->data)) {
    const auto type = entry.mode & kModeTypeMask;
    auto path = prefix + entry.name;
    if (type == kModeTree) {
      walk_tree(repo, entry.id, path + "/", out);
    } else if (type == kModeRegular || type == kModeSymlink) {
      out.push_back(TreeFile{std::move(path), entry.mode, entry.id});
    }
    // Gitlinks (submodules) have no content in this repository.
    static_assert(kModeGitlink != kModeTree);
  }
}

std::vector<TreeFile> commit_files(const git::Repository& repo, const CommitHash& hash) {
  const auto commit = load_commit(repo, hash);
  std::vector<TreeFile> files;
  walk_tree(repo, commit.tree, "", files);
  std::sort(files.begin(), files.end(),
            [](const TreeFile& a, const TreeFile& b) { return a.path < b.path; });
  return files;
}

std::string default_archive_name(const git::Repository& repo, const fs::path& local_path) {
  auto base = repo.work_tree().empty() ? fs::absolute(local_path) : fs::absolute(repo.work_tree());
  base = base.lexically_normal();
  if (!base.has_filename()) base = base.parent_path();
  auto name = base.filename().string();
  if (repo.work_tree().empty() && name.ends_with(".git") && name.size() > 4) {
    name.resize(name.size() - 4);
  }
  return name.empty() ? "repository" : name;
}

}  // namespace

std::optional<CommitHash> CommitHash::try_parse(std::string_view text) {
  if (text.size() != 40) return std::nullopt;
  for (char c : text) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return std::nullopt;
  }
  return CommitHash(std::string(text));
}

CommitHash CommitHash::parse(std::string_view text) {
  auto hash = try_parse(text);
  if (!hash) fail(ErrorKind::ParseError, "not a 40-hex commit hash: '" + std::string(text) + "'");
  return *hash;
}

RepoInfo inspect_repo(const fs::path& local_path) {
  const auto repo = git::Repository::open(local_path);
  const auto head = repo.resolve_ref("HEAD");
  if (!head) fail(ErrorKind::NoCommits, local_path.string() + " has no commits on HEAD");

  std::optional<std::string> remote_url;
  const auto& config = repo.config();
  std::vector<std::string> remotes;
  for (const auto& name : config.subsections("remote")) {
    if (config.get("remote." + name + ".url")) remotes.push_back(name);
  }
  if (!remotes.empty()) {
    std::string chosen;
    if (auto branch = repo.head_branch()) {
      if (auto tracked = config.get("branch." + *branch + ".remote");
          tracked && std::find(remotes.begin(), remotes.end(), *tracked) != remotes.end()) {
        chosen = *tracked;
      }
    }
    if (chosen.empty() && std::find(remotes.begin(), remotes.end(), "origin") != remotes.end()) {
      chosen = "origin";
    }
    if (chosen.empty()) chosen = remotes.front();
    if (remotes.size() > 1) {
      warn("repository has " + std::to_string(remotes.size()) + " remotes; using '" + chosen + "'");
    }
    remote_url = config.get("remote." + chosen + ".url");
  }
  return RepoInfo{repo.work_tree().empty() ? repo.git_dir() : repo.work_tree(), remote_url,
                  CommitHash::parse(head->hex())};
}

CommitHash resolve_commit(const fs::path& local_path, std::string_view ref) {
  const auto repo = git::Repository::open(local_path);
  auto unknown = [&]() -> CommitHash {
    fail(ErrorKind::UnknownRef, "'" + std::string(ref) + "' does not name a commit in " +
                                    local_path.string());
  };
  if (ref.empty()) return unknown();

  if (auto full = git::ObjectId::from_hex(ref); full && ref.size() == 40) {
    if (auto commit = peel_to_commit(repo, *full)) return CommitHash::parse(commit->hex());
    return unknown();
  }

  const std::string name(ref);
  if (name.find("..") == std::string::npos) {
    // Same search order as git's rev-parse for a bare name.
    std::vector<std::string> candidates;
    const bool pseudo = std::all_of(name.begin(), name.end(),
                                    [](char c) { return (c >= 'A' && c <= 'Z') || c == '_'; });
    if (pseudo || name.starts_with("refs/")) candidates.push_back(name);
    for (const char* prefix : {"refs/", "refs/tags/", "refs/heads/", "refs/remotes/"}) {
      candidates.push_back(prefix + name);
    }
    candidates.push_back("refs/remotes/" + name + "/HEAD");
    for (const auto& candidate : candidates) {
      if (auto id = repo.resolve_ref(candidate)) {
        if (auto commit = peel_to_commit(repo, *id)) return CommitHash::parse(commit->hex());
      }
    }
  }

  std::string lower(ref);
  std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
  if (lower.size() >= 4) {
    std::vector<git::ObjectId> commits;
    for (const auto& id : repo.objects().find_prefix(lower)) {
      if (auto commit = peel_to_commit(repo, id);
          commit && std::find(commits.begin(), commits.end(), *commit) == commits.end()) {
        commits.push_back(*commit);
      }
    }
    if (commits.size() == 1) return CommitHash::parse(commits.front().hex());
    if (commits.size() > 1) {
      fail(ErrorKind::UnknownRef, "abbreviated hash '" + std::string(ref) + "' is ambiguous");
    }
  }
  return unknown();
}

std::vector<std::string> list_tree(const fs::path& local_path, const CommitHash& commit) {
  const auto repo = git::Repository::open(local_path);
  std::vector<std::string> paths;
  for (auto& file : commit_files(repo, commit)) paths.push_back(std::move(file.path));
  return paths;
}

fs::path export_archive(const fs::path& local_path, const CommitHash& commit, const fs::path& dest,
                        std::optional<std::string> name) {
  const auto repo = git::Repository::open(local_path);
  const auto info = load_commit(repo, commit);
  const std::string stem = name.value_or(default_archive_name(repo, local_path)) + "-" +
                           commit.short_hash();
  std::error_code ec;
  const fs::path target = fs::is_directory(dest, ec) ? dest / (stem + ".zip") : dest;

  const auto when = zip::to_dos_time(info.committer_time);
  zip::Writer writer;
  for (const auto& file : commit_files(repo, commit)) {
    auto blob = repo.objects().read(file.blob);
    if (!blob || blob->type != git::ObjectType::blob) {
      fail(ErrorKind::IoError, "missing blob " + file.blob.hex() + " for " + file.path);
    }
    std::uint32_t mode = 0100644;
    if ((file.mode & kModeTypeMask) == kModeSymlink) {
      mode = 0120777;
    } else if (file.mode & 0111) {
      mode = 0100755;
    }
    writer.add(stem + "/" + file.path, blob->data, mode, when);
  }
  write_file_atomic(target, writer.finish());
  return target;
}

}  // namespace curator
