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

// Read-only access to an on-disk git repository: loose and packed objects,
// refs, and the repository config. Only what archive export and commit
// resolution need.
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace curator::git {

struct ObjectId {
  std::array<std::uint8_t, 20> bytes{};

  std::string hex() const;
  static std::optional<ObjectId> from_hex(std::string_view hex);
  static ObjectId from_raw(std::string_view raw20);

  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;
};

enum class ObjectType { commit = 1, tree = 2, blob = 3, tag = 4 };

struct Object {
  ObjectType type = ObjectType::blob;
  std::string data;
};

class Pack;

// Loose objects, packfiles and alternates of one repository.
class ObjectStore {
 public:
  explicit ObjectStore(const std::filesystem::path& objects_dir);
  ~ObjectStore();
  ObjectStore(ObjectStore&&) noexcept;
  ObjectStore& operator=(ObjectStore&&) noexcept;

  std::optional<Object> read(const ObjectId& id) const;
  bool contains(const ObjectId& id) const;
  // All object ids whose hex form starts with `prefix` (lowercase hex).
  std::vector<ObjectId> find_prefix(std::string_view prefix) const;

 private:
  std::vector<std::filesystem::path> object_dirs_;
  std::vector<std::unique_ptr<Pack>> packs_;
};

struct Commit {
  ObjectId tree;
  std::vector<ObjectId> parents;
  std::int64_t committer_time = 0;
};

struct TreeEntry {
  std::uint32_t mode = 0;
  std::string name;
  ObjectId id;
};

Commit parse_commit(std::string_view data);
std::vector<TreeEntry> parse_tree(std::string_view data);
// Target of an annotated tag, if the data is well formed.
std::optional<ObjectId> parse_tag_target(std::string_view data);

// Parsed `config` file: "section.subsection.key" -> values in file order.
// Section and key names are lowercased; subsections keep their case.
class ConfigFile {
 public:
  static ConfigFile parse(std::string_view text);
  std::optional<std::string> get(const std::string& key) const;
  // Subsection names of `section` in order of first appearance.
  std::vector<std::string> subsections(std::string_view section) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

class Repository {
 public:
  // `path` may be the work tree, any directory below it, or a bare
  // repository. Throws Error(NotARepository).
  static Repository open(const std::filesystem::path& path);

  const std::filesystem::path& git_dir() const noexcept { return git_dir_; }
  const std::filesystem::path& work_tree() const noexcept { return work_tree_; }
  const ObjectStore& objects() const noexcept { return *objects_; }
  const ConfigFile& config() const noexcept { return config_; }

  // Resolves HEAD or a full ref name ("refs/heads/main"), following
  // symbolic refs. Absent when the ref does not exist (or is unborn).
  std::optional<ObjectId> resolve_ref(std::string_view name) const;
  // Name of the branch HEAD points at, if HEAD is symbolic.
  std::optional<std::string> head_branch() const;

 private:
  static Repository open_at(const std::filesystem::path& path);
  std::optional<std::string> read_ref_text(std::string_view name) const;

  std::filesystem::path git_dir_;
  std::filesystem::path common_dir_;
  std::filesystem::path work_tree_;
  std::unique_ptr<ObjectStore> objects_;
  ConfigFile config_;
  std::map<std::string, std::string, std::less<>> packed_refs_;
};

}  // namespace curator::git
