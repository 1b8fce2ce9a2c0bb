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

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curator/repo_client.hpp"
#include "curator/vcs.hpp"

namespace curator {

// Project file layout (root element name is free):
//
//   <simulation name="...">
//     <publish enabled="true|false">
//       <software article_id="" doi=""/>
//       <input patterns="*.msh;*.xml" article_id="" doi=""/>
//       <output patterns="*.vtu;*.stat" article_id="" doi=""/>
//     </publish>
//   </simulation>
//
// Empty attributes read as absent. A <publish> without `enabled` counts as
// enabled.
enum class Slot { software, input, output };

std::string_view to_string(Slot slot) noexcept;
std::optional<Slot> slot_from_string(std::string_view text) noexcept;

struct SlotState {
  std::vector<std::string> patterns;
  std::optional<ArticleId> article_id;
  std::optional<std::string> doi;

  friend bool operator==(const SlotState&, const SlotState&) = default;
};

struct PublishOptions {
  bool enabled = false;
  std::string simulation_name;
  std::array<SlotState, 3> slots;

  SlotState& slot(Slot s) { return slots[static_cast<std::size_t>(s)]; }
  const SlotState& slot(Slot s) const { return slots[static_cast<std::size_t>(s)]; }

  friend bool operator==(const PublishOptions&, const PublishOptions&) = default;
};

// Throws Error(ParseError) for malformed XML and Error(SchemaError) for
// schema violations, including an enabled publish block lacking input or
// output patterns.
PublishOptions read_publish_options(const std::filesystem::path& project_path);

// Sets article_id and doi on the slot element, editing only those attribute
// values (or appending them). The slot element is created inside <publish>
// if missing. Unchanged content is left byte-for-byte; the file is replaced
// atomically and not rewritten at all when nothing changes.
void write_publication_ids(const std::filesystem::path& project_path, Slot slot,
                           ArticleId article_id, std::string_view doi);

// Regular files in `base_dir` (no recursion) matching any of the shell-style
// patterns, sorted by name, without duplicates or "*.md5" sidecars.
std::vector<std::filesystem::path> expand_patterns(const std::vector<std::string>& patterns,
                                                   const std::filesystem::path& base_dir);

// Splits a ';'-separated pattern list, dropping empty items.
std::vector<std::string> split_patterns(std::string_view text);

struct ProvenanceConstants {
  CommitHash software_version;
  std::string software_doi;
  std::string input_doi;
};

struct ConstantNames {
  std::string software_version = "FluidityVersion";
  std::string software_doi = "SoftwareDOI";
  std::string input_doi = "InputDataDOI";

  // "<prefix>Version" for codes other than Fluidity.
  static ConstantNames with_prefix(std::string_view prefix);
};

// Inserts or updates the three string constants in the XML header of a
// stat-style file. Other constants, and the numeric rows after the header,
// are left untouched. Returns whether the file changed.
bool inject_provenance(const std::filesystem::path& stat_path, const ProvenanceConstants& constants,
                       const ConstantNames& names = {});

}  // namespace curator
