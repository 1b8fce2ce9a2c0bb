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

#include "curator/provenance.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <charconv>
#include <set>

#include "curator/checksum.hpp"
#include "curator/error.hpp"
#include "xml_scan.hpp"

namespace curator {
namespace fs = std::filesystem;

namespace {

constexpr std::array<std::string_view, 3> kSlotNames{"software", "input", "output"};

struct Edit {
  std::size_t begin;
  std::size_t end;
  std::string replacement;
};

std::string apply_edits(std::string_view text, std::vector<Edit> edits) {
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.begin > b.begin; });
  std::string out(text);
  for (const auto& e : edits) out.replace(e.begin, e.end - e.begin, e.replacement);
  return out;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(kSpace) - first + 1);
}

std::optional<std::size_t> publish_element(const xml::Document& doc) {
  const auto& root = doc.elements[doc.top_level.front()];
  std::optional<std::size_t> found;
  for (auto child : root.children) {
    if (doc.elements[child].name != "publish") continue;
    if (found) fail(ErrorKind::SchemaError, "more than one <publish> element");
    found = child;
  }
  return found;
}

std::optional<std::size_t> slot_element(const xml::Document& doc, std::size_t publish, Slot slot) {
  std::optional<std::size_t> found;
  for (auto child : doc.elements[publish].children) {
    if (doc.elements[child].name != to_string(slot)) continue;
    if (found) fail(ErrorKind::SchemaError, "more than one <" + std::string(to_string(slot)) + "> element");
    found = child;
  }
  return found;
}

SlotState read_slot(const xml::Element& element, Slot slot) {
  SlotState state;
  const std::string where = "<" + std::string(to_string(slot)) + ">";
  if (slot != Slot::software) {
    if (const auto* patterns = element.attribute("patterns")) state.patterns = split_patterns(patterns->value);
  }
  if (const auto* id = element.attribute("article_id"); id && !trim(id->value).empty()) {
    const auto text = trim(id->value);
    ArticleId value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value <= 0) {
      fail(ErrorKind::SchemaError, where + " article_id must be a positive integer, got '" + id->value + "'");
    }
    state.article_id = value;
  }
  if (const auto* doi = element.attribute("doi"); doi && !trim(doi->value).empty()) {
    state.doi = std::string(trim(doi->value));
  }
  if (state.doi && !state.article_id) fail(ErrorKind::SchemaError, where + " has a doi but no article_id");
  return state;
}

// Edits that set `name` on the start tag of `element`.
void set_attribute(std::string_view text, const xml::Element& element, std::string_view name,
                   std::string_view value, std::vector<Edit>& edits, std::string& appended) {
  const auto escaped = xml::escape_attribute(value);
  if (const auto* attr = element.attribute(name)) {
    if (text.substr(attr->value_begin, attr->value_end - attr->value_begin) != escaped) {
      edits.push_back(Edit{attr->value_begin, attr->value_end, escaped});
    }
    return;
  }
  appended += " " + std::string(name) + "=\"" + escaped + "\"";
}

// Leading whitespace of the line containing `pos`, if only whitespace
// precedes `pos` on that line.
std::optional<std::string> line_indent(std::string_view text, std::size_t pos) {
  const auto line_start = text.rfind('\n', pos == 0 ? 0 : pos - 1);
  const auto begin = line_start == std::string_view::npos || pos == 0 ? 0 : line_start + 1;
  const auto prefix = text.substr(begin, pos - begin);
  if (!std::all_of(prefix.begin(), prefix.end(), [](char c) { return c == ' ' || c == '\t'; })) {
    return std::nullopt;
  }
  return std::string(prefix);
}

std::string render_constant(std::string_view name, std::string_view value) {
  return "<constant name=\"" + xml::escape_attribute(name) + "\" type=\"string\" value=\"" +
         xml::escape_attribute(value) + "\"/>";
}

}  // namespace

std::string_view to_string(Slot slot) noexcept { return kSlotNames[static_cast<std::size_t>(slot)]; }

std::optional<Slot> slot_from_string(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kSlotNames.size(); ++i) {
    if (kSlotNames[i] == text) return static_cast<Slot>(i);
  }
  return std::nullopt;
}

std::vector<std::string> split_patterns(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    const auto semi = text.find(';');
    const auto item = trim(text.substr(0, semi));
    if (!item.empty()) out.emplace_back(item);
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return out;
}

PublishOptions read_publish_options(const fs::path& project_path) {
  const auto text = read_file(project_path);
  const auto doc = xml::parse_document(text);
  PublishOptions options;
  const auto& root = doc.elements[doc.top_level.front()];
  if (const auto* name = root.attribute("name")) options.simulation_name = name->value;

  const auto publish = publish_element(doc);
  if (!publish) return options;
  const auto& element = doc.elements[*publish];
  if (const auto* enabled = element.attribute("enabled")) {
    const auto value = trim(enabled->value);
    if (value == "true") options.enabled = true;
    else if (value == "false") options.enabled = false;
    else fail(ErrorKind::SchemaError, "<publish enabled> must be true or false, got '" + enabled->value + "'");
  } else {
    options.enabled = true;
  }
  for (Slot slot : {Slot::software, Slot::input, Slot::output}) {
    if (auto index = slot_element(doc, *publish, slot)) {
      options.slot(slot) = read_slot(doc.elements[*index], slot);
    }
  }
  if (options.enabled) {
    for (Slot slot : {Slot::input, Slot::output}) {
      if (options.slot(slot).patterns.empty()) {
        fail(ErrorKind::SchemaError,
             "publishing is enabled but <" + std::string(to_string(slot)) + "> has no patterns");
      }
    }
  }
  return options;
}

void write_publication_ids(const fs::path& project_path, Slot slot, ArticleId article_id,
                           std::string_view doi) {
  if (article_id <= 0) fail(ErrorKind::InvalidMeta, "article id must be positive");
  const auto text = read_file(project_path);
  const auto doc = xml::parse_document(text);
  const auto publish = publish_element(doc);
  if (!publish) fail(ErrorKind::SchemaError, project_path.string() + " has no <publish> element");

  std::vector<Edit> edits;
  if (auto index = slot_element(doc, *publish, slot)) {
    const auto& element = doc.elements[*index];
    std::string appended;
    set_attribute(text, element, "article_id", std::to_string(article_id), edits, appended);
    set_attribute(text, element, "doi", doi, edits, appended);
    if (!appended.empty()) edits.push_back(Edit{element.attribute_insert_pos, element.attribute_insert_pos, appended});
  } else {
    const auto& container = doc.elements[*publish];
    if (container.self_closing) {
      fail(ErrorKind::SchemaError, "<publish/> is empty; cannot add <" + std::string(to_string(slot)) + ">");
    }
    const std::string element = "<" + std::string(to_string(slot)) + " article_id=\"" +
                                std::to_string(article_id) + "\" doi=\"" + xml::escape_attribute(doi) +
                                "\"/>";
    if (auto indent = line_indent(text, container.close_begin)) {
      const auto line_begin = container.close_begin - indent->size();
      edits.push_back(Edit{line_begin, line_begin, *indent + "  " + element + "\n"});
    } else {
      edits.push_back(Edit{container.close_begin, container.close_begin, element});
    }
  }
  if (edits.empty()) return;
  write_file_atomic(project_path, apply_edits(text, std::move(edits)));
}

std::vector<fs::path> expand_patterns(const std::vector<std::string>& patterns, const fs::path& base_dir) {
  std::error_code ec;
  if (!fs::is_directory(base_dir, ec)) fail(ErrorKind::IoError, base_dir.string() + " is not a directory");
  std::set<std::string> names;
  fs::directory_iterator it(base_dir, ec);
  if (ec) fail(ErrorKind::IoError, "cannot list " + base_dir.string());
  for (const auto& entry : it) {
    if (!entry.is_regular_file(ec)) continue;
    const auto name = entry.path().filename().string();
    if (name.ends_with(".md5")) continue;
    for (const auto& pattern : patterns) {
      if (!pattern.empty() && ::fnmatch(pattern.c_str(), name.c_str(), FNM_PERIOD) == 0) {
        names.insert(name);
        break;
      }
    }
  }
  std::vector<fs::path> out;
  out.reserve(names.size());
  for (const auto& name : names) out.push_back(base_dir / name);
  return out;
}

ConstantNames ConstantNames::with_prefix(std::string_view prefix) {
  ConstantNames names;
  names.software_version = std::string(prefix) + "Version";
  return names;
}

bool inject_provenance(const fs::path& stat_path, const ProvenanceConstants& constants,
                       const ConstantNames& names) {
  const auto text = read_file(stat_path);
  const auto header = xml::parse_prefix(text);

  const std::pair<const std::string*, const std::string*> wanted[] = {
      {&names.software_version, &constants.software_version.str()},
      {&names.software_doi, &constants.software_doi},
      {&names.input_doi, &constants.input_doi},
  };

  std::vector<Edit> edits;
  std::vector<std::string> missing;
  std::optional<std::size_t> first_constant;
  for (std::size_t i = 0; i < header.elements.size(); ++i) {
    if (header.elements[i].name == "constant" && !first_constant) first_constant = i;
  }
  std::optional<std::size_t> last_present;
  for (const auto& [name, value] : wanted) {
    bool present = false;
    for (std::size_t i = 0; i < header.elements.size(); ++i) {
      const auto& element = header.elements[i];
      if (element.name != "constant") continue;
      const auto* n = element.attribute("name");
      if (n == nullptr || n->value != *name) continue;
      present = true;
      if (!last_present || i > *last_present) last_present = i;
      const auto* type = element.attribute("type");
      const auto* v = element.attribute("value");
      if (element.self_closing && type && type->value == "string" && v) {
        const auto escaped = xml::escape_attribute(*value);
        if (v->value != *value) edits.push_back(Edit{v->value_begin, v->value_end, escaped});
      } else {
        edits.push_back(Edit{element.start_begin, element.close_end, render_constant(*name, *value)});
      }
    }
    if (!present) missing.push_back(render_constant(*name, *value));
  }

  if (!missing.empty() && last_present) {
    // Keep the provenance constants together: continue after the last one present.
    const auto& anchor = header.elements[*last_present];
    const auto indent = line_indent(text, anchor.start_begin).value_or("");
    std::string block;
    for (const auto& line : missing) block += "\n" + indent + line;
    edits.push_back(Edit{anchor.close_end, anchor.close_end, block});
  } else if (!missing.empty()) {
    // New constants go just before the first existing one, else as the first
    // children of a wrapper element such as <header>, else at the top.
    std::size_t at = 0;
    std::string indent;
    std::string block;
    const auto& first = header.elements[header.top_level.front()];
    if (first_constant || first.self_closing) {
      at = first_constant ? header.elements[*first_constant].start_begin : first.start_begin;
      if (auto i = line_indent(text, at)) {
        indent = *i;
        at -= i->size();
      }
    } else {
      at = first.start_end;
      if (at < text.size() && text[at] == '\n') {
        ++at;
      } else {
        block = "\n";
      }
    }
    for (const auto& line : missing) block += indent + line + "\n";
    edits.push_back(Edit{at, at, block});
  }

  if (edits.empty()) return false;
  write_file_atomic(stat_path, apply_edits(text, std::move(edits)));
  return true;
}

}  // namespace curator
