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

// Offset-preserving XML scanner. It records the byte span of every element
// and attribute value so callers can rewrite one attribute without touching
// the rest of the document. No DTD processing, no namespaces.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace curator::xml {

struct Attribute {
  std::string name;
  std::string value;  // entity-decoded
  std::size_t value_begin = 0;  // raw value span, excluding quotes
  std::size_t value_end = 0;
};

inline constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

struct Element {
  std::string name;
  std::vector<Attribute> attributes;
  std::size_t start_begin = 0;  // '<' of the start tag
  std::size_t start_end = 0;    // one past its '>'
  std::size_t close_begin = 0;  // '<' of the end tag (== start_begin if self-closing)
  std::size_t close_end = 0;    // one past the end tag (== start_end if self-closing)
  bool self_closing = false;
  std::size_t parent = kNoParent;
  std::vector<std::size_t> children;

  const Attribute* attribute(std::string_view attr_name) const;
  // Offset just past the last attribute's closing quote, or past the name.
  std::size_t attribute_insert_pos = 0;
};

struct Document {
  std::vector<Element> elements;  // document order
  std::vector<std::size_t> top_level;
  std::size_t end = 0;  // where scanning stopped (prefix mode)
};

// A complete document with exactly one root element. Throws
// Error(ParseError) with a line number.
Document parse_document(std::string_view text);

// Markup from the start of `text` up to the first non-blank character data
// outside any element. Several top-level elements are allowed; all opened
// elements must be closed before the data starts.
Document parse_prefix(std::string_view text);

std::string escape_attribute(std::string_view value);

}  // namespace curator::xml
