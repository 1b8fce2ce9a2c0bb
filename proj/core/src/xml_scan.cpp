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

#include "xml_scan.hpp"

#include <algorithm>
#include <charconv>

#include "curator/error.hpp"

namespace curator::xml {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_name_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == ':' || c == '-' || c == '.' || u >= 0x80;
}

bool is_name_start(char c) {
  return is_name_char(c) && !(c >= '0' && c <= '9') && c != '-' && c != '.';
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

class Scanner {
 public:
  Scanner(std::string_view text, bool prefix) : text_(text), prefix_(prefix) {}

  Document run() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == '<') {
        markup();
        continue;
      }
      const auto next = text_.find('<', pos_);
      const auto chunk = text_.substr(pos_, next == std::string_view::npos ? std::string_view::npos
                                                                            : next - pos_);
      const bool blank = std::all_of(chunk.begin(), chunk.end(), is_space);
      if (stack_.empty() && !blank) {
        if (prefix_) {
          if (!doc_.top_level.empty()) {
            doc_.end = pos_;
            return std::move(doc_);
          }
          error("expected markup before data");
        }
        error("text outside the root element");
      }
      if (!blank) check_entities(chunk);
      pos_ = next == std::string_view::npos ? text_.size() : next;
    }
    if (!stack_.empty()) error("unclosed element <" + doc_.elements[stack_.back()].name + ">");
    if (doc_.top_level.empty()) error("no elements");
    if (!prefix_ && doc_.top_level.size() != 1) error("more than one root element");
    doc_.end = text_.size();
    return std::move(doc_);
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    const auto line = 1 + std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(
                                                                      std::min(pos_, text_.size())),
                                     '\n');
    fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  void skip_to(std::string_view terminator, const char* what) {
    const auto end = text_.find(terminator, pos_);
    if (end == std::string_view::npos) error(std::string("unterminated ") + what);
    pos_ = end + terminator.size();
  }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string name() {
    const auto begin = pos_;
    if (pos_ >= text_.size() || !is_name_start(text_[pos_])) error("expected a name");
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(begin, pos_ - begin));
  }

  void markup() {
    if (starts_with("<!--")) {
      pos_ += 4;
      skip_to("-->", "comment");
    } else if (starts_with("<![CDATA[")) {
      if (stack_.empty()) error("CDATA outside an element");
      skip_to("]]>", "CDATA section");
    } else if (starts_with("<!")) {
      if (!stack_.empty() || !doc_.top_level.empty()) error("misplaced declaration");
      int depth = 0;
      for (++pos_; pos_ < text_.size(); ++pos_) {
        const char c = text_[pos_];
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == '>' && depth <= 0) break;
      }
      if (pos_ >= text_.size()) error("unterminated declaration");
      ++pos_;
    } else if (starts_with("<?")) {
      skip_to("?>", "processing instruction");
    } else if (starts_with("</")) {
      end_tag();
    } else {
      start_tag();
    }
  }

  void end_tag() {
    const auto begin = pos_;
    pos_ += 2;
    const auto tag = name();
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '>') error("malformed end tag </" + tag + ">");
    ++pos_;
    if (stack_.empty()) error("unexpected end tag </" + tag + ">");
    auto& element = doc_.elements[stack_.back()];
    if (element.name != tag) {
      error("end tag </" + tag + "> does not match <" + element.name + ">");
    }
    element.close_begin = begin;
    element.close_end = pos_;
    stack_.pop_back();
  }

  void start_tag() {
    Element element;
    element.start_begin = pos_;
    ++pos_;
    element.name = name();
    element.attribute_insert_pos = pos_;
    while (true) {
      const auto before = pos_;
      skip_space();
      if (pos_ >= text_.size()) error("unterminated start tag <" + element.name + ">");
      if (starts_with("/>")) {
        pos_ += 2;
        element.self_closing = true;
        break;
      }
      if (text_[pos_] == '>') {
        ++pos_;
        break;
      }
      if (before == pos_) error("expected whitespace between attributes");
      Attribute attr;
      attr.name = name();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '=') error("attribute '" + attr.name + "' has no value");
      ++pos_;
      skip_space();
      if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) {
        error("attribute '" + attr.name + "' value is not quoted");
      }
      const char quote = text_[pos_++];
      attr.value_begin = pos_;
      const auto close = text_.find(quote, pos_);
      if (close == std::string_view::npos) error("unterminated attribute value");
      attr.value_end = close;
      const auto raw = text_.substr(attr.value_begin, close - attr.value_begin);
      if (raw.find('<') != std::string_view::npos) error("'<' inside attribute value");
      attr.value = decode(raw);
      pos_ = close + 1;
      element.attribute_insert_pos = pos_;
      if (element.attribute(attr.name) != nullptr) error("duplicate attribute '" + attr.name + "'");
      element.attributes.push_back(std::move(attr));
    }
    element.start_end = pos_;
    const auto index = doc_.elements.size();
    if (stack_.empty()) {
      if (!prefix_ && !doc_.top_level.empty()) error("more than one root element");
      doc_.top_level.push_back(index);
    } else {
      element.parent = stack_.back();
      doc_.elements[stack_.back()].children.push_back(index);
    }
    if (element.self_closing) {
      element.close_begin = element.start_begin;
      element.close_end = element.start_end;
    }
    const bool push = !element.self_closing;
    doc_.elements.push_back(std::move(element));
    if (push) stack_.push_back(index);
  }

  void check_entities(std::string_view chunk) { (void)decode(chunk); }

  std::string decode(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out.push_back(raw[i]);
        continue;
      }
      const auto semi = raw.find(';', i);
      if (semi == std::string_view::npos) error("unterminated entity reference");
      const auto entity = raw.substr(i + 1, semi - i - 1);
      if (entity == "lt") out.push_back('<');
      else if (entity == "gt") out.push_back('>');
      else if (entity == "amp") out.push_back('&');
      else if (entity == "quot") out.push_back('"');
      else if (entity == "apos") out.push_back('\'');
      else if (entity.size() > 1 && entity[0] == '#') {
        const bool hex = entity[1] == 'x';
        const auto digits = entity.substr(hex ? 2 : 1);
        std::uint32_t cp = 0;
        const auto [ptr, ec] =
            std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
        if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() ||
            cp == 0 || cp > 0x10ffff) {
          error("bad character reference &" + std::string(entity) + ";");
        }
        append_utf8(out, cp);
      } else {
        error("unknown entity &" + std::string(entity) + ";");
      }
      i = semi;
    }
    return out;
  }

  std::string_view text_;
  bool prefix_;
  std::size_t pos_ = 0;
  Document doc_;
  std::vector<std::size_t> stack_;
};

}  // namespace

const Attribute* Element::attribute(std::string_view attr_name) const {
  for (const auto& a : attributes) {
    if (a.name == attr_name) return &a;
  }
  return nullptr;
}

Document parse_document(std::string_view text) { return Scanner(text, false).run(); }

Document parse_prefix(std::string_view text) { return Scanner(text, true).run(); }

std::string escape_attribute(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n': out += "&#10;"; break;
      case '\t': out += "&#9;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace curator::xml
