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

#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "curator/checksum.hpp"
#include "curator/error.hpp"
#include "curator/publisher.hpp"

namespace curator {
namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<AuthorEntry> parse_authors(std::string_view text) {
  static const std::regex kToken(R"(<fs:([0-9]+)>)");
  std::vector<AuthorEntry> entries;
  std::set<AuthorId> seen;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    std::smatch match;
    if (!std::regex_search(line, match, kToken)) continue;
    const auto digits = match[1].str();
    AuthorId id = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
    if (ec != std::errc() || id <= 0) continue;
    if (!seen.insert(id).second) continue;
    entries.push_back(AuthorEntry{
        std::string(trim(std::string_view(line).substr(0, static_cast<std::size_t>(match.position(0))))),
        id});
  }
  return entries;
}

std::vector<AuthorEntry> parse_authors_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  if (std::filesystem::is_directory(path, ec)) {
    fail(ErrorKind::IoError, path.string() + " is a directory");
  }
  return parse_authors(read_file(path));
}

}  // namespace curator
