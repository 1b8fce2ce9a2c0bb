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

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace curator {

// Lowercase hex MD5 digest of a byte range.
std::string md5_hex(std::span<const std::byte> bytes);
std::string md5_hex(std::string_view bytes);

// Streams the file through the digest; throws Error(IoError) when unreadable.
std::string md5_file(const std::filesystem::path& path);

// True for exactly 32 lowercase hex characters.
bool is_md5_hex(std::string_view text) noexcept;

// Whole-file helpers shared by the modules that move bytes around.
std::string read_file(const std::filesystem::path& path);

// Writes via a sibling temporary and rename(2), so readers never observe a
// partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace curator
