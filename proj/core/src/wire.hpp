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

// JSON shapes of the depot wire protocol, shared by the HTTP facade, the
// HTTP backend and the depot state file.
#pragma once

#include <json.hpp>

#include "curator/error.hpp"
#include "curator/repo_client.hpp"

namespace curator::wire {

using nlohmann::json;

json to_json(const FileEntry& entry);
json to_json(const ArticleRecord& record);
json meta_to_json(const ArticleMeta& meta);

// Throw Error(ParseError) on shape mismatches.
FileEntry file_entry_from_json(const json& j);
ArticleRecord article_from_json(const json& j);
ArticleMeta meta_from_json(const json& j);

json error_body(ErrorKind kind);
int http_status(ErrorKind kind) noexcept;

// Inverse of http_status/error_body for the client side.
ErrorKind error_from_response(int status, const std::string& body);

}  // namespace curator::wire
