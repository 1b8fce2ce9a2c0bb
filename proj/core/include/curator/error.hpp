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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curator {

// Closed set of failure kinds surfaced by every module. The names double as
// the wire-level "error" strings and as the CLI diagnostic prefix.
enum class ErrorKind {
  AuthFailure,
  InvalidMeta,
  TransportError,
  NotFound,
  IoError,
  NothingToPublish,
  AlreadyMinted,
  Conflict,
  KindMismatch,
  BindError,
  NotARepository,
  NoCommits,
  UnknownRef,
  ParseError,
  SchemaError,
  MissingProvenance,
  Internal,
};

std::string_view to_string(ErrorKind kind) noexcept;
std::optional<ErrorKind> error_kind_from_string(std::string_view name) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view detail() const noexcept { return what(); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace curator
