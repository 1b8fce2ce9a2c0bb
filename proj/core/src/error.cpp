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

#include "curator/error.hpp"

#include <array>
#include <utility>

namespace curator {
namespace {

constexpr std::array<std::pair<ErrorKind, std::string_view>, 17> kNames{{
    {ErrorKind::AuthFailure, "AuthFailure"},
    {ErrorKind::InvalidMeta, "InvalidMeta"},
    {ErrorKind::TransportError, "TransportError"},
    {ErrorKind::NotFound, "NotFound"},
    {ErrorKind::IoError, "IoError"},
    {ErrorKind::NothingToPublish, "NothingToPublish"},
    {ErrorKind::AlreadyMinted, "AlreadyMinted"},
    {ErrorKind::Conflict, "Conflict"},
    {ErrorKind::KindMismatch, "KindMismatch"},
    {ErrorKind::BindError, "BindError"},
    {ErrorKind::NotARepository, "NotARepository"},
    {ErrorKind::NoCommits, "NoCommits"},
    {ErrorKind::UnknownRef, "UnknownRef"},
    {ErrorKind::ParseError, "ParseError"},
    {ErrorKind::SchemaError, "SchemaError"},
    {ErrorKind::MissingProvenance, "MissingProvenance"},
    {ErrorKind::Internal, "Internal"},
}};

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "Internal";
}

std::optional<ErrorKind> error_kind_from_string(std::string_view name) noexcept {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

}  // namespace curator
