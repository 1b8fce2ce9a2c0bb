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

// Minimal deterministic zip (PKWARE APPNOTE 2.0) writer: no zip64, no
// encryption, no extra fields, DOS timestamps supplied by the caller.
#pragma once

#include <cstdint>
#include <ctime>
#include <string>
#include <string_view>

namespace curator::zip {

struct DosTime {
  std::uint16_t time = 0;
  std::uint16_t date = 0;
};

// UTC wall time, clamped to the 1980..2107 range representable by DOS.
DosTime to_dos_time(std::int64_t unix_seconds);

class Writer {
 public:
  // Entries are written in call order. `unix_mode` lands in the high half
  // of the external attributes.
  void add(std::string_view name, std::string_view data, std::uint32_t unix_mode, DosTime when);
  std::string finish();

 private:
  std::string body_;
  std::string central_;
  std::uint32_t count_ = 0;
  bool finished_ = false;
};

}  // namespace curator::zip
