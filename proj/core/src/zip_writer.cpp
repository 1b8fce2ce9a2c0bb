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

#include "zip_writer.hpp"

#include <zlib.h>

#include <limits>

#include "curator/error.hpp"

namespace curator::zip {
namespace {

void put16(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put32(std::string& out, std::uint32_t v) {
  put16(out, v & 0xffff);
  put16(out, v >> 16);
}

std::string raw_deflate(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    fail(ErrorKind::Internal, "deflate init failed");
  }
  std::string out(deflateBound(&zs, static_cast<uLong>(data.size())), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  const auto produced = zs.total_out;
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) fail(ErrorKind::Internal, "deflate failed");
  out.resize(produced);
  return out;
}

constexpr std::uint16_t kVersionNeeded = 20;
constexpr std::uint16_t kVersionMadeBy = (3u << 8) | 20u;  // unix, 2.0
constexpr std::uint16_t kUtf8Names = 1u << 11;

}  // namespace

DosTime to_dos_time(std::int64_t unix_seconds) {
  std::tm tm{};
  const std::time_t t = static_cast<std::time_t>(unix_seconds);
  if (::gmtime_r(&t, &tm) == nullptr || tm.tm_year < 80) return DosTime{0, (1u << 5) | 1u};
  if (tm.tm_year > 207) {
    return DosTime{static_cast<std::uint16_t>((23u << 11) | (59u << 5) | 29u),
                   static_cast<std::uint16_t>((127u << 9) | (12u << 5) | 31u)};
  }
  DosTime dos;
  dos.time = static_cast<std::uint16_t>((tm.tm_hour << 11) | (tm.tm_min << 5) | (tm.tm_sec / 2));
  dos.date = static_cast<std::uint16_t>(((tm.tm_year - 80) << 9) | ((tm.tm_mon + 1) << 5) | tm.tm_mday);
  return dos;
}

void Writer::add(std::string_view name, std::string_view data, std::uint32_t unix_mode,
                 DosTime when) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (data.size() >= kMax || name.size() > 0xffff || count_ == 0xffff) {
    fail(ErrorKind::IoError, "archive exceeds plain zip limits at " + std::string(name));
  }
  const auto crc = static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size())));
  std::string deflated = raw_deflate(data);
  const bool store = deflated.size() >= data.size();
  const std::string_view payload = store ? data : std::string_view(deflated);
  const std::uint16_t method = store ? 0 : 8;
  if (body_.size() + payload.size() + name.size() + 30 >= kMax) {
    fail(ErrorKind::IoError, "archive exceeds 4 GiB");
  }
  const auto offset = static_cast<std::uint32_t>(body_.size());

  put32(body_, 0x04034b50);
  put16(body_, kVersionNeeded);
  put16(body_, kUtf8Names);
  put16(body_, method);
  put16(body_, when.time);
  put16(body_, when.date);
  put32(body_, crc);
  put32(body_, static_cast<std::uint32_t>(payload.size()));
  put32(body_, static_cast<std::uint32_t>(data.size()));
  put16(body_, static_cast<std::uint32_t>(name.size()));
  put16(body_, 0);
  body_.append(name);
  body_.append(payload);

  put32(central_, 0x02014b50);
  put16(central_, kVersionMadeBy);
  put16(central_, kVersionNeeded);
  put16(central_, kUtf8Names);
  put16(central_, method);
  put16(central_, when.time);
  put16(central_, when.date);
  put32(central_, crc);
  put32(central_, static_cast<std::uint32_t>(payload.size()));
  put32(central_, static_cast<std::uint32_t>(data.size()));
  put16(central_, static_cast<std::uint32_t>(name.size()));
  put16(central_, 0);  // extra
  put16(central_, 0);  // comment
  put16(central_, 0);  // disk
  put16(central_, 0);  // internal attributes
  put32(central_, unix_mode << 16);
  put32(central_, offset);
  central_.append(name);
  ++count_;
}

std::string Writer::finish() {
  if (finished_) fail(ErrorKind::Internal, "zip writer already finished");
  finished_ = true;
  std::string out = std::move(body_);
  const auto cd_offset = static_cast<std::uint32_t>(out.size());
  out.append(central_);
  put32(out, 0x06054b50);
  put16(out, 0);
  put16(out, 0);
  put16(out, count_);
  put16(out, count_);
  put32(out, static_cast<std::uint32_t>(central_.size()));
  put32(out, cd_offset);
  put16(out, 0);
  return out;
}

}  // namespace curator::zip
