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

#include "git_objects.hpp"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "curator/error.hpp"

namespace curator::git {
namespace fs = std::filesystem;

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::optional<std::string> slurp(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void corrupt(const std::string& what) {
  fail(ErrorKind::IoError, "corrupt repository: " + what);
}

// Inflates a zlib stream. With `expected` set the output must have exactly
// that size; the input may extend past the end of the stream.
std::string inflate(std::string_view input, std::optional<std::size_t> expected) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) corrupt("zlib init");
  // One spare byte lets an oversized stream be detected.
  std::string out(expected ? *expected + 1 : input.size() * 4 + 64, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(input.data()));
  zs.avail_in = static_cast<uInt>(std::min<std::size_t>(input.size(), UINT32_MAX));
  while (true) {
    zs.next_out = reinterpret_cast<Bytef*>(out.data() + zs.total_out);
    zs.avail_out = static_cast<uInt>(out.size() - zs.total_out);
    const int rc = ::inflate(&zs, Z_NO_FLUSH);
    if (rc == Z_STREAM_END) break;
    if (rc == Z_OK || (rc == Z_BUF_ERROR && zs.avail_out == 0)) {
      if (zs.avail_out == 0) {
        if (expected) {
          inflateEnd(&zs);
          corrupt("object larger than declared");
        }
        out.resize(out.size() * 2);
      }
      continue;
    }
    inflateEnd(&zs);
    corrupt("zlib stream");
  }
  const std::size_t produced = zs.total_out;
  inflateEnd(&zs);
  if (expected && produced != *expected) corrupt("object size mismatch");
  out.resize(produced);
  return out;
}

std::optional<ObjectType> type_from_name(std::string_view name) {
  if (name == "commit") return ObjectType::commit;
  if (name == "tree") return ObjectType::tree;
  if (name == "blob") return ObjectType::blob;
  if (name == "tag") return ObjectType::tag;
  return std::nullopt;
}

std::uint32_t be32(const unsigned char* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) |
         std::uint32_t{p[3]};
}

std::string apply_delta(std::string_view base, std::string_view delta) {
  std::size_t pos = 0;
  auto varint = [&]() {
    std::uint64_t value = 0;
    int shift = 0;
    while (true) {
      if (pos >= delta.size()) corrupt("truncated delta header");
      const auto c = static_cast<unsigned char>(delta[pos++]);
      value |= std::uint64_t{c & 0x7fu} << shift;
      shift += 7;
      if (!(c & 0x80)) break;
    }
    return value;
  };
  const auto src_size = varint();
  const auto dst_size = varint();
  if (src_size != base.size()) corrupt("delta base size mismatch");
  std::string out;
  out.reserve(dst_size);
  while (pos < delta.size()) {
    const auto op = static_cast<unsigned char>(delta[pos++]);
    if (op & 0x80) {
      std::uint64_t offset = 0;
      std::uint64_t size = 0;
      for (int i = 0; i < 4; ++i) {
        if (op & (1u << i)) {
          if (pos >= delta.size()) corrupt("truncated delta copy");
          offset |= std::uint64_t{static_cast<unsigned char>(delta[pos++])} << (8 * i);
        }
      }
      for (int i = 0; i < 3; ++i) {
        if (op & (0x10u << i)) {
          if (pos >= delta.size()) corrupt("truncated delta copy");
          size |= std::uint64_t{static_cast<unsigned char>(delta[pos++])} << (8 * i);
        }
      }
      if (size == 0) size = 0x10000;
      if (offset + size > base.size()) corrupt("delta copy out of range");
      out.append(base.substr(offset, size));
    } else if (op != 0) {
      if (pos + op > delta.size()) corrupt("truncated delta insert");
      out.append(delta.substr(pos, op));
      pos += op;
    } else {
      corrupt("reserved delta opcode");
    }
  }
  if (out.size() != dst_size) corrupt("delta result size mismatch");
  return out;
}

// Read-only memory map of a whole file.
class MappedFile {
 public:
  explicit MappedFile(const fs::path& path) {
    const int fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
    if (fd < 0) fail(ErrorKind::IoError, "cannot open " + path.string());
    struct stat st{};
    if (::fstat(fd, &st) != 0) {
      ::close(fd);
      fail(ErrorKind::IoError, "cannot stat " + path.string());
    }
    size_ = static_cast<std::size_t>(st.st_size);
    if (size_ > 0) {
      void* addr = ::mmap(nullptr, size_, PROT_READ, MAP_PRIVATE, fd, 0);
      if (addr == MAP_FAILED) {
        ::close(fd);
        fail(ErrorKind::IoError, "cannot map " + path.string());
      }
      data_ = static_cast<const char*>(addr);
    }
    ::close(fd);
  }
  ~MappedFile() {
    if (data_ != nullptr) ::munmap(const_cast<char*>(data_), size_);
  }
  MappedFile(const MappedFile&) = delete;
  MappedFile& operator=(const MappedFile&) = delete;

  std::string_view view() const noexcept { return {data_, size_}; }

 private:
  const char* data_ = nullptr;
  std::size_t size_ = 0;
};

}  // namespace

std::string ObjectId::hex() const {
  std::string out;
  out.reserve(40);
  for (auto b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

std::optional<ObjectId> ObjectId::from_hex(std::string_view hex) {
  if (hex.size() != 40) return std::nullopt;
  ObjectId id;
  for (std::size_t i = 0; i < 20; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    id.bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return id;
}

ObjectId ObjectId::from_raw(std::string_view raw20) {
  ObjectId id;
  std::memcpy(id.bytes.data(), raw20.data(), 20);
  return id;
}

// One packfile with its index, mapped on construction.
class Pack {
 public:
  explicit Pack(const fs::path& idx_path) : idx_(idx_path), pack_(fs::path(idx_path).replace_extension(".pack")) {
    const auto idx = idx_.view();
    const auto* p = reinterpret_cast<const unsigned char*>(idx.data());
    if (idx.size() >= 8 && std::memcmp(p, "\377tOc", 4) == 0) {
      if (be32(p + 4) != 2) corrupt("unsupported pack index version");
      version_ = 2;
      fanout_ = p + 8;
    } else {
      version_ = 1;
      fanout_ = p;
    }
    if (idx.size() < static_cast<std::size_t>(fanout_ - p) + 1024) corrupt("short pack index");
    count_ = be32(fanout_ + 255 * 4);
    const std::size_t need = version_ == 2 ? 8 + 1024 + count_ * (20 + 4 + 4) : 1024 + count_ * 24;
    if (idx.size() < need) corrupt("truncated pack index");
    const auto pack = pack_.view();
    if (pack.size() < 12 || std::memcmp(pack.data(), "PACK", 4) != 0) corrupt("bad pack header");
  }

  std::uint32_t count() const noexcept { return count_; }

  ObjectId id_at(std::uint32_t i) const {
    const unsigned char* base =
        version_ == 2 ? fanout_ + 1024 + std::size_t{i} * 20 : fanout_ + 1024 + std::size_t{i} * 24 + 4;
    return ObjectId::from_raw({reinterpret_cast<const char*>(base), 20});
  }

  std::optional<std::uint64_t> offset_of(const ObjectId& id) const {
    const auto first = id.bytes[0];
    std::uint32_t lo = first == 0 ? 0 : be32(fanout_ + (first - 1) * 4);
    std::uint32_t hi = be32(fanout_ + first * 4);
    while (lo < hi) {
      const std::uint32_t mid = lo + (hi - lo) / 2;
      const auto candidate = id_at(mid);
      if (candidate == id) return offset_at(mid);
      if (candidate < id) lo = mid + 1;
      else hi = mid;
    }
    return std::nullopt;
  }

  // Resolves the entry at `offset`, applying delta chains. REF_DELTA bases
  // outside this pack are looked up through `store`.
  Object read_at(std::uint64_t offset, const ObjectStore& store, int depth = 0) const {
    if (depth > 10000) corrupt("delta chain too deep");
    const auto pack = pack_.view();
    std::size_t pos = offset;
    auto next = [&]() -> unsigned char {
      if (pos >= pack.size()) corrupt("pack entry past end");
      return static_cast<unsigned char>(pack[pos++]);
    };
    unsigned char c = next();
    const int type = (c >> 4) & 7;
    std::uint64_t size = c & 0x0f;
    int shift = 4;
    while (c & 0x80) {
      c = next();
      size |= std::uint64_t{c & 0x7fu} << shift;
      shift += 7;
    }
    if (type >= 1 && type <= 4) {
      return Object{static_cast<ObjectType>(type), inflate(pack.substr(pos), size)};
    }
    Object base;
    if (type == 6) {
      c = next();
      std::uint64_t back = c & 0x7f;
      while (c & 0x80) {
        c = next();
        back = ((back + 1) << 7) | (c & 0x7f);
      }
      if (back == 0 || back > offset) corrupt("bad ofs-delta base");
      base = read_at(offset - back, store, depth + 1);
    } else if (type == 7) {
      if (pos + 20 > pack.size()) corrupt("truncated ref-delta");
      const auto base_id = ObjectId::from_raw(pack.substr(pos, 20));
      pos += 20;
      if (auto local = offset_of(base_id)) {
        base = read_at(*local, store, depth + 1);
      } else if (auto other = store.read(base_id)) {
        base = std::move(*other);
      } else {
        corrupt("missing ref-delta base " + base_id.hex());
      }
    } else {
      corrupt("unknown pack entry type");
    }
    const auto delta = inflate(pack.substr(pos), size);
    return Object{base.type, apply_delta(base.data, delta)};
  }

 private:
  std::uint64_t offset_at(std::uint32_t i) const {
    if (version_ == 1) return be32(fanout_ + 1024 + std::size_t{i} * 24);
    const unsigned char* offsets = fanout_ + 1024 + std::size_t{count_} * 24;
    const std::uint32_t small = be32(offsets + std::size_t{i} * 4);
    if (!(small & 0x80000000u)) return small;
    const unsigned char* large = offsets + std::size_t{count_} * 4 + std::size_t{small & 0x7fffffffu} * 8;
    return (std::uint64_t{be32(large)} << 32) | be32(large + 4);
  }

  MappedFile idx_;
  MappedFile pack_;
  int version_ = 2;
  const unsigned char* fanout_ = nullptr;
  std::uint32_t count_ = 0;
};

ObjectStore::ObjectStore(const fs::path& objects_dir) {
  // objects/info/alternates may chain further stores; guard against cycles.
  std::vector<fs::path> pending{objects_dir};
  std::set<fs::path> seen;
  while (!pending.empty()) {
    auto dir = fs::weakly_canonical(pending.back());
    pending.pop_back();
    if (!seen.insert(dir).second || !fs::is_directory(dir)) continue;
    object_dirs_.push_back(dir);
    if (auto alternates = slurp(dir / "info" / "alternates")) {
      std::istringstream lines(*alternates);
      std::string line;
      while (std::getline(lines, line)) {
        const auto entry = trim(line);
        if (entry.empty() || entry.front() == '#') continue;
        fs::path alt(entry);
        pending.push_back(alt.is_absolute() ? alt : dir / alt);
      }
    }
    std::error_code ec;
    std::vector<fs::path> idx_files;
    for (const auto& e : fs::directory_iterator(dir / "pack", ec)) {
      if (e.path().extension() == ".idx" &&
          fs::exists(fs::path(e.path()).replace_extension(".pack"))) {
        idx_files.push_back(e.path());
      }
    }
    std::sort(idx_files.begin(), idx_files.end());
    for (const auto& idx : idx_files) packs_.push_back(std::make_unique<Pack>(idx));
  }
}

ObjectStore::~ObjectStore() = default;
ObjectStore::ObjectStore(ObjectStore&&) noexcept = default;
ObjectStore& ObjectStore::operator=(ObjectStore&&) noexcept = default;

std::optional<Object> ObjectStore::read(const ObjectId& id) const {
  const auto hex = id.hex();
  for (const auto& dir : object_dirs_) {
    auto raw = slurp(dir / hex.substr(0, 2) / hex.substr(2));
    if (!raw) continue;
    const auto data = inflate(*raw, std::nullopt);
    const auto nul = data.find('\0');
    const auto space = data.find(' ');
    if (nul == std::string::npos || space == std::string::npos || space > nul) {
      corrupt("bad loose object header " + hex);
    }
    const auto type = type_from_name(std::string_view(data).substr(0, space));
    std::uint64_t size = 0;
    const auto size_text = std::string_view(data).substr(space + 1, nul - space - 1);
    const auto [ptr, ec] = std::from_chars(size_text.data(), size_text.data() + size_text.size(), size);
    if (!type || ec != std::errc() || size != data.size() - nul - 1) {
      corrupt("bad loose object header " + hex);
    }
    return Object{*type, data.substr(nul + 1)};
  }
  for (const auto& pack : packs_) {
    if (auto offset = pack->offset_of(id)) return pack->read_at(*offset, *this);
  }
  return std::nullopt;
}

bool ObjectStore::contains(const ObjectId& id) const {
  const auto hex = id.hex();
  for (const auto& dir : object_dirs_) {
    if (fs::exists(dir / hex.substr(0, 2) / hex.substr(2))) return true;
  }
  for (const auto& pack : packs_) {
    if (pack->offset_of(id)) return true;
  }
  return false;
}

std::vector<ObjectId> ObjectStore::find_prefix(std::string_view prefix) const {
  std::set<ObjectId> hits;
  if (prefix.size() < 2 || prefix.size() > 40) return {};
  for (char c : prefix) {
    if (hex_value(c) < 0 || (c >= 'A' && c <= 'F')) return {};
  }
  const std::string shard(prefix.substr(0, 2));
  for (const auto& dir : object_dirs_) {
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(dir / shard, ec)) {
      const auto name = shard + e.path().filename().string();
      if (name.starts_with(prefix)) {
        if (auto id = ObjectId::from_hex(name)) hits.insert(*id);
      }
    }
  }
  for (const auto& pack : packs_) {
    // Linear scan; pack indexes are sorted so this could bisect.
    for (std::uint32_t i = 0; i < pack->count(); ++i) {
      const auto id = pack->id_at(i);
      if (id.hex().starts_with(prefix)) hits.insert(id);
    }
  }
  return {hits.begin(), hits.end()};
}

Commit parse_commit(std::string_view data) {
  Commit commit;
  bool have_tree = false;
  while (!data.empty()) {
    const auto eol = data.find('\n');
    const auto line = data.substr(0, eol);
    if (line.empty()) break;  // headers end at the first blank line
    if (line.starts_with("tree ")) {
      auto id = ObjectId::from_hex(line.substr(5));
      if (!id) corrupt("bad tree line in commit");
      commit.tree = *id;
      have_tree = true;
    } else if (line.starts_with("parent ")) {
      auto id = ObjectId::from_hex(line.substr(7));
      if (!id) corrupt("bad parent line in commit");
      commit.parents.push_back(*id);
    } else if (line.starts_with("committer ")) {
      // "committer Name <email> <epoch> <tz>"
      const auto gt = line.rfind('>');
      if (gt == std::string_view::npos) corrupt("bad committer line");
      auto rest = trim(line.substr(gt + 1));
      const auto sp = rest.find(' ');
      const auto epoch = rest.substr(0, sp);
      const auto [ptr, ec] = std::from_chars(epoch.data(), epoch.data() + epoch.size(),
                                             commit.committer_time);
      if (ec != std::errc()) corrupt("bad committer timestamp");
    }
    if (eol == std::string_view::npos) break;
    data.remove_prefix(eol + 1);
  }
  if (!have_tree) corrupt("commit without tree");
  return commit;
}

std::vector<TreeEntry> parse_tree(std::string_view data) {
  std::vector<TreeEntry> entries;
  while (!data.empty()) {
    const auto sp = data.find(' ');
    const auto nul = data.find('\0');
    if (sp == std::string_view::npos || nul == std::string_view::npos || sp > nul ||
        nul + 21 > data.size()) {
      corrupt("bad tree entry");
    }
    TreeEntry entry;
    const auto mode = data.substr(0, sp);
    const auto [ptr, ec] = std::from_chars(mode.data(), mode.data() + mode.size(), entry.mode, 8);
    if (ec != std::errc()) corrupt("bad tree entry mode");
    entry.name = std::string(data.substr(sp + 1, nul - sp - 1));
    entry.id = ObjectId::from_raw(data.substr(nul + 1, 20));
    entries.push_back(std::move(entry));
    data.remove_prefix(nul + 21);
  }
  return entries;
}

std::optional<ObjectId> parse_tag_target(std::string_view data) {
  if (!data.starts_with("object ") || data.size() < 47) return std::nullopt;
  return ObjectId::from_hex(data.substr(7, 40));
}

ConfigFile ConfigFile::parse(std::string_view text) {
  ConfigFile config;
  std::string section;
  std::istringstream lines{std::string(text)};
  std::string raw;
  while (std::getline(lines, raw)) {
    auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string_view::npos) continue;
      auto header = trim(line.substr(1, close - 1));
      const auto quote = header.find('"');
      if (quote != std::string_view::npos) {
        std::string name(trim(header.substr(0, quote)));
        std::transform(name.begin(), name.end(), name.begin(), ::tolower);
        std::string sub;
        for (std::size_t i = quote + 1; i < header.size() && header[i] != '"'; ++i) {
          if (header[i] == '\\' && i + 1 < header.size()) ++i;
          sub.push_back(header[i]);
        }
        section = name + "." + sub;
      } else {
        section = std::string(header);
        std::transform(section.begin(), section.end(), section.begin(), ::tolower);
      }
      line = trim(line.substr(close + 1));
      if (line.empty()) continue;
    }
    const auto eq = line.find('=');
    std::string key(trim(line.substr(0, eq)));
    std::transform(key.begin(), key.end(), key.begin(), ::tolower);
    std::string value;
    if (eq != std::string_view::npos) {
      bool quoted = false;
      for (char c : trim(line.substr(eq + 1))) {
        if (c == '"') {
          quoted = !quoted;
          continue;
        }
        if (!quoted && (c == '#' || c == ';')) break;
        value.push_back(c);
      }
      value = std::string(trim(value));
    } else {
      value = "true";
    }
    config.entries_.emplace_back(section + "." + key, std::move(value));
  }
  return config;
}

std::optional<std::string> ConfigFile::get(const std::string& key) const {
  // Last assignment wins, as with git itself.
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->first == key) return it->second;
  }
  return std::nullopt;
}

std::vector<std::string> ConfigFile::subsections(std::string_view section) const {
  std::vector<std::string> out;
  const std::string prefix = std::string(section) + ".";
  for (const auto& [key, value] : entries_) {
    if (!key.starts_with(prefix)) continue;
    const auto rest = std::string_view(key).substr(prefix.size());
    const auto dot = rest.rfind('.');
    if (dot == std::string_view::npos) continue;
    std::string sub(rest.substr(0, dot));
    if (std::find(out.begin(), out.end(), sub) == out.end()) out.push_back(std::move(sub));
  }
  return out;
}

Repository Repository::open(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    fail(ErrorKind::NotARepository, path.string() + " is not a directory");
  }
  // Like git, search upwards from a subdirectory of the work tree.
  fs::path dir = fs::weakly_canonical(fs::absolute(path), ec);
  if (ec) dir = fs::absolute(path);
  while (!fs::exists(dir / ".git", ec) && !fs::is_regular_file(dir / "HEAD", ec) &&
         dir.has_relative_path()) {
    dir = dir.parent_path();
  }
  return open_at(fs::exists(dir / ".git", ec) || fs::is_regular_file(dir / "HEAD", ec) ? dir : path);
}

Repository Repository::open_at(const fs::path& path) {
  std::error_code ec;
  Repository repo;
  const auto dot_git = path / ".git";
  if (fs::is_directory(dot_git, ec)) {
    repo.git_dir_ = dot_git;
    repo.work_tree_ = path;
  } else if (fs::is_regular_file(dot_git, ec)) {
    // Linked worktree or submodule: ".git" holds "gitdir: <path>".
    const auto text = slurp(dot_git).value_or("");
    const auto line = trim(text);
    if (!line.starts_with("gitdir:")) {
      fail(ErrorKind::NotARepository, dot_git.string() + " is not a gitdir link");
    }
    fs::path target(trim(line.substr(7)));
    repo.git_dir_ = target.is_absolute() ? target : path / target;
    repo.work_tree_ = path;
  } else if (fs::is_regular_file(path / "HEAD", ec) && fs::is_directory(path / "objects", ec) &&
             fs::is_directory(path / "refs", ec)) {
    repo.git_dir_ = path;
  } else {
    fail(ErrorKind::NotARepository, path.string() + " is not a git repository");
  }
  if (!fs::is_regular_file(repo.git_dir_ / "HEAD", ec)) {
    fail(ErrorKind::NotARepository, repo.git_dir_.string() + " has no HEAD");
  }
  repo.common_dir_ = repo.git_dir_;
  if (auto common = slurp(repo.git_dir_ / "commondir")) {
    fs::path c(trim(*common));
    repo.common_dir_ = c.is_absolute() ? c : repo.git_dir_ / c;
  }
  if (!fs::is_directory(repo.common_dir_ / "objects", ec)) {
    fail(ErrorKind::NotARepository, repo.common_dir_.string() + " has no object store");
  }
  repo.objects_ = std::make_unique<ObjectStore>(repo.common_dir_ / "objects");
  repo.config_ = ConfigFile::parse(slurp(repo.common_dir_ / "config").value_or(""));
  if (auto packed = slurp(repo.common_dir_ / "packed-refs")) {
    std::istringstream lines(*packed);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.size() < 42 || line[0] == '#' || line[0] == '^') continue;
      repo.packed_refs_.emplace(std::string(trim(line.substr(41))), line.substr(0, 40));
    }
  }
  return repo;
}

std::optional<std::string> Repository::read_ref_text(std::string_view name) const {
  // Per-worktree refs (HEAD and friends) live in git_dir, shared ones in the
  // common dir.
  const bool per_worktree = name.find('/') == std::string_view::npos;
  const auto base = per_worktree ? git_dir_ : common_dir_;
  if (auto text = slurp(base / std::string(name))) return std::string(trim(*text));
  if (auto it = packed_refs_.find(name); it != packed_refs_.end()) return it->second;
  return std::nullopt;
}

std::optional<ObjectId> Repository::resolve_ref(std::string_view name) const {
  std::string current(name);
  for (int depth = 0; depth < 10; ++depth) {
    const auto text = read_ref_text(current);
    if (!text) return std::nullopt;
    if (std::string_view(*text).starts_with("ref:")) {
      current = std::string(trim(std::string_view(*text).substr(4)));
      continue;
    }
    return ObjectId::from_hex(*text);
  }
  return std::nullopt;
}

std::optional<std::string> Repository::head_branch() const {
  const auto text = read_ref_text("HEAD");
  if (!text || !std::string_view(*text).starts_with("ref:")) return std::nullopt;
  auto target = std::string(trim(std::string_view(*text).substr(4)));
  constexpr std::string_view kHeads = "refs/heads/";
  if (std::string_view(target).starts_with(kHeads)) return target.substr(kHeads.size());
  return target;
}

}  // namespace curator::git
