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

#include "support.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <functional>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace curator::testing {
namespace fs = std::filesystem;

TempDir::TempDir() {
  std::string pattern = (fs::temp_directory_path() / "curator-test-XXXXXX").string();
  if (mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = fs::canonical(pattern);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string shell_quote(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

CommandResult run_shell(const std::string& command, bool merge_stderr) {
  const std::string full = merge_stderr ? "(" + command + ") 2>&1" : command;
  FILE* pipe = popen(full.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed: " + command);
  CommandResult result;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string git(const fs::path& dir, const std::string& args) {
  const std::string command =
      "cd " + shell_quote(dir.string()) +
      " && GIT_CONFIG_NOSYSTEM=1 HOME=" + shell_quote(dir.string()) +
      " GIT_AUTHOR_NAME=Fixture GIT_AUTHOR_EMAIL=fixture@example.org"
      " GIT_COMMITTER_NAME=Fixture GIT_COMMITTER_EMAIL=fixture@example.org"
      " GIT_AUTHOR_DATE='2014-03-01T12:00:00+0000' GIT_COMMITTER_DATE='2014-03-01T12:00:00+0000' " +
      shell_quote(CURATOR_GIT) + " " + args;
  auto result = run_shell(command, true);
  if (result.exit_code != 0) throw std::runtime_error("git " + args + " failed: " + result.out);
  while (!result.out.empty() && result.out.back() == '\n') result.out.pop_back();
  return result.out;
}

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string random_bytes(std::mt19937_64& rng, std::size_t size) {
  std::string out(size, '\0');
  std::uniform_int_distribution<int> byte(0, 255);
  for (auto& c : out) c = static_cast<char>(byte(rng));
  return out;
}

FixtureRepo make_fixture_repo(const fs::path& dir, int commit_count) {
  FixtureRepo repo{dir, {}};
  fs::create_directories(dir);
  git(dir, "init -q -b main .");
  git(dir, "config core.autocrlf false");
  git(dir, "remote add origin https://example.org/solver.git");
  write_text(dir / "README", "solver fixture\n");
  write_text(dir / "src" / "main.c", "int main(void) { return 0; }\n");
  write_text(dir / "tools" / "run.sh", "#!/bin/sh\necho run\n");
  fs::permissions(dir / "tools" / "run.sh", fs::perms::owner_exec | fs::perms::group_exec | fs::perms::others_exec,
                  fs::perm_options::add);
  fs::create_symlink("README", dir / "README.link");
  write_text(dir / "AUTHORS",
             "# contributors and their depot ids\n"
             "Ada Lovelace <fs:1001>\n"
             "Alan Turing <fs:1002>\n");
  git(dir, "add -A");
  git(dir, "commit -q -m initial");
  repo.commits.push_back(git(dir, "rev-parse HEAD"));
  for (int i = 1; i < commit_count; ++i) {
    write_text(dir / "src" / ("step" + std::to_string(i) + ".c"), "int step" + std::to_string(i) + ";\n");
    git(dir, "add -A");
    git(dir, "commit -q -m step" + std::to_string(i));
    repo.commits.push_back(git(dir, "rev-parse HEAD"));
  }
  return repo;
}

void extract_zip(const fs::path& archive, const fs::path& dest) {
  static const char* kScript =
      "import os, stat, sys, zipfile\n"
      "z = zipfile.ZipFile(sys.argv[1])\n"
      "assert z.testzip() is None\n"
      "for info in z.infolist():\n"
      "    mode = info.external_attr >> 16\n"
      "    path = os.path.join(sys.argv[2], info.filename)\n"
      "    os.makedirs(os.path.dirname(path), exist_ok=True)\n"
      "    data = z.read(info)\n"
      "    if stat.S_ISLNK(mode):\n"
      "        os.symlink(data.decode(), path)\n"
      "    else:\n"
      "        open(path, 'wb').write(data)\n"
      "        os.chmod(path, stat.S_IMODE(mode))\n";
  const auto result = run_shell(shell_quote(CURATOR_PYTHON) + " -c " + shell_quote(kScript) + " " +
                                    shell_quote(archive.string()) + " " + shell_quote(dest.string()),
                                true);
  if (result.exit_code != 0) throw std::runtime_error("zip extraction failed: " + result.out);
}

std::vector<std::string> describe_tree(const fs::path& root) {
  std::vector<std::string> out;
  for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator(); ++it) {
    if (it->path().filename() == ".git") {
      if (it->is_directory()) it.disable_recursion_pending();
      continue;
    }
    const auto rel = fs::relative(it->path(), root).generic_string();
    const auto status = it->symlink_status();
    if (fs::is_symlink(status)) {
      out.push_back("link " + rel + " -> " + fs::read_symlink(it->path()).string());
    } else if (fs::is_directory(status)) {
      out.push_back("dir " + rel);
    } else {
      const bool exec = (status.permissions() & fs::perms::owner_exec) != fs::perms::none;
      std::ifstream in(it->path(), std::ios::binary);
      std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      out.push_back(std::string(exec ? "exec " : "file ") + rel + " " + std::to_string(bytes.size()) + " " +
                    std::to_string(std::hash<std::string>{}(bytes)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TopHatCase make_top_hat(const fs::path& root) {
  TopHatCase c;
  c.solver = make_fixture_repo(root / "fluidity", 2);
  c.dir = root / "top_hat";
  c.project = c.dir / "top_hat.flml";
  write_text(c.project,
             "<?xml version='1.0' encoding='utf-8'?>\n"
             "<fluidity_options name=\"top_hat\">\n"
             "  <simulation_name>\n"
             "    <string_value lines=\"1\">top_hat</string_value>\n"
             "  </simulation_name>\n"
             "  <publish enabled=\"true\">\n"
             "    <software/>\n"
             "    <input patterns=\"*.msh;*.geo\"/>\n"
             "    <output patterns=\"*.stat;*.vtu\"/>\n"
             "  </publish>\n"
             "  <timestepping>\n"
             "    <timestep><real_value rank=\"0\">0.025</real_value></timestep>\n"
             "  </timestepping>\n"
             "</fluidity_options>\n");
  write_text(c.dir / "top_hat.geo", "Point(1) = {0, 0, 0, 0.025};\nPoint(2) = {1, 0, 0, 0.025};\n");
  std::string mesh = "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n41\n";
  for (int i = 0; i <= 40; ++i) mesh += std::to_string(i + 1) + " " + std::to_string(i * 0.025) + " 0 0\n";
  mesh += "$EndNodes\n";
  write_text(c.dir / "top_hat.msh", mesh);
  return c;
}

void simulate_top_hat(const TopHatCase& c) {
  std::string stat =
      "<header>\n"
      "<constant name=\"FluidityVersion\" type=\"string\" value=\"unknown\"/>\n"
      "<constant name=\"CompileTime\" type=\"string\" value=\"Jan 12 2026 09:14:55\"/>\n"
      "<constant name=\"StartTime\" type=\"string\" value=\"20260112 091502.120+0000\"/>\n"
      "<constant name=\"HostName\" type=\"string\" value=\"Unknown\"/>\n"
      "<field column=\"1\" name=\"ElapsedTime\" statistic=\"value\"/>\n"
      "<field column=\"2\" name=\"Tracer\" statistic=\"max\" material_phase=\"Fluid\"/>\n"
      "</header>\n";
  for (int step = 0; step <= 8; ++step) {
    stat += std::to_string(step * 0.025) + " " + std::to_string(1.0 - step * 0.01) + "\n";
  }
  write_text(c.dir / "top_hat.stat", stat);
  write_text(c.dir / "top_hat_0.vtu", "<VTKFile type=\"UnstructuredGrid\"><t>0</t></VTKFile>\n");
  write_text(c.dir / "top_hat_1.vtu", "<VTKFile type=\"UnstructuredGrid\"><t>1</t></VTKFile>\n");
}

CliResult run_cli(const std::vector<std::string>& args, const std::string& env) {
  TempDir scratch;
  const auto err_path = scratch / "stderr";
  std::string command = env.empty() ? "" : env + " ";
  command += shell_quote(CURATOR_CLI_BINARY);
  for (const auto& arg : args) command += " " + shell_quote(arg);
  command += " 2>" + shell_quote(err_path.string());
  auto result = run_shell(command, false);
  CliResult cli{result.exit_code, std::move(result.out), {}};
  std::ifstream in(err_path, std::ios::binary);
  cli.err.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return cli;
}

}  // namespace curator::testing
