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

#include <benchmark/benchmark.h>

#include "curator/vcs.hpp"
#include "support.hpp"

namespace {

void BM_ExportArchive(benchmark::State& state) {
  curator::testing::TempDir dir;
  const auto repo = curator::testing::make_fixture_repo(dir / "repo", 4);
  const auto commit = curator::CommitHash::parse(repo.commits.back());
  for (auto _ : state) {
    benchmark::DoNotOptimize(curator::export_archive(repo.path, commit, dir / "out.zip"));
  }
}
BENCHMARK(BM_ExportArchive);

void BM_ResolveAbbreviated(benchmark::State& state) {
  curator::testing::TempDir dir;
  const auto repo = curator::testing::make_fixture_repo(dir / "repo", 4);
  const auto prefix = repo.commits[1].substr(0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(curator::resolve_commit(repo.path, prefix));
}
BENCHMARK(BM_ResolveAbbreviated);

}  // namespace
