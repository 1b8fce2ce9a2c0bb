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

#include "curator/provenance.hpp"
#include "support.hpp"

namespace {

void BM_ExpandPatterns(benchmark::State& state) {
  curator::testing::TempDir dir;
  for (int i = 0; i < state.range(0); ++i) {
    curator::testing::write_text(dir / ("out_" + std::to_string(i) + (i % 3 ? ".vtu" : ".dat")), "");
  }
  const std::vector<std::string> patterns{"*.stat", "out_[0-9]*.vtu"};
  for (auto _ : state) benchmark::DoNotOptimize(curator::expand_patterns(patterns, dir.path()));
}
BENCHMARK(BM_ExpandPatterns)->Range(16, 4096);

void BM_InjectProvenance(benchmark::State& state) {
  curator::testing::TempDir dir;
  std::string rows;
  for (int i = 0; i < state.range(0); ++i) rows += std::to_string(i) + " 1.0 2.0 3.0\n";
  const std::string header =
      "<header>\n<constant name=\"CompileTime\" type=\"string\" value=\"now\"/>\n</header>\n";
  const curator::ProvenanceConstants constants{
      curator::CommitHash::parse("3f786850e387550fdab836ed7e6dc881de23001b"), "10.5072/a", "10.5072/b"};
  for (auto _ : state) {
    state.PauseTiming();
    curator::testing::write_text(dir / "s.stat", header + rows);
    state.ResumeTiming();
    benchmark::DoNotOptimize(curator::inject_provenance(dir / "s.stat", constants));
  }
}
BENCHMARK(BM_InjectProvenance)->Range(10, 100000);

}  // namespace
