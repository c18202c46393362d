// Copyright 2026 The Erratum Authors.
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

// Mutation corpora on disk:
//
//   <dir>/<site>/original.html
//   <dir>/<site>/mutants/<i>.html
//   <dir>/<site>/mutants/<i>.record.json
//
// HTML files keep their ground-truth signatures.

#ifndef ERRATUM_CORPUS_H_
#define ERRATUM_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "erratum/bench.h"
#include "erratum/dom.h"
#include "erratum/mutagen.h"

namespace erratum {

struct SourcePage {
  std::string site;
  DomTree tree;
};

struct SyntheticSourceConfig {
  int pages = 20;
  std::uint64_t seed = 1000;
  // Page i targets min_nodes + step_nodes * (i % 20) elements.
  int min_nodes = 400;
  int step_nodes = 60;
};

// Generated pages named site00, site01, ...
std::vector<SourcePage> synthetic_sources(const SyntheticSourceConfig& config = {});

// Every *.html file directly inside `dir`, sorted by name; the site is the
// file stem. Throws ConfigError when there is none, ParseError for a file
// without elements.
std::vector<SourcePage> load_sources(const std::filesystem::path& dir);

struct CorpusSite {
  std::string site;
  DomTree original;
  std::vector<MutantRecord> mutants;
};

// Signs every source and mutates it config.mutants_per_page times.
std::vector<CorpusSite> build_corpus(const std::vector<SourcePage>& sources,
                                     std::uint64_t seed,
                                     const DatasetConfig& config = {});

void write_corpus(const std::vector<CorpusSite>& corpus,
                  const std::filesystem::path& dir);

// Sites sorted by name, mutants by index. Throws ConfigError for a missing
// or empty directory, ParseError / MutationError for damaged files.
std::vector<CorpusSite> read_corpus(const std::filesystem::path& dir);

std::vector<BenchCase> bench_cases(const std::vector<CorpusSite>& corpus);

}  // namespace erratum

#endif  // ERRATUM_CORPUS_H_
