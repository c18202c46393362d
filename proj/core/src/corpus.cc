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

#include "erratum/corpus.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "erratum/error.h"
#include "erratum/page_synth.h"

namespace erratum {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + p.string());
  out << data;
  if (!out.flush()) throw ConfigError("write failed: " + p.string());
}

// Mutant files are named <i>.html with a non-negative integer i.
bool mutant_index(const fs::path& p, int& index) {
  if (p.extension() != ".html") return false;
  const std::string stem = p.stem().string();
  if (stem.empty() || stem.size() > 9 ||
      !std::all_of(stem.begin(), stem.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return false;
  }
  index = std::stoi(stem);
  return true;
}

}  // namespace

std::vector<SourcePage> synthetic_sources(const SyntheticSourceConfig& config) {
  if (config.pages <= 0) throw ConfigError("pages must be positive");
  if (config.min_nodes <= 0 || config.step_nodes < 0) {
    throw ConfigError("page sizes must be positive");
  }
  std::vector<SourcePage> out;
  for (int i = 0; i < config.pages; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "site%02d", i);
    PageSynthConfig pc{.target_nodes = config.min_nodes + config.step_nodes * (i % 20)};
    out.push_back({name, parse_html(synthesize_page(config.seed + i, pc))});
  }
  return out;
}

std::vector<SourcePage> load_sources(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".html") files.push_back(e.path());
  }
  if (files.empty()) throw ConfigError("no .html files in " + dir.string());
  std::sort(files.begin(), files.end());
  std::vector<SourcePage> out;
  for (const auto& f : files) {
    try {
      out.push_back({f.stem().string(), parse_html(sanitize_utf8(read_file(f)))});
    } catch (const ParseError& e) {
      throw ParseError(f.string() + ": " + e.what());
    }
  }
  return out;
}

std::vector<CorpusSite> build_corpus(const std::vector<SourcePage>& sources,
                                     std::uint64_t seed,
                                     const DatasetConfig& config) {
  std::vector<DomTree> pages;
  pages.reserve(sources.size());
  for (const auto& s : sources) pages.push_back(assign_signatures(s.tree));
  std::vector<MutantRecord> records = generate_dataset(pages, seed, config);
  std::vector<CorpusSite> out;
  const std::size_t per = static_cast<std::size_t>(config.mutants_per_page);
  for (std::size_t p = 0; p < sources.size(); ++p) {
    CorpusSite site{sources[p].site, std::move(pages[p]), {}};
    for (std::size_t i = 0; i < per; ++i) {
      site.mutants.push_back(std::move(records[p * per + i]));
    }
    out.push_back(std::move(site));
  }
  return out;
}

void write_corpus(const std::vector<CorpusSite>& corpus, const fs::path& dir) {
  for (const auto& site : corpus) {
    const fs::path base = dir / site.site;
    fs::create_directories(base / "mutants");
    write_file(base / "original.html", to_html(site.original));
    for (std::size_t i = 0; i < site.mutants.size(); ++i) {
      const std::string stem = std::to_string(i);
      write_file(base / "mutants" / (stem + ".html"), to_html(site.mutants[i].mutant));
      write_file(base / "mutants" / (stem + ".record.json"),
                 record_to_json(site.mutants[i]).dump(2) + "\n");
    }
  }
}

std::vector<CorpusSite> read_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir.string());
  std::vector<fs::path> sites;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory() && fs::exists(e.path() / "original.html")) sites.push_back(e.path());
  }
  if (sites.empty()) throw ConfigError("no corpus sites in " + dir.string());
  std::sort(sites.begin(), sites.end());

  std::vector<CorpusSite> out;
  for (const auto& path : sites) {
    CorpusSite site;
    site.site = path.filename().string();
    site.original = parse_html(read_file(path / "original.html"));
    std::vector<std::pair<int, fs::path>> mutants;
    if (fs::is_directory(path / "mutants")) {
      for (const auto& e : fs::directory_iterator(path / "mutants")) {
        int i = 0;
        if (e.is_regular_file() && mutant_index(e.path(), i)) mutants.emplace_back(i, e.path());
      }
    }
    std::sort(mutants.begin(), mutants.end());
    for (const auto& [i, html] : mutants) {
      fs::path record = html;
      record.replace_extension(".record.json");
      nlohmann::ordered_json json;
      try {
        json = nlohmann::ordered_json::parse(read_file(record));
      } catch (const nlohmann::json::parse_error& e) {
        throw MutationError(record.string() + ": " + e.what());
      }
      site.mutants.push_back(
          record_from_json(json, site.original, parse_html(read_file(html))));
    }
    out.push_back(std::move(site));
  }
  return out;
}

std::vector<BenchCase> bench_cases(const std::vector<CorpusSite>& corpus) {
  std::vector<BenchCase> out;
  for (const auto& site : corpus) {
    for (std::size_t i = 0; i < site.mutants.size(); ++i) {
      out.push_back({site.site, static_cast<int>(i), site.mutants[i]});
    }
  }
  return out;
}

}  // namespace erratum
