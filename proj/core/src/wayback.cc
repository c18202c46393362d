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

#include "erratum/wayback.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "erratum/error.h"
#include "erratum/random.h"

namespace erratum {
namespace {

namespace fs = std::filesystem;
using std::chrono::days;
using std::chrono::seconds;

constexpr double kSecondsPerDay = 86400.0;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const fs::path& path, std::string_view data) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("cannot write " + path.string());
}

std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 15];
    }
  }
  return out;
}

std::string describe(const std::exception& e) {
  if (const auto* gone = dynamic_cast<const SnapshotGoneError*>(&e)) {
    return "snapshot gone (HTTP " + std::to_string(gone->status()) + ")";
  }
  if (const auto* http = dynamic_cast<const HttpStatusError*>(&e)) {
    return "HTTP " + std::to_string(http->status());
  }
  if (dynamic_cast<const TransportError*>(&e)) {
    return std::string("transport: ") + e.what();
  }
  if (dynamic_cast<const ParseError*>(&e)) {
    return std::string("parse: ") + e.what();
  }
  if (dynamic_cast<const ResponseFormatError*>(&e)) {
    return std::string("bad listing: ") + e.what();
  }
  return e.what();
}

bool has_token(std::string_view list, const std::string& token) {
  std::size_t i = 0;
  while (i < list.size()) {
    while (i < list.size() && std::isspace(static_cast<unsigned char>(list[i]))) {
      ++i;
    }
    std::size_t j = i;
    while (j < list.size() && !std::isspace(static_cast<unsigned char>(list[j]))) {
      ++j;
    }
    if (j > i && list.substr(i, j - i) == token) return true;
    i = j;
  }
  return false;
}

}  // namespace

Timestamp parse_timestamp(std::string_view digits) {
  if (digits.size() < 4 || digits.size() > 14 || digits.size() % 2 != 0 ||
      !std::all_of(digits.begin(), digits.end(),
                   [](unsigned char c) { return std::isdigit(c); })) {
    throw ResponseFormatError("bad timestamp '" + std::string(digits) + "'");
  }
  std::string full(digits);
  full += std::string("00000101000000").substr(full.size());
  auto num = [&](std::size_t pos, std::size_t len) {
    return std::stoi(full.substr(pos, len));
  };
  const std::chrono::year_month_day ymd{
      std::chrono::year{num(0, 4)},
      std::chrono::month{static_cast<unsigned>(num(4, 2))},
      std::chrono::day{static_cast<unsigned>(num(6, 2))}};
  const int h = num(8, 2), m = num(10, 2), s = num(12, 2);
  if (!ymd.ok() || h > 23 || m > 59 || s > 59) {
    throw ResponseFormatError("bad timestamp '" + std::string(digits) + "'");
  }
  return std::chrono::sys_days{ymd} + std::chrono::hours{h} +
         std::chrono::minutes{m} + seconds{s};
}

std::string format_timestamp(Timestamp t) {
  const auto day = std::chrono::floor<days>(t);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d%02u%02u%02d%02d%02d",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

Timestamp from_date(int year, unsigned month, unsigned day) {
  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{month},
                                        std::chrono::day{day}};
  if (!ymd.ok()) throw ConfigError("invalid date");
  return std::chrono::sys_days{ymd};
}

// ---------------------------------------------------------------------------
// Transports.

FixtureTransport::FixtureTransport(const fs::path& dir) : dir_(dir) {
  const fs::path index = dir / "index.json";
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(index));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed " + index.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(index.string() + " must be an object");
  for (auto& [url, entry] : j.items()) {
    if (!entry.is_object() || !entry.contains("status") ||
        !entry["status"].is_number_integer()) {
      throw ConfigError("fixture entry for " + url + " needs an int status");
    }
    index_[url] = entry;
  }
}

HttpResponse FixtureTransport::get(const std::string& url) {
  ++requests_;
  auto it = index_.find(url);
  if (it == index_.end()) {
    throw TransportError("no recorded response for " + url);
  }
  HttpResponse r;
  r.status = it->second["status"].get<int>();
  if (it->second.contains("file")) {
    r.body = read_file(dir_ / it->second["file"].get<std::string>());
  }
  return r;
}

HttpResponse RecordingTransport::get(const std::string& url) {
  HttpResponse r = inner_.get(url);
  std::lock_guard lock(mu_);
  responses_[url] = r;
  return r;
}

void RecordingTransport::save(const fs::path& dir) const {
  std::lock_guard lock(mu_);
  nlohmann::ordered_json index = nlohmann::ordered_json::object();
  std::size_t n = 0;
  for (const auto& [url, r] : responses_) {
    nlohmann::ordered_json entry = {{"status", r.status}};
    if (!r.body.empty()) {
      std::string file = "r" + std::to_string(n++) + ".body";
      write_file(dir / file, r.body);
      entry["file"] = file;
    }
    index[url] = std::move(entry);
  }
  write_file(dir / "index.json", index.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Client.

void WaybackConfig::validate() const {
  if (max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
  if (backoff.count() < 0) throw ConfigError("backoff must be >= 0");
  if (!(backoff_factor >= 1.0)) throw ConfigError("backoff_factor must be >= 1");
  if (cdx_endpoint.empty() || snapshot_endpoint.empty()) {
    throw ConfigError("archive endpoints must be set");
  }
}

std::string unrewrite_archive_url(std::string_view value) {
  if (value.find("/web/") == std::string_view::npos) return std::string(value);
  static const std::regex kRewritten(
      R"(^(?:(?:https?:)?//web\.archive\.org)?/web/\d{1,14}(?:[a-z]{2}_)?/(.+)$)");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_match(value.begin(), value.end(), m, kRewritten)) {
    return m[1].str();
  }
  return std::string(value);
}

DomTree strip_archive_chrome(const DomTree& tree, const WaybackConfig& config) {
  DomTree kept = filter_tree(tree, [&](const DomNode& n) {
    if (const std::string* id = n.attribute("id")) {
      if (std::find(config.chrome_ids.begin(), config.chrome_ids.end(), *id) !=
          config.chrome_ids.end()) {
        return true;
      }
    }
    if (const std::string* cls = n.attribute("class")) {
      for (const std::string& c : config.chrome_classes) {
        if (has_token(*cls, c)) return true;
      }
    }
    return false;
  });
  if (!config.unrewrite_urls) return kept;
  static const std::set<std::string, std::less<>> kLinkAttrs = {
      "href", "src", "action", "poster", "data-src"};
  DomTreeBuilder b(kept.signature_attr());
  std::vector<NodeId> handle(kept.size(), kNoNode);
  for (const DomNode& n : kept.nodes()) {
    NodeId parent = n.parent == kNoNode ? kNoNode : handle[n.parent];
    handle[n.id] = b.add_copy(parent, n);
    for (Attribute& a : b.at(handle[n.id]).attributes) {
      if (kLinkAttrs.count(a.name)) a.value = unrewrite_archive_url(a.value);
    }
  }
  return std::move(b).build();
}

WaybackClient::WaybackClient(Transport& transport, WaybackConfig config)
    : transport_(transport),
      config_(std::move(config)),
      sleep_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
  config_.validate();
}

std::string WaybackClient::listing_url(const std::string& url,
                                       const DateRange& range) const {
  return config_.cdx_endpoint + "?url=" + percent_encode(url) +
         "&from=" + format_timestamp(range.from) +
         "&to=" + format_timestamp(range.to) +
         "&output=json&fl=timestamp,statuscode&filter=statuscode:200";
}

std::string WaybackClient::snapshot_url(const std::string& url,
                                        Timestamp t) const {
  return config_.snapshot_endpoint + "/" + format_timestamp(t) +
         (config_.raw_snapshots ? "id_" : "") + "/" + url;
}

HttpResponse WaybackClient::get(const std::string& request) {
  auto delay = config_.backoff;
  for (int attempt = 1;; ++attempt) {
    const bool last = attempt == config_.max_attempts;
    try {
      HttpResponse r = transport_.get(request);
      const bool retryable = r.status == 429 || r.status >= 500;
      if (!retryable) return r;
      if (last) {
        throw HttpStatusError(r.status, "HTTP " + std::to_string(r.status) +
                                            " for " + request);
      }
    } catch (const TransportError&) {
      if (last) throw;
    }
    sleep_(delay);
    delay = std::chrono::milliseconds(static_cast<std::int64_t>(
        std::llround(static_cast<double>(delay.count()) * config_.backoff_factor)));
  }
}

std::vector<Timestamp> WaybackClient::list_versions(const std::string& url,
                                                    const DateRange& range) {
  if (range.to < range.from) throw ConfigError("empty date range");
  HttpResponse r = get(listing_url(url, range));
  if (r.status != 200) {
    throw HttpStatusError(r.status, "listing " + url + " failed with HTTP " +
                                        std::to_string(r.status));
  }
  std::vector<Timestamp> out;
  if (r.body.find_first_not_of(" \t\r\n") == std::string::npos) return out;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(r.body);
  } catch (const nlohmann::json::exception& e) {
    throw ResponseFormatError(std::string("listing is not JSON: ") + e.what());
  }
  if (!j.is_array()) throw ResponseFormatError("listing must be an array");
  if (j.empty()) return out;
  const auto& header = j[0];
  if (!header.is_array()) throw ResponseFormatError("listing header missing");
  std::optional<std::size_t> ts_col, status_col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!header[i].is_string()) throw ResponseFormatError("bad header cell");
    if (header[i] == "timestamp") ts_col = i;
    if (header[i] == "statuscode") status_col = i;
  }
  if (!ts_col) throw ResponseFormatError("listing has no timestamp column");
  for (std::size_t row = 1; row < j.size(); ++row) {
    const auto& cells = j[row];
    if (!cells.is_array() || cells.size() != header.size()) {
      throw ResponseFormatError("listing row " + std::to_string(row) +
                                " does not match the header");
    }
    for (const auto& c : cells) {
      if (!c.is_string()) throw ResponseFormatError("bad listing cell");
    }
    if (status_col && cells[*status_col] != "200") continue;
    Timestamp t = parse_timestamp(cells[*ts_col].get<std::string>());
    if (t < range.from || t > range.to) continue;
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DomTree WaybackClient::fetch_tree(const std::string& url, Timestamp t) {
  const std::string request = snapshot_url(url, t);
  HttpResponse r = get(request);
  if (r.status == 404 || r.status == 410) {
    throw SnapshotGoneError(r.status, "snapshot gone: " + request);
  }
  if (r.status != 200) {
    throw HttpStatusError(r.status, "HTTP " + std::to_string(r.status) +
                                        " for " + request);
  }
  return strip_archive_chrome(parse_html(sanitize_utf8(r.body), config_.parse),
                              config_);
}

DomTree WaybackClient::fetch_version(const std::string& url, Timestamp t) {
  return fetch_tree(url, t);
}

std::string WaybackClient::fetch_html(const std::string& url, Timestamp t) {
  return to_html(fetch_tree(url, t), {.include_signatures = false});
}

// ---------------------------------------------------------------------------
// Pairs.

double VersionPairSpec::actual_gap_days() const {
  return static_cast<double>((t2 - t1).count()) / kSecondsPerDay;
}

void PairConfig::validate() const {
  if (gap_days.empty()) throw ConfigError("at least one gap bucket is needed");
  for (int g : gap_days) {
    if (g <= 0) throw ConfigError("gap buckets must be positive");
  }
  if (!(tolerance >= 0.0 && tolerance < 1.0)) {
    throw ConfigError("gap tolerance must lie in [0, 1)");
  }
}

bool within_gap_tolerance(const VersionPairSpec& pair, double tolerance) {
  if (!(pair.t1 < pair.t2)) return false;
  return std::abs(pair.actual_gap_days() - pair.gap_days) <=
         tolerance * pair.gap_days;
}

std::vector<VersionPairSpec> build_pairs(const std::string& url,
                                         const std::vector<Timestamp>& timestamps,
                                         const PairConfig& config,
                                         std::uint64_t seed) {
  config.validate();
  if (!std::is_sorted(timestamps.begin(), timestamps.end())) {
    throw ConfigError("timestamps must be ascending");
  }
  std::vector<VersionPairSpec> all;
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    for (int g : config.gap_days) {
      // Window slightly wider than the bucket; the exact test decides.
      const auto lo = timestamps[i] + seconds(static_cast<std::int64_t>(
                          std::floor(g * (1 - config.tolerance) * kSecondsPerDay)) - 1);
      auto j = std::lower_bound(timestamps.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                timestamps.end(), lo);
      const auto hi = timestamps[i] + seconds(static_cast<std::int64_t>(
                          std::ceil(g * (1 + config.tolerance) * kSecondsPerDay)) + 1);
      for (; j != timestamps.end() && *j <= hi; ++j) {
        VersionPairSpec p{url, timestamps[i], *j, g};
        if (within_gap_tolerance(p, config.tolerance)) all.push_back(p);
      }
    }
  }
  Rng rng(seed);
  all = sample(std::move(all), config.max_pairs, rng);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.t1 != b.t1) return a.t1 < b.t1;
    if (a.t2 != b.t2) return a.t2 < b.t2;
    return a.gap_days < b.gap_days;
  });
  return all;
}

// ---------------------------------------------------------------------------
// Dataset.

std::string site_slug(std::string_view url) {
  if (auto p = url.find("://"); p != std::string_view::npos) {
    url.remove_prefix(p + 3);
  }
  std::string out;
  for (unsigned char c : url) {
    out += std::isalnum(c) ? static_cast<char>(std::tolower(c)) : '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "site" : out;
}

namespace {

std::vector<ManifestEntry> collect_url(WaybackClient& client,
                                       const std::string& url,
                                       const WaybackDatasetConfig& config,
                                       std::uint64_t seed, const fs::path& dir) {
  std::vector<ManifestEntry> out;
  auto skip_all = [&](std::string reason) {
    ManifestEntry e;
    e.url = url;
    e.status = "skipped";
    e.reason = std::move(reason);
    out.push_back(std::move(e));
  };
  std::vector<Timestamp> versions;
  try {
    versions = client.list_versions(url, config.range);
  } catch (const Error& e) {
    skip_all("listing failed: " + describe(e));
    return out;
  }
  const auto pairs = build_pairs(url, versions, config.pairs, seed);
  if (pairs.empty()) {
    skip_all(std::to_string(versions.size()) +
             " versions, none in a gap bucket");
    return out;
  }
  std::set<Timestamp> needed;
  for (const auto& p : pairs) {
    needed.insert(p.t1);
    needed.insert(p.t2);
  }
  const std::string slug = site_slug(url);
  std::map<Timestamp, std::string> file, failure;
  for (Timestamp t : needed) {
    try {
      std::string html = client.fetch_html(url, t);
      std::string rel = slug + "/" + format_timestamp(t) + ".html";
      write_file(dir / rel, html);
      file[t] = rel;
    } catch (const Error& e) {
      failure[t] = describe(e);
    }
  }
  for (const auto& p : pairs) {
    ManifestEntry e;
    e.url = url;
    e.t1 = p.t1;
    e.t2 = p.t2;
    e.gap_days = p.gap_days;
    std::vector<std::string> why;
    for (Timestamp t : {p.t1, p.t2}) {
      if (auto f = failure.find(t); f != failure.end()) {
        why.push_back(format_timestamp(t) + ": " + f->second);
      }
    }
    if (why.empty()) {
      e.files = {file[p.t1], file[p.t2]};
      e.status = "ok";
    } else {
      e.status = "skipped";
      for (const auto& w : why) {
        e.reason += (e.reason.empty() ? "" : "; ") + w;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::vector<ManifestEntry> build_wayback_dataset(
    WaybackClient& client, const std::vector<std::string>& urls,
    const WaybackDatasetConfig& config, const fs::path& dir) {
  config.pairs.validate();
  if (config.jobs < 1) throw ConfigError("jobs must be >= 1");
  std::vector<std::vector<ManifestEntry>> per_url(urls.size());
  std::vector<std::exception_ptr> errors(urls.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < urls.size();) {
      try {
        per_url[i] = collect_url(client, urls[i], config,
                                 derive_seed(config.seed, i), dir);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::min(config.jobs, std::max<std::size_t>(urls.size(), 1));
  std::vector<std::thread> threads;
  for (std::size_t k = 1; k < n; ++k) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<ManifestEntry> manifest;
  for (auto& v : per_url) {
    for (auto& e : v) manifest.push_back(std::move(e));
  }
  write_file(dir / "manifest.json", manifest_to_json(manifest).dump(2) + "\n");
  return manifest;
}

nlohmann::ordered_json manifest_to_json(const std::vector<ManifestEntry>& m) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& e : m) {
    nlohmann::ordered_json j;
    j["url"] = e.url;
    j["t1"] = e.t1 ? nlohmann::ordered_json(format_timestamp(*e.t1))
                 : nlohmann::ordered_json(nullptr);
    j["t2"] = e.t2 ? nlohmann::ordered_json(format_timestamp(*e.t2))
                 : nlohmann::ordered_json(nullptr);
    j["gapDays"] = e.gap_days;
    j["files"] = e.files;
    j["status"] = e.status;
    if (!e.reason.empty()) j["reason"] = e.reason;
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<ManifestEntry> manifest_from_json(const nlohmann::json& json) {
  if (!json.is_array()) throw ResponseFormatError("manifest must be an array");
  std::vector<ManifestEntry> out;
  try {
    for (const auto& j : json) {
      ManifestEntry e;
      e.url = j.at("url").get<std::string>();
      if (!j.at("t1").is_null()) e.t1 = parse_timestamp(j["t1"].get<std::string>());
      if (!j.at("t2").is_null()) e.t2 = parse_timestamp(j["t2"].get<std::string>());
      e.gap_days = j.at("gapDays").get<int>();
      e.files = j.at("files").get<std::vector<std::string>>();
      e.status = j.at("status").get<std::string>();
      e.reason = j.value("reason", "");
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ResponseFormatError(std::string("malformed manifest: ") + e.what());
  }
  return out;
}

}  // namespace erratum
