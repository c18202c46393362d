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

// Page version pairs from a web archive with a Wayback-style interface: a
// CDX listing endpoint and a snapshot endpoint. All network access goes
// through Transport, so tests replay recorded fixtures.

#ifndef ERRATUM_WAYBACK_H_
#define ERRATUM_WAYBACK_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "erratum/dom.h"

namespace erratum {

using Timestamp = std::chrono::sys_seconds;

// 14-digit archive timestamps (YYYYMMDDhhmmss). Shorter digit prefixes are
// accepted and padded with the earliest value. Throws ResponseFormatError.
Timestamp parse_timestamp(std::string_view digits);
std::string format_timestamp(Timestamp t);
// Whole days from 1970-01-01.
Timestamp from_date(int year, unsigned month, unsigned day);

// Inclusive on both ends.
struct DateRange {
  Timestamp from;
  Timestamp to;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

class Transport {
 public:
  virtual ~Transport() = default;
  // Throws TransportError when no response arrives. Implementations must be
  // safe to call from several threads.
  virtual HttpResponse get(const std::string& url) = 0;
};

// Replays responses from a fixture directory. Its index.json maps request
// URLs to {"status": int, "file": path relative to the directory}; a missing
// "file" means an empty body. Unknown URLs throw TransportError.
class FixtureTransport : public Transport {
 public:
  // Throws ConfigError when the index is missing or malformed.
  explicit FixtureTransport(const std::filesystem::path& dir);

  HttpResponse get(const std::string& url) override;
  std::size_t request_count() const { return requests_.load(); }

 private:
  std::filesystem::path dir_;
  std::map<std::string, nlohmann::json> index_;
  std::atomic<std::size_t> requests_{0};
};

// Forwards to another transport and keeps every response, so a live run can
// be saved as a fixture directory.
class RecordingTransport : public Transport {
 public:
  explicit RecordingTransport(Transport& inner) : inner_(inner) {}

  HttpResponse get(const std::string& url) override;
  // Writes index.json and one body file per response.
  void save(const std::filesystem::path& dir) const;

 private:
  Transport& inner_;
  mutable std::mutex mu_;
  std::map<std::string, HttpResponse> responses_;
};

struct HttpTransportConfig {
  // Minimum spacing between request starts, across all threads.
  std::chrono::milliseconds min_interval{1000};
  std::chrono::seconds timeout{30};
  std::string user_agent = "erratum/0.1";
  bool follow_redirects = true;
};

// Live HTTP(S) transport with a shared rate limit.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(HttpTransportConfig config = {});

  HttpResponse get(const std::string& url) override;

 private:
  void wait_turn();

  HttpTransportConfig config_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_{};
};

struct WaybackConfig {
  std::string cdx_endpoint = "https://web.archive.org/cdx/search/cdx";
  std::string snapshot_endpoint = "https://web.archive.org/web";
  // Ask for the archived bytes without toolbar or link rewriting ("id_").
  bool raw_snapshots = false;
  // Attempts per request for transport errors, 429 and 5xx.
  int max_attempts = 4;
  std::chrono::milliseconds backoff{1000};
  double backoff_factor = 2.0;
  // Archive chrome: elements with one of these ids or classes are removed
  // together with their subtree.
  std::vector<std::string> chrome_ids = {"wm-ipp-base", "wm-ipp",
                                         "wm-ipp-print", "donato", "playback",
                                         "__wb_record_overlay_div"};
  std::vector<std::string> chrome_classes = {"wb-autocomplete-suggestions"};
  // Undo the archive's rewriting of href/src/action values.
  bool unrewrite_urls = true;
  ParseConfig parse;

  // Throws ConfigError.
  void validate() const;
};

// Tree without archive chrome, with rewritten links restored when enabled.
DomTree strip_archive_chrome(const DomTree& tree, const WaybackConfig& config);

// "/web/20130101000000im_/http://x/a.png" -> "http://x/a.png"; other
// values are returned unchanged.
std::string unrewrite_archive_url(std::string_view value);

class WaybackClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit WaybackClient(Transport& transport, WaybackConfig config = {});

  // Snapshot timestamps with status 200 inside the range, ascending and
  // distinct. Throws TransportError or HttpStatusError once retries are
  // exhausted, ResponseFormatError for a malformed listing.
  std::vector<Timestamp> list_versions(const std::string& url,
                                       const DateRange& range);

  // Snapshot HTML with chrome removed, serialized without signatures.
  // Throws SnapshotGoneError for 404/410, HttpStatusError for other
  // failures, ParseError when the page holds no element.
  std::string fetch_html(const std::string& url, Timestamp t);
  DomTree fetch_version(const std::string& url, Timestamp t);

  std::string listing_url(const std::string& url, const DateRange& range) const;
  std::string snapshot_url(const std::string& url, Timestamp t) const;

  const WaybackConfig& config() const { return config_; }
  // Replaces the sleep used between retries; tests pass a recorder.
  void set_sleeper(Sleeper sleeper) { sleep_ = std::move(sleeper); }

 private:
  HttpResponse get(const std::string& request);
  DomTree fetch_tree(const std::string& url, Timestamp t);

  Transport& transport_;
  WaybackConfig config_;
  Sleeper sleep_;
};

struct VersionPairSpec {
  std::string url;
  Timestamp t1;
  Timestamp t2;
  // Target gap bucket.
  int gap_days = 0;

  double actual_gap_days() const;
};

struct PairConfig {
  std::vector<int> gap_days = {7, 15, 30, 60, 120, 240, 360};
  double tolerance = 0.1;
  std::size_t max_pairs = 1000;

  // Throws ConfigError.
  void validate() const;
};

// True when t1 < t2 and the gap is within tolerance of gap_days.
bool within_gap_tolerance(const VersionPairSpec& pair, double tolerance = 0.1);

// Every pair of timestamps whose gap falls in a bucket, then a uniform
// sample of at most max_pairs, ordered by (t1, t2). Deterministic under
// seed. Throws ConfigError when timestamps are not ascending.
std::vector<VersionPairSpec> build_pairs(const std::string& url,
                                         const std::vector<Timestamp>& timestamps,
                                         const PairConfig& config,
                                         std::uint64_t seed);

struct ManifestEntry {
  std::string url;
  std::optional<Timestamp> t1;
  std::optional<Timestamp> t2;
  int gap_days = 0;
  // Paths relative to the dataset directory: old then new version.
  std::vector<std::string> files;
  // "ok" or "skipped".
  std::string status;
  // Why the entry was skipped; empty for "ok".
  std::string reason;
};

struct WaybackDatasetConfig {
  DateRange range{from_date(2010, 1, 1), from_date(2030, 1, 1)};
  PairConfig pairs;
  std::uint64_t seed = 0;
  // URLs fetched concurrently.
  std::size_t jobs = 1;
};

// Lists, pairs and fetches versions of each URL and writes
// <dir>/<site>/<timestamp>.html plus <dir>/manifest.json. Failures are
// recorded as skipped entries: a failed listing gives one entry without
// timestamps, a failed fetch skips the pairs that need it. Entries follow
// the order of `urls`.
std::vector<ManifestEntry> build_wayback_dataset(
    WaybackClient& client, const std::vector<std::string>& urls,
    const WaybackDatasetConfig& config, const std::filesystem::path& dir);

nlohmann::ordered_json manifest_to_json(const std::vector<ManifestEntry>& m);
// Throws ResponseFormatError.
std::vector<ManifestEntry> manifest_from_json(const nlohmann::json& json);

// Directory name for a URL: scheme dropped, other non-alphanumerics -> '_'.
std::string site_slug(std::string_view url);

}  // namespace erratum

#endif  // ERRATUM_WAYBACK_H_
