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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <thread>

#include "erratum/error.h"
#include "erratum/wayback.h"

namespace erratum {

HttpTransport::HttpTransport(HttpTransportConfig config)
    : config_(std::move(config)) {
  if (config_.min_interval.count() < 0) {
    throw ConfigError("min_interval must be >= 0");
  }
}

void HttpTransport::wait_turn() {
  std::lock_guard lock(mu_);
  auto now = std::chrono::steady_clock::now();
  if (now < next_) {
    std::this_thread::sleep_until(next_);
    now = next_;
  }
  next_ = now + config_.min_interval;
}

HttpResponse HttpTransport::get(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw TransportError("not an absolute URL: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? "/" : url.substr(path_start);

  wait_turn();
  httplib::Client client(origin);
  if (!client.is_valid()) throw TransportError("unsupported URL: " + url);
  client.set_follow_location(config_.follow_redirects);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  auto res = client.Get(path, {{"User-Agent", config_.user_agent}});
  if (!res) {
    throw TransportError(url + ": " + httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

}  // namespace erratum
