// Copyright 2026 The Surveyor Authors.
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

#include "surveyor/fetch.h"

#include <regex>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "surveyor/corpus.h"
#include "surveyor/errors.h"

namespace surveyor::ingest {

bool IsHttpUrl(std::string_view url) {
  static const std::regex re(
      R"(^https?://[A-Za-z0-9](?:[A-Za-z0-9.-]*[A-Za-z0-9])?(?::[0-9]{1,5})?(?:[/?#][^\s]*)?$)",
      std::regex::icase);
  return std::regex_match(url.begin(), url.end(), re);
}

std::string UrlParts::origin() const {
  const int default_port = scheme == "https" ? 443 : 80;
  if (port == default_port) return fmt::format("{}://{}", scheme, host);
  return fmt::format("{}://{}:{}", scheme, host, port);
}

UrlParts SplitUrl(std::string_view url) {
  if (!IsHttpUrl(url)) {
    throw InvalidArgument("not an http(s) URL: " + std::string(url));
  }
  UrlParts parts;
  const std::size_t colon = url.find("://");
  parts.scheme = std::string(url.substr(0, colon));
  for (auto& c : parts.scheme) c = static_cast<char>(std::tolower(c));
  std::string_view rest = url.substr(colon + 3);
  const std::size_t slash = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, slash);
  parts.target = slash == std::string_view::npos
                     ? "/"
                     : std::string(rest.substr(slash));
  if (parts.target.front() != '/') parts.target.insert(0, "/");
  if (const auto hash = parts.target.find('#'); hash != std::string::npos) {
    parts.target.resize(hash);
  }
  const std::size_t port_sep = authority.find(':');
  parts.host = std::string(authority.substr(0, port_sep));
  parts.port = parts.scheme == "https" ? 443 : 80;
  if (port_sep != std::string_view::npos) {
    parts.port = std::stoi(std::string(authority.substr(port_sep + 1)));
  }
  return parts;
}

std::string ResolveRedirect(std::string_view base, std::string_view location) {
  if (IsHttpUrl(location)) return std::string(location);
  const UrlParts b = SplitUrl(base);
  if (location.starts_with("//")) {
    return b.scheme + ":" + std::string(location);
  }
  if (location.starts_with("/")) return b.origin() + std::string(location);
  std::string dir = b.target.substr(0, b.target.find('?'));
  dir.resize(dir.rfind('/') + 1);
  return b.origin() + dir + std::string(location);
}

HostRateLimiter::Lease::Lease(HostRateLimiter* owner, std::string host,
                              std::unique_lock<std::mutex> lock)
    : owner_(owner), host_(std::move(host)), lock_(std::move(lock)) {}

HostRateLimiter::Lease::~Lease() {
  if (!lock_.owns_lock()) return;
  std::lock_guard<std::mutex> guard(owner_->mu_);
  owner_->hosts_[host_]->last = std::chrono::steady_clock::now();
}

HostRateLimiter::Lease HostRateLimiter::Acquire(const std::string& host) {
  HostState* state = nullptr;
  {
    std::lock_guard<std::mutex> guard(mu_);
    auto& slot = hosts_[host];
    if (!slot) slot = std::make_unique<HostState>();
    state = slot.get();
  }
  std::unique_lock<std::mutex> busy(state->busy);
  std::chrono::steady_clock::time_point last;
  {
    std::lock_guard<std::mutex> guard(mu_);
    last = state->last;
  }
  if (last != std::chrono::steady_clock::time_point{}) {
    std::this_thread::sleep_until(last + interval_);
  }
  return Lease(this, host, std::move(busy));
}

HttpFetcher::HttpFetcher(FetchPolicy policy)
    : policy_(std::move(policy)), limiter_(policy_.per_host_interval) {}

namespace {

bool IsHtmlContentType(std::string_view content_type) {
  if (content_type.empty()) return true;
  std::string lower(content_type);
  for (auto& c : lower) c = static_cast<char>(std::tolower(c));
  return lower.find("text/html") != std::string::npos ||
         lower.find("application/xhtml") != std::string::npos;
}

}  // namespace

FetchedPage HttpFetcher::Fetch(const std::string& url) {
  std::string current = url;
  for (int hop = 0; hop <= policy_.max_redirects; ++hop) {
    UrlParts parts;
    try {
      parts = SplitUrl(current);
    } catch (const InvalidArgument& e) {
      throw FetchError(FetchError::Kind::kPermanent, e.what());
    }
    auto lease = limiter_.Acquire(parts.host);

    httplib::Client client(parts.origin());
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
        policy_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
        policy_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    client.set_follow_location(false);

    httplib::Headers headers = {{"User-Agent", policy_.user_agent},
                                {"Accept", "text/html,application/xhtml+xml"}};
    FetchedPage page;
    page.final_url = current;
    int status = 0;
    std::string location;
    bool truncated = false;
    auto result = client.Get(
        parts.target, headers,
        [&](const httplib::Response& r) {
          status = r.status;
          page.content_type = r.get_header_value("Content-Type");
          location = r.get_header_value("Location");
          return true;
        },
        [&](const char* data, std::size_t len) {
          if (status >= 300) return true;  // body of an error/redirect
          if (page.body.size() + len > policy_.max_bytes) {
            truncated = true;
            return false;
          }
          page.body.append(data, len);
          return true;
        });
    if (truncated) {
      throw FetchError(FetchError::Kind::kTruncated,
                       fmt::format("{}: body exceeds {} bytes", current,
                                   policy_.max_bytes));
    }
    if (!result) {
      const auto err = result.error();
      throw FetchError(FetchError::Kind::kRetriable,
                       fmt::format("{}: {}", current, httplib::to_string(err)));
    }
    if (status >= 300 && status < 400 && !location.empty()) {
      current = ResolveRedirect(current, location);
      continue;
    }
    if (status >= 400) {
      throw FetchError(FetchError::Kind::kPermanent,
                       fmt::format("{}: HTTP {}", current, status));
    }
    if (!IsHtmlContentType(page.content_type)) {
      throw FetchError(FetchError::Kind::kNotHtml,
                       fmt::format("{}: content type '{}'", current,
                                   page.content_type));
    }
    return page;
  }
  throw FetchError(FetchError::Kind::kPermanent,
                   fmt::format("{}: more than {} redirects", url,
                               policy_.max_redirects));
}

FetchedPage FetchPage(const std::string& url, const FetchPolicy& policy) {
  static HostRateLimiter limiter(policy.per_host_interval);
  if (!IsHttpUrl(url)) {
    throw InvalidArgument("not an http(s) URL: " + url);
  }
  auto lease = limiter.Acquire(SplitUrl(url).host);
  FetchPolicy unlimited = policy;
  unlimited.per_host_interval = std::chrono::milliseconds(0);
  return HttpFetcher(unlimited).Fetch(url);
}

std::vector<std::string> ParseUrlList(std::string_view text) {
  std::vector<std::string> urls;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
      line.remove_prefix(1);
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    if (line.empty() || line.front() == '#') continue;
    if (!IsHttpUrl(line)) {
      throw ParseError("not an http(s) URL: " + std::string(line), line_no);
    }
    urls.emplace_back(line);
  }
  return urls;
}

UrlListProvider UrlListProvider::FromFile(const std::filesystem::path& path) {
  return UrlListProvider(ParseUrlList(ReadFile(path)));
}

FixtureSource::FixtureSource(std::filesystem::path dir) : dir_(std::move(dir)) {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(ReadFile(dir_ / "manifest.json"));
    fetched_at_ = ParseTimestamp(manifest.at("fetched_at").get<std::string>());
    for (const auto& [topic, pages] : manifest.at("topics").items()) {
      auto& urls = topics_[topic];
      for (const auto& page : pages) {
        Entry entry;
        const auto url = page.at("url").get<std::string>();
        entry.file = page.value("file", "");
        entry.status = page.value("status", 200);
        entry.content_type = page.value("content_type", "text/html");
        urls.push_back(url);
        entries_[url] = std::move(entry);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("fixture manifest: " + std::string(e.what()));
  }
}

std::vector<std::string> FixtureSource::Urls(std::string_view topic) {
  auto it = topics_.find(topic);
  if (it == topics_.end()) return {};
  return it->second;
}

std::vector<std::string> FixtureSource::topics() const {
  std::vector<std::string> out;
  for (const auto& [topic, urls] : topics_) out.push_back(topic);
  return out;
}

FetchedPage FixtureSource::Fetch(const std::string& url) {
  auto it = entries_.find(url);
  if (it == entries_.end()) {
    throw FetchError(FetchError::Kind::kPermanent, url + ": no fixture");
  }
  const Entry& entry = it->second;
  if (entry.status >= 400) {
    throw FetchError(FetchError::Kind::kPermanent,
                     fmt::format("{}: HTTP {}", url, entry.status));
  }
  if (!IsHtmlContentType(entry.content_type)) {
    throw FetchError(FetchError::Kind::kNotHtml,
                     fmt::format("{}: content type '{}'", url,
                                 entry.content_type));
  }
  FetchedPage page;
  page.body = ReadFile(dir_ / entry.file);
  page.final_url = url;
  page.content_type = entry.content_type;
  return page;
}

}  // namespace surveyor::ingest
