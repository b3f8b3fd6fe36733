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

#ifndef SURVEYOR_FETCH_H_
#define SURVEYOR_FETCH_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace surveyor::ingest {

struct FetchPolicy {
  std::chrono::milliseconds timeout{10'000};
  std::size_t max_bytes = 2 * 1024 * 1024;
  std::string user_agent = "surveyor/0.1 (+research crawler)";
  int max_redirects = 5;
  // Minimum spacing between two requests to the same host.
  std::chrono::milliseconds per_host_interval{500};
};

struct FetchedPage {
  std::string body;
  std::string final_url;
  std::string content_type;
};

// True for syntactically valid absolute http(s) URLs.
bool IsHttpUrl(std::string_view url);

// Scheme, host and port (default ports omitted by origin()) and the
// path+query remainder of a URL.
struct UrlParts {
  std::string scheme;
  std::string host;
  int port = 0;
  std::string target;  // always starts with '/'

  std::string origin() const;
};
UrlParts SplitUrl(std::string_view url);  // throws InvalidArgument

// Resolves a Location header against the URL that produced it.
std::string ResolveRedirect(std::string_view base, std::string_view location);

class Fetcher {
 public:
  virtual ~Fetcher() = default;
  // Throws FetchError. Implementations must be safe to call concurrently.
  virtual FetchedPage Fetch(const std::string& url) = 0;
};

// Serializes requests per host and spaces them by a minimum interval.
class HostRateLimiter {
 public:
  explicit HostRateLimiter(std::chrono::milliseconds interval)
      : interval_(interval) {}

  class Lease {
   public:
    Lease(HostRateLimiter* owner, std::string host,
          std::unique_lock<std::mutex> lock);
    Lease(Lease&&) = default;
    ~Lease();

   private:
    HostRateLimiter* owner_;
    std::string host_;
    std::unique_lock<std::mutex> lock_;
  };

  // Blocks until `host` is free and its interval has elapsed.
  Lease Acquire(const std::string& host);

 private:
  struct HostState {
    std::mutex busy;
    std::chrono::steady_clock::time_point last{};
  };

  std::chrono::milliseconds interval_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<HostState>> hosts_;
};

// Live HTTP(S) fetcher. Follows at most policy.max_redirects redirects and
// aborts bodies larger than policy.max_bytes.
class HttpFetcher : public Fetcher {
 public:
  explicit HttpFetcher(FetchPolicy policy = {});
  FetchedPage Fetch(const std::string& url) override;

 private:
  FetchPolicy policy_;
  HostRateLimiter limiter_;
};

// One-shot fetch through a process-wide rate limiter.
FetchedPage FetchPage(const std::string& url, const FetchPolicy& policy);

class SearchProvider {
 public:
  virtual ~SearchProvider() = default;
  virtual std::vector<std::string> Urls(std::string_view topic) = 0;
};

// Plain text, one URL per line, '#' starts a comment line. Throws
// ParseError naming the line of an invalid URL.
std::vector<std::string> ParseUrlList(std::string_view text);

// Serves the same URL list for every topic.
class UrlListProvider : public SearchProvider {
 public:
  explicit UrlListProvider(std::vector<std::string> urls)
      : urls_(std::move(urls)) {}
  static UrlListProvider FromFile(const std::filesystem::path& path);

  std::vector<std::string> Urls(std::string_view) override { return urls_; }

 private:
  std::vector<std::string> urls_;
};

// Offline pages described by `<dir>/manifest.json`:
//   {"fetched_at": "...Z",
//    "topics": {"<topic>": [{"url": ..., "file": ..., "status": 200,
//                            "content_type": "text/html"}, ...]}}
// `status` and `content_type` are optional.
class FixtureSource : public SearchProvider, public Fetcher {
 public:
  explicit FixtureSource(std::filesystem::path dir);

  std::vector<std::string> Urls(std::string_view topic) override;
  FetchedPage Fetch(const std::string& url) override;
  std::chrono::sys_seconds fetched_at() const { return fetched_at_; }
  std::vector<std::string> topics() const;

 private:
  struct Entry {
    std::string file;
    int status = 200;
    std::string content_type = "text/html";
  };

  std::filesystem::path dir_;
  std::chrono::sys_seconds fetched_at_{};
  std::map<std::string, std::vector<std::string>, std::less<>> topics_;
  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace surveyor::ingest

#endif  // SURVEYOR_FETCH_H_
