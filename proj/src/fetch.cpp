#include "irvlab/fetch.hpp"

#include <curl/curl.h>

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "irvlab/errors.hpp"

namespace irvlab {

namespace {

std::size_t write_body(char* data, std::size_t size, std::size_t nmemb, void* user) {
  static_cast<std::string*>(user)->append(data, size * nmemb);
  return size * nmemb;
}

void curl_init_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
}

std::string download(const std::string& url) {
  curl_init_once();
  CURL* curl = curl_easy_init();
  if (!curl) throw FetchError("curl initialization failed");
  std::string body;
  curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, write_body);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, &body);
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_CONNECTTIMEOUT, 30L);
  curl_easy_setopt(curl, CURLOPT_NOSIGNAL, 1L);
  const CURLcode rc = curl_easy_perform(curl);
  long status = 0;
  curl_easy_getinfo(curl, CURLINFO_RESPONSE_CODE, &status);
  curl_easy_cleanup(curl);
  if (rc != CURLE_OK) throw FetchError(url + ": " + curl_easy_strerror(rc));
  if (status < 200 || status >= 300) throw FetchError(url + ": HTTP " + std::to_string(status));
  return body;
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  std::vector<ManifestEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string family, relpath, extra;
    if (!(fields >> family)) continue;
    if (!(fields >> relpath) || (fields >> extra)) throw ParseError(number, "manifest line needs '<family> <path>'");
    out.push_back({family, relpath});
  }
  return out;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str());
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("IRVLAB_CACHE"); env && *env) return env;
  return ".irvlab-cache";
}

FetchReport fetch_datasets(const std::string& base_url, const std::vector<ManifestEntry>& entries,
                           const std::filesystem::path& cache_dir) {
  FetchReport report;
  std::string base = base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();
  for (const auto& entry : entries) {
    const auto dir = cache_dir / entry.family;
    const auto target = dir / std::filesystem::path(entry.relpath).filename();
    if (std::filesystem::exists(target)) {
      report.cached.push_back(target);
      continue;
    }
    std::string rel = entry.relpath;
    while (!rel.empty() && rel.front() == '/') rel.erase(rel.begin());
    const std::string body = download(base + "/" + rel);
    std::filesystem::create_directories(dir);
    auto tmp = target;
    tmp += ".part";
    {
      std::ofstream out(tmp, std::ios::binary);
      out.write(body.data(), static_cast<std::streamsize>(body.size()));
      if (!out) throw FetchError("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
    report.downloaded.push_back(target);
  }
  return report;
}

}  // namespace irvlab
