#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace irvlab {

// One manifest line: "<family> <path relative to the base URL>".
struct ManifestEntry {
  std::string family;
  std::string relpath;

  bool operator==(const ManifestEntry&) const = default;
};

// Blank lines and '#' comments are ignored. Throws ParseError on lines that
// do not have exactly two fields.
std::vector<ManifestEntry> parse_manifest(std::string_view text);
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

// $IRVLAB_CACHE if set, else ".irvlab-cache".
std::filesystem::path default_cache_dir();

struct FetchReport {
  std::vector<std::filesystem::path> downloaded;
  std::vector<std::filesystem::path> cached;
};

// Downloads each entry to <cache>/<family>/<basename>. Existing files are
// kept. Throws FetchError on HTTP or transport failure.
FetchReport fetch_datasets(const std::string& base_url, const std::vector<ManifestEntry>& entries,
                           const std::filesystem::path& cache_dir);

}  // namespace irvlab
