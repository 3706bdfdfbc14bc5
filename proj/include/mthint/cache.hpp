#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace mthint {

struct CacheKey {
  std::string backend_name;
  std::string source_lang;
  std::string target_lang;
  std::string digest;  // sha256 hex of the exact wrapped text bytes

  static CacheKey for_wrapped(std::string_view backend_name, std::string_view source_lang,
                              std::string_view target_lang, std::string_view wrapped);
  std::string flat() const;  // map key
};

std::string sha256_hex(std::string_view bytes);

// Append-only JSON-lines store for raw translations. Corrupt lines are
// skipped with a warning at load; duplicate keys resolve last-write-wins.
// An empty path makes an in-memory cache.
class TranslationCache {
 public:
  TranslationCache() = default;
  explicit TranslationCache(std::filesystem::path file);

  std::optional<std::string> get(const CacheKey& key) const;
  void put(const CacheKey& key, const std::string& wrapped, const std::string& raw_translation);

  size_t size() const;
  size_t corrupt_lines() const { return corrupt_lines_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::unordered_map<std::string, std::string> entries_;
  size_t corrupt_lines_ = 0;
  mutable std::mutex mutex_;
  std::ofstream appender_;
};

}  // namespace mthint
