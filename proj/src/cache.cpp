#include "mthint/cache.hpp"

#include <iostream>

#include <json.hpp>
#include <openssl/evp.h>

#include "mthint/errors.hpp"

namespace mthint {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

CacheKey CacheKey::for_wrapped(std::string_view backend_name, std::string_view source_lang,
                               std::string_view target_lang, std::string_view wrapped) {
  return {std::string(backend_name), std::string(source_lang), std::string(target_lang),
          sha256_hex(wrapped)};
}

std::string CacheKey::flat() const {
  std::string k;
  k.reserve(backend_name.size() + source_lang.size() + target_lang.size() + digest.size() + 3);
  k.append(backend_name).push_back('\x1f');
  k.append(source_lang).push_back('\x1f');
  k.append(target_lang).push_back('\x1f');
  k.append(digest);
  return k;
}

TranslationCache::TranslationCache(std::filesystem::path file) : path_(std::move(file)) {
  if (path_.empty()) return;

  if (std::filesystem::exists(path_)) {
    std::ifstream in(path_, std::ios::binary);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        auto j = nlohmann::json::parse(line);
        CacheKey key{j.at("backend").get<std::string>(), j.at("source_lang").get<std::string>(),
                     j.at("target_lang").get<std::string>(), j.at("digest").get<std::string>()};
        entries_[key.flat()] = j.at("raw").get<std::string>();  // last write wins
      } catch (const nlohmann::json::exception& e) {
        ++corrupt_lines_;
        std::cerr << "warning: skipping corrupt cache line " << lineno << " in " << path_.string()
                  << ": " << e.what() << '\n';
      }
    }
  } else if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }

  appender_.open(path_, std::ios::app | std::ios::binary);
  if (!appender_) throw Error("cannot open cache file for append: " + path_.string());
}

std::optional<std::string> TranslationCache::get(const CacheKey& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key.flat());
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void TranslationCache::put(const CacheKey& key, const std::string& wrapped,
                           const std::string& raw_translation) {
  nlohmann::json j{{"backend", key.backend_name}, {"source_lang", key.source_lang},
                   {"target_lang", key.target_lang}, {"digest", key.digest},
                   {"wrapped", wrapped},           {"raw", raw_translation}};
  std::lock_guard lock(mutex_);
  entries_[key.flat()] = raw_translation;
  if (appender_.is_open()) {
    appender_ << j.dump() << '\n';
    appender_.flush();
  }
}

size_t TranslationCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

}  // namespace mthint
