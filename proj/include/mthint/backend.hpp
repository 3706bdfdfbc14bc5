#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "mthint/cache.hpp"
#include "mthint/errors.hpp"
#include "mthint/grid.hpp"
#include "mthint/wrap_strip.hpp"

namespace mthint {

enum class BackendKind { Http, Table, Echo };

BackendKind backend_kind_from_string(std::string_view s);
std::string to_string(BackendKind k);

// Request/response shape of the generic JSON-over-HTTP adapter. Field names
// and passthrough parameters are configuration so one adapter covers the
// usual translation APIs.
struct HttpAdapterConfig {
  std::string text_field = "text";
  std::string source_field = "source";
  std::string target_field = "target";
  std::string response_field = "translation";  // dotted path; numeric segments index arrays
  std::string auth_style = "bearer";           // none | bearer | query
  std::string api_key_param = "key";           // query parameter name for auth_style=query
  std::map<std::string, std::string> extra_params;
};

struct BackendSpec {
  std::string name;
  BackendKind kind = BackendKind::Echo;
  std::string endpoint;         // required for Http
  std::string source_lang = "en";
  std::string target_lang;
  std::string credentials_env;  // env var holding the API key; never stored in config
  std::string fixture;          // Table: TSV path; a "{target}" placeholder expands per language
  HttpAdapterConfig http;
  int concurrency = 4;          // in-flight request bound for translate_corpus
  int max_attempts = 4;         // retry budget for Quota/Network failures
  int initial_backoff_ms = 1000;

  static BackendSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

// One sentence's journey through the pipeline.
struct TranslationRecord {
  std::string source;
  std::string condition_label;
  std::string wrapped;
  std::string raw_translation;
  StripOutcome strip;
  std::string backend_name;
  bool from_cache = false;
  std::int64_t timestamp = 0;  // UTC seconds

  nlohmann::json to_json() const;
  static TranslationRecord from_json(const nlohmann::json& j);
};

class Backend {
 public:
  virtual ~Backend() = default;

  // Single attempt; counts the call. Echo returns its input, Table looks up
  // the fixture row (MissingFixture on a miss), Http performs one request.
  std::string translate(const std::string& wrapped);

  const BackendSpec& spec() const { return spec_; }
  std::uint64_t calls() const { return calls_.load(); }

 protected:
  explicit Backend(BackendSpec spec) : spec_(std::move(spec)) {}
  virtual std::string translate_impl(const std::string& wrapped) = 0;
  BackendSpec spec_;

 private:
  std::atomic<std::uint64_t> calls_{0};
};

std::unique_ptr<Backend> make_backend(const BackendSpec& spec);

// Single translation with the spec's retry budget: Quota (honoring the
// server's retry-after) and Network failures back off exponentially and
// retry; Auth and fixture misses fail immediately.
std::string translate_one(const std::string& wrapped, Backend& backend);

// Full pipeline over a corpus: wrap, consult the cache, translate what's
// missing (bounded concurrency), persist fresh results, strip. Records come
// back in input order. Backend errors surface after the retry budget,
// annotated with the failing sentence index.
std::vector<TranslationRecord> translate_corpus(const std::vector<std::string>& sentences,
                                                const HintCondition& condition,
                                                const PrefixTemplateSet& templates,
                                                Backend& backend, TranslationCache& cache,
                                                const StripRuleSet& rules);

}  // namespace mthint
