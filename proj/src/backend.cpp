#include "mthint/backend.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <thread>

#include <httplib.h>

namespace mthint {

BackendKind backend_kind_from_string(std::string_view s) {
  if (s == "http") return BackendKind::Http;
  if (s == "table") return BackendKind::Table;
  if (s == "echo") return BackendKind::Echo;
  throw ConfigError("unknown backend kind '" + std::string(s) + "'");
}

std::string to_string(BackendKind k) {
  switch (k) {
    case BackendKind::Http: return "http";
    case BackendKind::Table: return "table";
    case BackendKind::Echo: return "echo";
  }
  return "echo";
}

void BackendSpec::validate() const {
  if (name.empty()) throw ConfigError("backend has no name");
  if (kind == BackendKind::Http && endpoint.empty())
    throw ConfigError("http backend '" + name + "' has no endpoint");
  if (kind == BackendKind::Table && fixture.empty())
    throw ConfigError("table backend '" + name + "' has no fixture path");
  if (concurrency < 1) throw ConfigError("backend '" + name + "': concurrency must be >= 1");
  if (max_attempts < 1) throw ConfigError("backend '" + name + "': max_attempts must be >= 1");
}

BackendSpec BackendSpec::from_json(const nlohmann::json& j) {
  BackendSpec s;
  s.name = j.value("name", "");
  s.kind = backend_kind_from_string(j.value("kind", "echo"));
  s.endpoint = j.value("endpoint", "");
  s.source_lang = j.value("source_lang", "en");
  s.target_lang = j.value("target_lang", "");
  s.credentials_env = j.value("credentials_env", "");
  s.fixture = j.value("fixture", "");
  s.concurrency = j.value("concurrency", 4);
  s.max_attempts = j.value("max_attempts", 4);
  s.initial_backoff_ms = j.value("initial_backoff_ms", 1000);
  if (j.contains("http")) {
    const auto& h = j["http"];
    s.http.text_field = h.value("text_field", s.http.text_field);
    s.http.source_field = h.value("source_field", s.http.source_field);
    s.http.target_field = h.value("target_field", s.http.target_field);
    s.http.response_field = h.value("response_field", s.http.response_field);
    s.http.auth_style = h.value("auth_style", s.http.auth_style);
    s.http.api_key_param = h.value("api_key_param", s.http.api_key_param);
    for (const auto& [k, v] : h.value("extra_params", nlohmann::json::object()).items())
      s.http.extra_params[k] = v.get<std::string>();
  }
  s.validate();
  return s;
}

nlohmann::json BackendSpec::to_json() const {
  nlohmann::json j{{"name", name},
                   {"kind", to_string(kind)},
                   {"source_lang", source_lang},
                   {"target_lang", target_lang},
                   {"concurrency", concurrency},
                   {"max_attempts", max_attempts},
                   {"initial_backoff_ms", initial_backoff_ms}};
  if (!endpoint.empty()) j["endpoint"] = endpoint;
  if (!credentials_env.empty()) j["credentials_env"] = credentials_env;
  if (!fixture.empty()) j["fixture"] = fixture;
  return j;
}

nlohmann::json TranslationRecord::to_json() const {
  nlohmann::json j{{"source", source},
                   {"condition", condition_label},
                   {"wrapped", wrapped},
                   {"raw", raw_translation},
                   {"stripped", strip.stripped},
                   {"strip_method", to_string(strip.method)},
                   {"backend", backend_name},
                   {"from_cache", from_cache},
                   {"timestamp", timestamp}};
  j["matched_pattern"] =
      strip.matched_pattern ? nlohmann::json(*strip.matched_pattern) : nlohmann::json(nullptr);
  return j;
}

TranslationRecord TranslationRecord::from_json(const nlohmann::json& j) {
  TranslationRecord r;
  r.source = j.at("source").get<std::string>();
  r.condition_label = j.at("condition").get<std::string>();
  r.wrapped = j.at("wrapped").get<std::string>();
  r.raw_translation = j.at("raw").get<std::string>();
  r.strip.stripped = j.at("stripped").get<std::string>();
  r.strip.method = strip_method_from_string(j.at("strip_method").get<std::string>());
  if (j.contains("matched_pattern") && !j["matched_pattern"].is_null())
    r.strip.matched_pattern = j["matched_pattern"].get<std::string>();
  r.backend_name = j.at("backend").get<std::string>();
  r.from_cache = j.value("from_cache", false);
  r.timestamp = j.value("timestamp", std::int64_t{0});
  return r;
}

std::string Backend::translate(const std::string& wrapped) {
  calls_.fetch_add(1, std::memory_order_relaxed);
  return translate_impl(wrapped);
}

namespace {

class EchoBackend final : public Backend {
 public:
  explicit EchoBackend(BackendSpec spec) : Backend(std::move(spec)) {}

 protected:
  std::string translate_impl(const std::string& wrapped) override { return wrapped; }
};

class TableBackend final : public Backend {
 public:
  explicit TableBackend(BackendSpec spec) : Backend(std::move(spec)) {
    std::string path = spec_.fixture;
    if (auto pos = path.find("{target}"); pos != std::string::npos)
      path.replace(pos, 8, spec_.target_lang);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open fixture table " + path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos)
        throw ConfigError("fixture table " + path + " line " + std::to_string(lineno) +
                          ": expected <wrapped>\\t<translation>");
      rows_[line.substr(0, tab)] = line.substr(tab + 1);
    }
    path_ = std::move(path);
  }

 protected:
  std::string translate_impl(const std::string& wrapped) override {
    auto it = rows_.find(wrapped);
    if (it == rows_.end())
      throw MissingFixture("fixture table " + path_ + " has no row for: " + wrapped);
    return it->second;
  }

 private:
  std::string path_;
  std::unordered_map<std::string, std::string> rows_;
};

const nlohmann::json* walk_path(const nlohmann::json& j, const std::string& dotted) {
  const nlohmann::json* cur = &j;
  size_t start = 0;
  while (start <= dotted.size()) {
    size_t dot = dotted.find('.', start);
    std::string seg = dotted.substr(start, dot == std::string::npos ? dot : dot - start);
    if (cur->is_array() && !seg.empty() &&
        seg.find_first_not_of("0123456789") == std::string::npos) {
      size_t idx = std::stoul(seg);
      if (idx >= cur->size()) return nullptr;
      cur = &(*cur)[idx];
    } else if (cur->is_object() && cur->contains(seg)) {
      cur = &(*cur)[seg];
    } else {
      return nullptr;
    }
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return cur;
}

class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(BackendSpec spec) : Backend(std::move(spec)) {
    // scheme://host[:port][/path...]
    auto scheme_end = spec_.endpoint.find("://");
    if (scheme_end == std::string::npos)
      throw ConfigError("endpoint '" + spec_.endpoint + "' lacks a scheme");
    auto path_start = spec_.endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
      base_ = spec_.endpoint;
      path_ = "/";
    } else {
      base_ = spec_.endpoint.substr(0, path_start);
      path_ = spec_.endpoint.substr(path_start);
    }
    if (!spec_.credentials_env.empty()) {
      const char* key = std::getenv(spec_.credentials_env.c_str());
      if (!key || !*key)
        throw AuthError("environment variable " + spec_.credentials_env +
                        " is unset; no API key for backend '" + spec_.name + "'");
      api_key_ = key;
    }
  }

 protected:
  std::string translate_impl(const std::string& wrapped) override {
    nlohmann::json body;
    body[spec_.http.text_field] = wrapped;
    body[spec_.http.source_field] = spec_.source_lang;
    body[spec_.http.target_field] = spec_.target_lang;
    for (const auto& [k, v] : spec_.http.extra_params) body[k] = v;

    httplib::Client client(base_);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(30, 0);

    std::string path = path_;
    httplib::Headers headers;
    if (!api_key_.empty()) {
      if (spec_.http.auth_style == "bearer") {
        headers.emplace("Authorization", "Bearer " + api_key_);
      } else if (spec_.http.auth_style == "query") {
        path += (path.find('?') == std::string::npos ? "?" : "&");
        path += spec_.http.api_key_param + "=" + api_key_;
      }
    }

    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res)
      throw NetworkError("backend '" + spec_.name + "': " + httplib::to_string(res.error()));

    if (res->status == 401 || res->status == 403)
      throw AuthError("backend '" + spec_.name + "': HTTP " + std::to_string(res->status));
    if (res->status == 429) {
      std::optional<double> retry_after;
      if (res->has_header("Retry-After")) {
        try {
          retry_after = std::stod(res->get_header_value("Retry-After"));
        } catch (...) {
        }
      }
      throw QuotaError("backend '" + spec_.name + "': HTTP 429", retry_after);
    }
    if (res->status < 200 || res->status >= 300)
      throw NetworkError("backend '" + spec_.name + "': HTTP " + std::to_string(res->status));

    nlohmann::json payload;
    try {
      payload = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw ResponseError("backend '" + spec_.name + "': response is not JSON: " + e.what());
    }
    const nlohmann::json* field = walk_path(payload, spec_.http.response_field);
    if (!field || !field->is_string())
      throw ResponseError("backend '" + spec_.name + "': no string at response field '" +
                          spec_.http.response_field + "'");
    return field->get<std::string>();
  }

 private:
  std::string base_;
  std::string path_;
  std::string api_key_;
};

}  // namespace

std::unique_ptr<Backend> make_backend(const BackendSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case BackendKind::Echo: return std::make_unique<EchoBackend>(spec);
    case BackendKind::Table: return std::make_unique<TableBackend>(spec);
    case BackendKind::Http: return std::make_unique<HttpBackend>(spec);
  }
  throw ConfigError("unhandled backend kind");
}

std::string translate_one(const std::string& wrapped, Backend& backend) {
  const auto& spec = backend.spec();
  int attempt = 0;
  for (;;) {
    ++attempt;
    try {
      return backend.translate(wrapped);
    } catch (const QuotaError& e) {
      if (attempt >= spec.max_attempts) throw;
      double delay_ms = e.retry_after ? *e.retry_after * 1000.0
                                      : spec.initial_backoff_ms * std::pow(2.0, attempt - 1);
      std::this_thread::sleep_for(std::chrono::milliseconds(static_cast<long>(delay_ms)));
    } catch (const NetworkError&) {
      if (attempt >= spec.max_attempts) throw;
      double delay_ms = spec.initial_backoff_ms * std::pow(2.0, attempt - 1);
      std::this_thread::sleep_for(std::chrono::milliseconds(static_cast<long>(delay_ms)));
    }
    // AuthError, MissingFixture, ResponseError: retrying cannot help.
  }
}

std::vector<TranslationRecord> translate_corpus(const std::vector<std::string>& sentences,
                                                const HintCondition& condition,
                                                const PrefixTemplateSet& templates,
                                                Backend& backend, TranslationCache& cache,
                                                const StripRuleSet& rules) {
  if (sentences.empty()) throw EmptyInput("translate_corpus over an empty sentence list");

  const std::string prefix = render_prefix(condition, templates);
  const auto& spec = backend.spec();

  std::vector<TranslationRecord> records(sentences.size());
  std::mutex error_mutex;
  std::exception_ptr first_error;
  size_t first_error_index = sentences.size();
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= sentences.size() || failed.load()) return;
      try {
        WrappedSentence w = wrap(sentences[i], prefix, templates.separator);
        CacheKey key =
            CacheKey::for_wrapped(spec.name, spec.source_lang, spec.target_lang, w.wrapped);

        TranslationRecord rec;
        rec.source = w.original;
        rec.condition_label = condition.label;
        rec.wrapped = w.wrapped;
        rec.backend_name = spec.name;
        if (auto cached = cache.get(key)) {
          rec.raw_translation = *cached;
          rec.from_cache = true;
        } else {
          rec.raw_translation = translate_one(w.wrapped, backend);
          cache.put(key, w.wrapped, rec.raw_translation);
        }
        // Baseline carries no prefix, so there is nothing to strip.
        rec.strip = prefix.empty()
                        ? StripOutcome{rec.raw_translation, StripMethod::ExactPattern, ""}
                        : strip(rec.raw_translation, rules);
        rec.timestamp = static_cast<std::int64_t>(std::time(nullptr));
        records[i] = std::move(rec);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
        failed.store(true);
        return;
      }
    }
  };

  size_t n_workers = std::min<size_t>(static_cast<size_t>(spec.concurrency), sentences.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (first_error) {
    auto annotate = [&](const std::exception& e) {
      return "sentence " + std::to_string(first_error_index) + ": " + e.what();
    };
    try {
      std::rethrow_exception(first_error);
    } catch (const AuthError& e) {
      throw AuthError(annotate(e));
    } catch (const QuotaError& e) {
      throw QuotaError(annotate(e), e.retry_after);
    } catch (const MissingFixture& e) {
      throw MissingFixture(annotate(e));
    } catch (const ResponseError& e) {
      throw ResponseError(annotate(e));
    } catch (const NetworkError& e) {
      throw NetworkError(annotate(e));
    } catch (const BackendError& e) {
      throw BackendError(annotate(e));
    } catch (const Error& e) {
      throw Error(annotate(e));
    }
  }
  return records;
}

}  // namespace mthint
