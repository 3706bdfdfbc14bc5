#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "mthint/backend.hpp"
#include "mthint/harness.hpp"

using namespace mthint;

namespace {

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "mthint_backend_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path write_fixture(const std::string& name,
                                    const std::vector<std::pair<std::string, std::string>>& rows) {
  auto path = temp_dir() / name;
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  for (const auto& [wrapped, translation] : rows) out << wrapped << '\t' << translation << '\n';
  return path;
}

BackendSpec echo_spec() {
  BackendSpec spec;
  spec.name = "echo";
  spec.kind = BackendKind::Echo;
  spec.source_lang = "en";
  spec.target_lang = "en";
  return spec;
}

StripRuleSet english_rules() {
  StripRuleSet rules;
  rules.target_language = "en";
  for (const auto& [label, prefix] : PrefixTemplateSet::english_defaults().entries)
    if (!prefix.empty()) rules.exact_patterns.push_back(prefix);
  return rules;
}

// One server per test; handlers installed by the test body.
struct TestServer {
  httplib::Server server;
  int port = 0;
  std::thread thread;

  void start() {
    port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~TestServer() {
    server.stop();
    if (thread.joinable()) thread.join();
  }
  std::string endpoint(const std::string& path = "/translate") const {
    return "http://127.0.0.1:" + std::to_string(port) + path;
  }
};

BackendSpec http_spec(const TestServer& server) {
  BackendSpec spec;
  spec.name = "svc";
  spec.kind = BackendKind::Http;
  spec.endpoint = server.endpoint();
  spec.source_lang = "en";
  spec.target_lang = "he";
  spec.max_attempts = 4;
  spec.initial_backoff_ms = 1;  // keep test retries fast
  return spec;
}

}  // namespace

TEST_CASE("echo backend returns its input unchanged") {
  auto backend = make_backend(echo_spec());
  CHECK(backend->translate("She said to them: I love you") == "She said to them: I love you");
  CHECK(backend->calls() == 1);
}

TEST_CASE("table backend looks up the fixture row keyed on wrapped text") {
  auto fixture = write_fixture("basic.tsv", {{"He said: go", "hu amar: lekh"},
                                             {"go", "lekh"}});
  BackendSpec spec;
  spec.name = "fixtures";
  spec.kind = BackendKind::Table;
  spec.fixture = fixture.string();
  spec.target_lang = "he";
  auto backend = make_backend(spec);
  CHECK(backend->translate("He said: go") == "hu amar: lekh");
  CHECK_THROWS_AS(backend->translate("He said: stay"), MissingFixture);
}

TEST_CASE("table backend expands a {target} placeholder per language") {
  write_fixture("probe_he.tsv", {{"x", "hebrew"}});
  write_fixture("probe_fr.tsv", {{"x", "french"}});
  BackendSpec spec;
  spec.name = "fixtures";
  spec.kind = BackendKind::Table;
  spec.fixture = (temp_dir() / "probe_{target}.tsv").string();
  spec.target_lang = "he";
  CHECK(make_backend(spec)->translate("x") == "hebrew");
  spec.target_lang = "fr";
  CHECK(make_backend(spec)->translate("x") == "french");
}

TEST_CASE("http backend posts the configured fields and reads a dotted response path") {
  TestServer srv;
  nlohmann::json seen;
  srv.server.Post("/translate", [&](const httplib::Request& req, httplib::Response& res) {
    seen = nlohmann::json::parse(req.body);
    nlohmann::json body = {{"data", {{"translations", {{{"text", "tirgum"}}}}}}};
    res.set_content(body.dump(), "application/json");
  });
  srv.start();

  auto spec = http_spec(srv);
  spec.http.text_field = "q";
  spec.http.source_field = "from";
  spec.http.target_field = "to";
  spec.http.response_field = "data.translations.0.text";
  spec.http.extra_params = {{"model", "large"}};

  auto backend = make_backend(spec);
  CHECK(backend->translate("She said: hi") == "tirgum");
  CHECK(seen["q"] == "She said: hi");
  CHECK(seen["from"] == "en");
  CHECK(seen["to"] == "he");
  CHECK(seen["model"] == "large");
}

TEST_CASE("http backend sends bearer credentials from the named env var") {
  setenv("MTHINT_TEST_KEY", "sekrit", 1);
  TestServer srv;
  std::string auth_header;
  srv.server.Post("/translate", [&](const httplib::Request& req, httplib::Response& res) {
    auth_header = req.get_header_value("Authorization");
    res.set_content(R"({"translation":"ok"})", "application/json");
  });
  srv.start();

  auto spec = http_spec(srv);
  spec.credentials_env = "MTHINT_TEST_KEY";
  CHECK(make_backend(spec)->translate("x") == "ok");
  CHECK(auth_header == "Bearer sekrit");

  unsetenv("MTHINT_TEST_KEY");
  CHECK_THROWS_AS(make_backend(spec), AuthError);  // unset key is caught up front
}

TEST_CASE("bad credentials surface as AuthError without retries") {
  TestServer srv;
  std::atomic<int> hits{0};
  srv.server.Post("/translate", [&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 401;
  });
  srv.start();

  auto backend = make_backend(http_spec(srv));
  CHECK_THROWS_AS(translate_one("x", *backend), AuthError);
  CHECK(hits == 1);
}

TEST_CASE("quota responses honor retry-after and eventually succeed") {
  TestServer srv;
  std::atomic<int> hits{0};
  srv.server.Post("/translate", [&](const httplib::Request&, httplib::Response& res) {
    if (++hits <= 2) {
      res.status = 429;
      res.set_header("Retry-After", "0");
    } else {
      res.set_content(R"({"translation":"done"})", "application/json");
    }
  });
  srv.start();

  auto backend = make_backend(http_spec(srv));
  CHECK(translate_one("x", *backend) == "done");
  CHECK(hits == 3);
}

TEST_CASE("persistent server failures exhaust the retry budget") {
  TestServer srv;
  std::atomic<int> hits{0};
  srv.server.Post("/translate", [&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 503;
  });
  srv.start();

  auto backend = make_backend(http_spec(srv));
  CHECK_THROWS_AS(translate_one("x", *backend), NetworkError);
  CHECK(hits == 4);  // max_attempts
}

TEST_CASE("a response without the expected field is a ResponseError") {
  TestServer srv;
  srv.server.Post("/translate", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"unexpected":"shape"})", "application/json");
  });
  srv.start();
  auto backend = make_backend(http_spec(srv));
  CHECK_THROWS_AS(backend->translate("x"), ResponseError);
}

TEST_CASE("translate_corpus preserves order and strips through the whole chain") {
  auto templates = PrefixTemplateSet::english_defaults();
  auto rules = english_rules();
  std::vector<std::string> sentences = {"i love bread", "we sing songs", "you are kind"};

  TranslationCache cache;
  auto backend = make_backend(echo_spec());
  auto records = translate_corpus(sentences, parse_condition_label("she+them"), templates,
                                  *backend, cache, rules);
  REQUIRE(records.size() == 3);
  for (size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].source == sentences[i]);
    CHECK(records[i].wrapped == "She said to them: " + sentences[i]);
    CHECK(records[i].strip.method == StripMethod::ExactPattern);
    CHECK(records[i].strip.stripped == sentences[i]);
    CHECK(records[i].from_cache == false);
    CHECK(records[i].condition_label == "she+them");
  }
}

TEST_CASE("baseline passes through untouched even when the text contains a delimiter") {
  auto templates = PrefixTemplateSet::english_defaults();
  auto rules = english_rules();
  std::vector<std::string> sentences = {"note: this colon stays"};
  TranslationCache cache;
  auto backend = make_backend(echo_spec());
  auto records = translate_corpus(sentences, parse_condition_label("baseline"), templates,
                                  *backend, cache, rules);
  CHECK(records[0].strip.stripped == "note: this colon stays");
  CHECK(records[0].strip.method != StripMethod::Unstripped);
}

TEST_CASE("a warm cache answers everything with zero backend calls") {
  auto templates = PrefixTemplateSet::english_defaults();
  auto rules = english_rules();
  std::vector<std::string> sentences;
  for (int i = 0; i < 50; ++i) sentences.push_back("sentence number " + std::to_string(i));

  auto path = temp_dir() / "warm.jsonl";
  std::filesystem::remove(path);
  auto condition = parse_condition_label("he+them");

  TranslationCache cold(path);
  auto backend1 = make_backend(echo_spec());
  auto first = translate_corpus(sentences, condition, templates, *backend1, cold, rules);
  CHECK(backend1->calls() == 50);

  TranslationCache warm(path);
  auto backend2 = make_backend(echo_spec());
  auto second = translate_corpus(sentences, condition, templates, *backend2, warm, rules);
  CHECK(backend2->calls() == 0);
  REQUIRE(second.size() == first.size());
  for (size_t i = 0; i < second.size(); ++i) {
    CHECK(second[i].from_cache == true);
    CHECK(second[i].raw_translation == first[i].raw_translation);
    CHECK(second[i].strip.stripped == first[i].strip.stripped);
  }
}

TEST_CASE("a missing fixture row fails naming the sentence index") {
  auto fixture = write_fixture("partial.tsv", {{"He said: a b c d", "x"}});
  BackendSpec spec;
  spec.name = "fixtures";
  spec.kind = BackendKind::Table;
  spec.fixture = fixture.string();
  spec.target_lang = "he";
  spec.concurrency = 1;

  auto templates = PrefixTemplateSet::english_defaults();
  auto backend = make_backend(spec);
  TranslationCache cache;
  StripRuleSet rules;
  try {
    translate_corpus({"a b c d", "missing row"}, parse_condition_label("he"), templates,
                     *backend, cache, rules);
    FAIL("expected MissingFixture");
  } catch (const MissingFixture& e) {
    CHECK(std::string(e.what()).find("sentence 1") != std::string::npos);
  }
}

TEST_CASE("records serialize to JSONL and back") {
  auto templates = PrefixTemplateSet::english_defaults();
  auto rules = english_rules();
  TranslationCache cache;
  auto backend = make_backend(echo_spec());
  auto records = translate_corpus({"i love bread", "you sing well"},
                                  parse_condition_label("she"), templates, *backend, cache, rules);

  auto path = temp_dir() / "records.jsonl";
  write_records_jsonl(path, {{"she", records}});
  auto loaded = read_records_jsonl(path);
  REQUIRE(loaded.count("she") == 1);
  REQUIRE(loaded["she"].size() == 2);
  CHECK(loaded["she"][0].source == "i love bread");
  CHECK(loaded["she"][0].wrapped == records[0].wrapped);
  CHECK(loaded["she"][0].strip.method == records[0].strip.method);
  CHECK(loaded["she"][0].strip.stripped == records[0].strip.stripped);
}
