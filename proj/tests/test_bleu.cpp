#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mthint/bleu.hpp"

using namespace mthint;

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

struct OracleRow {
  std::string name;
  double bleu_pinned;  // multi-bleu printed value, 2 decimals
  double bleu_exact;
  std::array<double, 4> precisions;
  double bp;
  long long hyp_len, ref_len;
};

std::vector<OracleRow> load_oracle_rows() {
  auto lines = read_lines(std::filesystem::path(MTHINT_TEST_DATA) / "bleu_oracle" /
                          "expected.tsv");
  std::vector<OracleRow> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::istringstream ss(lines[i]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    REQUIRE(fields.size() >= 10);
    OracleRow row;
    row.name = fields[0];
    row.bleu_pinned = std::stod(fields[1]);
    row.bleu_exact = std::stod(fields[2]);
    for (int n = 0; n < 4; ++n) row.precisions[n] = std::stod(fields[3 + n]);
    row.bp = std::stod(fields[7]);
    row.hyp_len = std::stoll(fields[8]);
    row.ref_len = std::stoll(fields[9]);
    rows.push_back(row);
  }
  REQUIRE(rows.size() == 20);
  return rows;
}

std::string random_line(std::mt19937& rng, int min_len, int max_len, int vocab) {
  std::uniform_int_distribution<int> len(min_len, max_len), pick(0, vocab - 1);
  std::string s;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += "w" + std::to_string(pick(rng));
  }
  return s;
}

}  // namespace

TEST_CASE("identical corpora score 100 with no brevity penalty") {
  std::vector<std::string> text = {"the cat sat on a mat", "hello over there my friend"};
  auto score = corpus_bleu(text, text);
  CHECK(score.bleu == doctest::Approx(100.0));
  CHECK(score.brevity_penalty == 1.0);
  for (double p : score.precisions) CHECK(p == doctest::Approx(1.0));
}

TEST_CASE("no shared unigram means zero") {
  std::vector<std::string> hyps = {"aa bb cc dd", "ee ff gg hh"};
  std::vector<std::string> refs = {"xx yy zz ww qq", "rr ss tt uu"};
  auto score = corpus_bleu(hyps, refs);
  CHECK(score.bleu == 0.0);
  CHECK(score.precisions[0] == 0.0);
}

TEST_CASE("three-sentence toy corpus matches the reference script") {
  // Pinned from a multi-bleu.perl run over this exact fixture:
  //   BLEU = 34.89, 80.0/50.0/22.2/16.7 (BP=1.000, ratio=1.000, hyp_len=15, ref_len=15)
  std::vector<std::string> hyps = {"the cat sat on the mat", "dogs bark loud at night",
                                   "i love plain bread"};
  std::vector<std::string> refs = {"the cat sat on a mat", "dogs bark loudly at night",
                                   "i love fresh bread"};
  auto score = corpus_bleu(hyps, refs);
  CHECK(score.bleu == doctest::Approx(34.88783797973685).epsilon(1e-12));
  CHECK(score.precisions[0] == doctest::Approx(0.8));
  CHECK(score.precisions[1] == doctest::Approx(0.5));
  CHECK(score.precisions[2] == doctest::Approx(2.0 / 9.0));
  CHECK(score.precisions[3] == doctest::Approx(1.0 / 6.0));
  CHECK(score.brevity_penalty == 1.0);
  CHECK(score.hyp_len == 15);
  CHECK(score.ref_len == 15);

  // -lc behavior: case differences vanish under the flag
  std::vector<std::string> upper = {"The cat sat on the mat", "DOGS bark loud at night",
                                    "i love plain bread"};
  CHECK(corpus_bleu(upper, refs, true).bleu == doctest::Approx(score.bleu));
  CHECK(corpus_bleu(upper, refs, false).bleu < score.bleu);
}

TEST_CASE("oracle equivalence over the pinned random corpora") {
  auto dir = std::filesystem::path(MTHINT_TEST_DATA) / "bleu_oracle";
  for (const auto& row : load_oracle_rows()) {
    auto hyps = read_lines(dir / (row.name + ".hyp"));
    auto refs = read_lines(dir / (row.name + ".ref"));
    auto score = corpus_bleu(hyps, refs);
    INFO(row.name);
    CHECK(score.bleu == doctest::Approx(row.bleu_exact).epsilon(1e-9));
    for (int n = 0; n < 4; ++n)
      CHECK(score.precisions[n] == doctest::Approx(row.precisions[n]).epsilon(1e-12));
    CHECK(score.brevity_penalty == doctest::Approx(row.bp).epsilon(1e-12));
    CHECK(score.hyp_len == row.hyp_len);
    CHECK(score.ref_len == row.ref_len);
  }
}

TEST_CASE("mismatched or empty corpora are rejected") {
  CHECK_THROWS_AS(corpus_bleu({"a"}, {"a", "b"}), LengthMismatch);
  CHECK_THROWS_AS(corpus_bleu({}, {}), EmptyCorpus);
}

TEST_CASE("jointly shuffling sentence pairs leaves the score unchanged") {
  std::mt19937 rng(3);
  std::vector<std::string> hyps, refs;
  for (int i = 0; i < 25; ++i) {
    refs.push_back(random_line(rng, 1, 15, 12));
    hyps.push_back(random_line(rng, 1, 15, 12));
  }
  auto base = corpus_bleu(hyps, refs);

  std::vector<size_t> order(hyps.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (int round = 0; round < 5; ++round) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::string> h2, r2;
    for (size_t i : order) {
      h2.push_back(hyps[i]);
      r2.push_back(refs[i]);
    }
    auto shuffled = corpus_bleu(h2, r2);
    CHECK(shuffled.bleu == doctest::Approx(base.bleu).epsilon(1e-12));
    CHECK(shuffled.brevity_penalty == doctest::Approx(base.brevity_penalty).epsilon(1e-12));
  }
}

TEST_CASE("truncating hypotheses below reference length never raises the brevity penalty") {
  std::mt19937 rng(5);
  for (int round = 0; round < 20; ++round) {
    std::vector<std::string> refs, hyps;
    for (int i = 0; i < 10; ++i) refs.push_back(random_line(rng, 4, 15, 10));
    hyps = refs;
    double last_bp = corpus_bleu(hyps, refs).brevity_penalty;
    for (int cut = 0; cut < 3; ++cut) {
      for (auto& h : hyps) {
        auto pos = h.rfind(' ');
        if (pos != std::string::npos) h = h.substr(0, pos);
      }
      double bp = corpus_bleu(hyps, refs).brevity_penalty;
      CHECK(bp <= last_bp + 1e-15);
      last_bp = bp;
    }
  }
}

TEST_CASE("self-comparison scores 100 whenever 4-grams exist") {
  // Moses semantics: a corpus whose sentences are all shorter than 4 tokens
  // has no 4-grams, so even self-comparison yields 0.
  std::mt19937 rng(9);
  for (int round = 0; round < 10; ++round) {
    std::vector<std::string> text = {random_line(rng, 4, 15, 8)};
    for (int i = 0; i < 12; ++i) text.push_back(random_line(rng, 1, 15, 8));
    CHECK(corpus_bleu(text, text).bleu == doctest::Approx(100.0));
  }
  std::vector<std::string> shorts = {"a b c", "d e"};
  CHECK(corpus_bleu(shorts, shorts).bleu == 0.0);
}

TEST_CASE("condition report computes deltas against the baseline in grid order") {
  // Pinned from a multi-bleu.perl run: the baseline fixture scores 47.62.
  std::vector<std::string> refs = {"ani ohevet lehem tari", "ani nehmada meod hayom",
                                   "anahnu sharim shir yafe"};
  std::vector<std::string> baseline = {"ani ohev lehem tari", "ani nehmad meod hayom",
                                       "anahnu sharim shir yafe"};
  auto report = condition_report(
      {{"she+them", refs}, {"baseline", baseline}, {"he", baseline}}, refs);

  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].condition == "baseline");
  CHECK(report.rows[1].condition == "he");
  CHECK(report.rows[2].condition == "she+them");

  CHECK(report.rows[0].score.bleu == doctest::Approx(47.62400716164666).epsilon(1e-12));
  CHECK(report.rows[0].delta_vs_baseline == doctest::Approx(0.0));
  CHECK(report.rows[1].delta_vs_baseline == doctest::Approx(0.0));  // identical hypotheses
  CHECK(report.rows[2].score.bleu == doctest::Approx(100.0));
  CHECK(report.rows[2].delta_vs_baseline > 0.0);
}

TEST_CASE("condition report requires a baseline row") {
  std::vector<std::string> refs = {"a b c d"};
  CHECK_THROWS_AS(condition_report({{"she", refs}}, refs), MissingBaseline);
}

TEST_CASE("per-condition scoring errors name the condition") {
  std::vector<std::string> refs = {"a b c d", "e f g h"};
  std::vector<std::string> short_hyps = {"a b c d"};
  try {
    condition_report({{"baseline", refs}, {"she", short_hyps}}, refs);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("she") != std::string::npos);
  }
}

TEST_CASE("report serializes to CSV and JSON with the documented columns") {
  std::vector<std::string> refs = {"a b c d e"};
  auto report = condition_report({{"baseline", refs}, {"she", refs}}, refs);
  auto csv = report.to_csv();
  CHECK(csv.rfind("condition,bleu,p1,p2,p3,p4,bp,len_ratio,delta_vs_baseline\n", 0) == 0);
  CHECK(csv.find("baseline,100.00") != std::string::npos);

  auto j = report.to_json();
  REQUIRE(j.contains("rows"));
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][0]["condition"] == "baseline");
  CHECK(j["rows"][0]["bleu"].get<double>() == doctest::Approx(100.0));
}
