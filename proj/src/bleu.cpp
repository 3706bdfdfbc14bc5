#include "mthint/bleu.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "mthint/grid.hpp"

namespace mthint {

namespace {

std::vector<std::string> tokenize(const std::string& line, bool lowercase) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    if (lowercase) {
      for (char& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

// N-grams keyed as length-prefixed joined tokens; '\x1f' never occurs in
// whitespace-split tokens.
void count_ngrams(const std::vector<std::string>& tokens, int n,
                  std::unordered_map<std::string, long long>& out) {
  if (static_cast<int>(tokens.size()) < n) return;
  for (size_t start = 0; start + n <= tokens.size(); ++start) {
    std::string key(1, static_cast<char>('0' + n));
    for (int k = 0; k < n; ++k) {
      key.push_back('\x1f');
      key += tokens[start + k];
    }
    ++out[key];
  }
}

std::string format_double(double v, int decimals) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(decimals);
  ss << v;
  return ss.str();
}

}  // namespace

BleuScore corpus_bleu(const std::vector<std::string>& hypotheses,
                      const std::vector<std::string>& references, bool lowercase) {
  if (hypotheses.size() != references.size()) {
    throw LengthMismatch("corpus_bleu: " + std::to_string(hypotheses.size()) +
                         " hypotheses vs " + std::to_string(references.size()) + " references");
  }
  if (hypotheses.empty()) throw EmptyCorpus("corpus_bleu over an empty corpus");

  std::array<long long, 4> correct{};
  std::array<long long, 4> total{};
  long long hyp_len = 0, ref_len = 0;

  for (size_t i = 0; i < hypotheses.size(); ++i) {
    auto hyp = tokenize(hypotheses[i], lowercase);
    auto ref = tokenize(references[i], lowercase);
    hyp_len += static_cast<long long>(hyp.size());
    ref_len += static_cast<long long>(ref.size());

    for (int n = 1; n <= 4; ++n) {
      std::unordered_map<std::string, long long> ref_counts, hyp_counts;
      count_ngrams(ref, n, ref_counts);
      count_ngrams(hyp, n, hyp_counts);
      for (const auto& [ngram, count] : hyp_counts) {
        total[n - 1] += count;
        auto it = ref_counts.find(ngram);
        if (it != ref_counts.end()) correct[n - 1] += std::min(count, it->second);
      }
    }
  }

  BleuScore s;
  s.hyp_len = hyp_len;
  s.ref_len = ref_len;
  s.length_ratio = ref_len > 0 ? static_cast<double>(hyp_len) / ref_len : 0.0;

  bool any_zero = false;
  double log_sum = 0.0;
  for (int n = 0; n < 4; ++n) {
    s.precisions[n] = total[n] > 0 ? static_cast<double>(correct[n]) / total[n] : 0.0;
    if (s.precisions[n] <= 0.0)
      any_zero = true;
    else
      log_sum += std::log(s.precisions[n]);
  }

  if (hyp_len == 0) {
    // Degenerate corpus of empty hypotheses; nothing to score.
    s.brevity_penalty = 0.0;
    s.bleu = 0.0;
    return s;
  }
  s.brevity_penalty =
      hyp_len >= ref_len ? 1.0 : std::exp(1.0 - static_cast<double>(ref_len) / hyp_len);
  s.bleu = any_zero ? 0.0 : 100.0 * s.brevity_penalty * std::exp(log_sum / 4.0);
  return s;
}

const ConditionRow& ConditionReport::baseline() const {
  for (const auto& row : rows)
    if (row.condition == "baseline") return row;
  throw MissingBaseline("condition report has no baseline row");
}

std::string ConditionReport::to_csv() const {
  std::ostringstream out;
  out << "condition,bleu,p1,p2,p3,p4,bp,len_ratio,delta_vs_baseline\n";
  for (const auto& row : rows) {
    out << row.condition << ',' << format_double(row.score.bleu, 2);
    for (double p : row.score.precisions) out << ',' << format_double(p, 4);
    out << ',' << format_double(row.score.brevity_penalty, 4) << ','
        << format_double(row.score.length_ratio, 4) << ','
        << format_double(row.delta_vs_baseline, 2) << '\n';
  }
  return out.str();
}

nlohmann::json ConditionReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    rows_json.push_back({{"condition", row.condition},
                         {"bleu", row.score.bleu},
                         {"precisions", row.score.precisions},
                         {"brevity_penalty", row.score.brevity_penalty},
                         {"hyp_len", row.score.hyp_len},
                         {"ref_len", row.score.ref_len},
                         {"length_ratio", row.score.length_ratio},
                         {"delta_vs_baseline", row.delta_vs_baseline},
                         {"strip_rate", row.strip_rate},
                         {"dropped", row.dropped}});
  }
  return nlohmann::json{{"rows", rows_json}};
}

namespace {

// Baseline first, then grid order; labels outside the grid grammar would have
// failed upstream, but fall back to lexicographic just in case.
void sort_rows(std::vector<ConditionRow>& rows) {
  std::vector<std::string> labels;
  labels.reserve(rows.size());
  for (const auto& r : rows) labels.push_back(r.condition);

  PrefixTemplateSet ordering_only;
  for (const auto& l : labels) ordering_only.entries[l] = "";
  std::vector<std::string> ordered;
  try {
    for (const auto& c : enumerate_grid(ordering_only)) ordered.push_back(c.label);
  } catch (const MalformedLabel&) {
    ordered = labels;
    std::sort(ordered.begin(), ordered.end());
    auto base = std::find(ordered.begin(), ordered.end(), "baseline");
    if (base != ordered.end()) std::rotate(ordered.begin(), base, base + 1);
  }

  std::vector<ConditionRow> sorted;
  sorted.reserve(rows.size());
  for (const auto& label : ordered) {
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const ConditionRow& r) { return r.condition == label; });
    if (it != rows.end()) sorted.push_back(std::move(*it));
  }
  rows = std::move(sorted);
}

}  // namespace

ConditionReport condition_report_paired(
    const std::vector<std::pair<std::string,
                                std::pair<std::vector<std::string>, std::vector<std::string>>>>&
        pairs_by_condition,
    bool lowercase) {
  ConditionReport report;
  for (const auto& [label, pair] : pairs_by_condition) {
    ConditionRow row;
    row.condition = label;
    try {
      row.score = corpus_bleu(pair.first, pair.second, lowercase);
    } catch (const Error& e) {
      throw Error("condition '" + label + "': " + e.what());
    }
    report.rows.push_back(std::move(row));
  }
  sort_rows(report.rows);

  const double base = report.baseline().score.bleu;  // throws MissingBaseline
  for (auto& row : report.rows) row.delta_vs_baseline = row.score.bleu - base;
  return report;
}

ConditionReport condition_report(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& hyps_by_condition,
    const std::vector<std::string>& references, bool lowercase) {
  std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>>>
      paired;
  paired.reserve(hyps_by_condition.size());
  for (const auto& [label, hyps] : hyps_by_condition) paired.push_back({label, {hyps, references}});
  return condition_report_paired(paired, lowercase);
}

}  // namespace mthint
