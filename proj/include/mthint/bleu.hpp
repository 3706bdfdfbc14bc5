#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "mthint/errors.hpp"

namespace mthint {

// Corpus BLEU as the Moses multi-bleu script computes it: clipped n-gram
// counts (orders 1-4) summed over the whole corpus before division, no
// smoothing, brevity penalty exp(1 - ref_len/hyp_len) when hypotheses run
// short.
struct BleuScore {
  double bleu = 0.0;                         // percentage, [0, 100]
  std::array<double, 4> precisions{};        // clipped p1..p4, [0, 1]
  double brevity_penalty = 1.0;
  long long hyp_len = 0;
  long long ref_len = 0;
  double length_ratio = 0.0;                 // hyp_len / ref_len
};

// Inputs are pre-tokenized, whitespace-separated, one reference stream.
// lowercase applies ASCII case folding (the script's -lc switch).
BleuScore corpus_bleu(const std::vector<std::string>& hypotheses,
                      const std::vector<std::string>& references, bool lowercase = false);

struct ConditionRow {
  std::string condition;
  BleuScore score;
  double delta_vs_baseline = 0.0;
  double strip_rate = 1.0;       // fraction of records whose prefix was removed
  long long dropped = 0;         // unstripped records excluded from scoring
};

struct ConditionReport {
  std::vector<ConditionRow> rows;  // grid order, baseline first

  const ConditionRow& baseline() const;
  std::string to_csv() const;      // condition,bleu,p1,p2,p3,p4,bp,len_ratio,delta_vs_baseline
  nlohmann::json to_json() const;
};

// Per-condition BLEU with deltas against the baseline row. Hypotheses come as
// (label, stripped texts) pairs; every condition must supply one hypothesis
// per reference. Throws MissingBaseline when no baseline condition is given;
// scoring errors are rethrown naming the condition.
ConditionReport condition_report(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& hyps_by_condition,
    const std::vector<std::string>& references, bool lowercase = false);

// Same, but each condition brings its own reference stream (used when
// unstripped records are dropped pairwise before scoring).
ConditionReport condition_report_paired(
    const std::vector<std::pair<std::string,
                                std::pair<std::vector<std::string>, std::vector<std::string>>>>&
        pairs_by_condition,
    bool lowercase = false);

}  // namespace mthint
