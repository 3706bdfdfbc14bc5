#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mthint/bleu.hpp"
#include "mthint/config.hpp"
#include "mthint/morph.hpp"

namespace mthint {

// One sentence per line, UTF-8, pre-tokenized for scoring.
std::vector<std::string> read_corpus(const std::filesystem::path& path);

void write_records_jsonl(const std::filesystem::path& path,
                         const std::map<std::string, std::vector<TranslationRecord>>& by_condition);
std::map<std::string, std::vector<TranslationRecord>> read_records_jsonl(
    const std::filesystem::path& path);

struct TranslateResult {
  std::map<std::string, std::vector<TranslationRecord>> records_by_condition;
  std::map<std::string, double> strip_rates;
  std::uint64_t backend_calls = 0;
  std::filesystem::path records_path;
  std::filesystem::path strip_rates_path;
};

// Wrap, translate (cache-aware), strip; writes records.jsonl and
// strip_rates.csv under out_dir. Conditions run sequentially; sentences
// within a condition use the backend's concurrency bound.
TranslateResult run_translate(const ExperimentConfig& config);

// BLEU per condition from stripped records vs the reference corpus. With
// drop_unstripped, unstripped records and their paired references are
// excluded. Writes report.csv and report.json under out_dir.
ConditionReport score_records(
    const std::map<std::string, std::vector<TranslationRecord>>& by_condition,
    const std::vector<std::string>& references, bool drop_unstripped, bool lowercase);

struct ExperimentResult {
  TranslateResult translation;
  ConditionReport report;
  std::filesystem::path report_csv_path;
  std::filesystem::path report_json_path;
};

// The full pipeline: translate every configured condition, then score
// against the reference corpus.
ExperimentResult run_experiment(const ExperimentConfig& config);

ConditionReport write_score_report(const ExperimentConfig& config,
                                   const std::map<std::string, std::vector<TranslationRecord>>&
                                       by_condition);

struct MorphAuditResult {
  std::map<std::string, MorphReport> by_condition;
  MorphReport reference;
  MorphComparison comparison;
  std::filesystem::path report_csv_path;
  std::filesystem::path comparison_csv_path;
  std::filesystem::path chart_data_path;
  std::filesystem::path speaker_svg_path;
  std::filesystem::path audience_svg_path;
};

// Audits one CoNLL-U file per condition (named <label>.conllu) against a
// reference parse; emits the per-condition report, the comparison table,
// chart data, and the two grouped-bar SVGs.
MorphAuditResult run_morph_audit(const std::filesystem::path& conllu_dir,
                                 const std::filesystem::path& reference_conllu,
                                 const PronounLexicon& speaker_lexicon,
                                 const PronounLexicon& audience_lexicon,
                                 const std::filesystem::path& out_dir,
                                 const MorphOptions& options = {});

}  // namespace mthint
