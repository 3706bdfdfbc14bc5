#include "mthint/harness.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mthint/svg.hpp"

namespace mthint {

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

std::string format_rate(double rate) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(4);
  ss << rate;
  return ss.str();
}

}  // namespace

std::vector<std::string> read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open corpus file " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // A trailing newline is not an extra (empty) sentence.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw EmptyCorpus("corpus file " + path.string() + " has no sentences");
  return lines;
}

void write_records_jsonl(
    const std::filesystem::path& path,
    const std::map<std::string, std::vector<TranslationRecord>>& by_condition) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write records file " + path.string());
  for (const auto& [label, records] : by_condition) {
    (void)label;
    for (const auto& r : records) out << r.to_json().dump() << '\n';
  }
}

std::map<std::string, std::vector<TranslationRecord>> read_records_jsonl(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open records file " + path.string());
  std::map<std::string, std::vector<TranslationRecord>> by_condition;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      auto record = TranslationRecord::from_json(nlohmann::json::parse(line));
      by_condition[record.condition_label].push_back(std::move(record));
    } catch (const nlohmann::json::exception& e) {
      throw Error("records file " + path.string() + " line " + std::to_string(lineno) + ": " +
                  e.what());
    }
  }
  if (by_condition.empty()) throw Error("records file " + path.string() + " is empty");
  return by_condition;
}

TranslateResult run_translate(const ExperimentConfig& config) {
  PrefixTemplateSet templates = config.load_templates();
  StripRuleSet rules = config.load_strip_rules();
  auto conditions = config.resolve_conditions(templates);

  const BackendSpec& spec = config.selected_backend();
  if (spec.kind == BackendKind::Http && rules.exact_patterns.empty())
    throw ConfigError("live experiments need target-side exact strip patterns; rule file '" +
                      config.strip_rules_path.string() + "' defines none");

  auto sentences = read_corpus(config.source_corpus);
  if (!config.reference_corpus.empty()) {
    auto references = read_corpus(config.reference_corpus);
    if (references.size() != sentences.size())
      throw CorpusLengthMismatch("source has " + std::to_string(sentences.size()) +
                                 " sentences but reference has " +
                                 std::to_string(references.size()));
  }

  TranslationCache cache(config.cache_path);
  auto backend = make_backend(spec);

  TranslateResult result;
  for (const auto& condition : conditions) {
    auto records = translate_corpus(sentences, condition, templates, *backend, cache, rules);
    std::vector<StripOutcome> outcomes;
    outcomes.reserve(records.size());
    for (const auto& r : records) outcomes.push_back(r.strip);
    result.strip_rates[condition.label] = strip_rate(outcomes);
    result.records_by_condition[condition.label] = std::move(records);
  }
  result.backend_calls = backend->calls();

  result.records_path = config.out_dir / "records.jsonl";
  write_records_jsonl(result.records_path, result.records_by_condition);

  std::ostringstream rates;
  rates << "condition,total,stripped,strip_rate\n";
  for (const auto& condition : conditions) {
    const auto& records = result.records_by_condition[condition.label];
    long long stripped = std::count_if(records.begin(), records.end(), [](const auto& r) {
      return r.strip.method != StripMethod::Unstripped;
    });
    rates << condition.label << ',' << records.size() << ',' << stripped << ','
          << format_rate(result.strip_rates[condition.label]) << '\n';
  }
  result.strip_rates_path = config.out_dir / "strip_rates.csv";
  write_text_file(result.strip_rates_path, rates.str());
  return result;
}

ConditionReport score_records(
    const std::map<std::string, std::vector<TranslationRecord>>& by_condition,
    const std::vector<std::string>& references, bool drop_unstripped, bool lowercase) {
  std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>>>
      paired;
  std::map<std::string, std::pair<double, long long>> rates;  // strip rate, dropped

  for (const auto& [label, records] : by_condition) {
    if (records.size() != references.size())
      throw LengthMismatch("condition '" + label + "' has " + std::to_string(records.size()) +
                           " records for " + std::to_string(references.size()) + " references");
    std::vector<std::string> hyps, refs;
    hyps.reserve(records.size());
    refs.reserve(records.size());
    long long dropped = 0;
    for (size_t i = 0; i < records.size(); ++i) {
      if (drop_unstripped && records[i].strip.method == StripMethod::Unstripped) {
        ++dropped;
        continue;
      }
      hyps.push_back(records[i].strip.stripped);
      refs.push_back(references[i]);
    }
    std::vector<StripOutcome> outcomes;
    outcomes.reserve(records.size());
    for (const auto& r : records) outcomes.push_back(r.strip);
    rates[label] = {strip_rate(outcomes), dropped};
    paired.push_back({label, {std::move(hyps), std::move(refs)}});
  }

  ConditionReport report = condition_report_paired(paired, lowercase);
  for (auto& row : report.rows) {
    row.strip_rate = rates[row.condition].first;
    row.dropped = rates[row.condition].second;
  }
  return report;
}

ConditionReport write_score_report(
    const ExperimentConfig& config,
    const std::map<std::string, std::vector<TranslationRecord>>& by_condition) {
  auto references = read_corpus(config.reference_corpus);
  ConditionReport report =
      score_records(by_condition, references, config.drop_unstripped, config.lowercase_bleu);
  write_text_file(config.out_dir / "report.csv", report.to_csv());
  write_text_file(config.out_dir / "report.json", report.to_json().dump(2) + "\n");
  return report;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.reference_corpus.empty())
    throw ConfigError("experiment needs a reference corpus for scoring");

  ExperimentResult result;
  result.translation = run_translate(config);
  result.report = write_score_report(config, result.translation.records_by_condition);
  result.report_csv_path = config.out_dir / "report.csv";
  result.report_json_path = config.out_dir / "report.json";
  return result;
}

MorphAuditResult run_morph_audit(const std::filesystem::path& conllu_dir,
                                 const std::filesystem::path& reference_conllu,
                                 const PronounLexicon& speaker_lexicon,
                                 const PronounLexicon& audience_lexicon,
                                 const std::filesystem::path& out_dir,
                                 const MorphOptions& options) {
  if (!std::filesystem::is_directory(conllu_dir))
    throw Error("audit input " + conllu_dir.string() + " is not a directory");

  MorphAuditResult result;
  for (const auto& entry : std::filesystem::directory_iterator(conllu_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".conllu") continue;
    std::string label = entry.path().stem().string();
    auto sentences = parse_conllu_file(entry.path());
    result.by_condition[label] =
        morph_report(sentences, speaker_lexicon, audience_lexicon, options);
  }
  if (result.by_condition.empty())
    throw Error("no .conllu files in " + conllu_dir.string() +
                "; expected one per condition label (baseline.conllu, she+them.conllu, ...)");

  auto ref_sentences = parse_conllu_file(reference_conllu);
  result.reference = morph_report(ref_sentences, speaker_lexicon, audience_lexicon, options);
  result.comparison = compare_to_reference(result.by_condition, result.reference);

  auto with_reference = result.by_condition;
  with_reference["reference"] = result.reference;
  result.report_csv_path = out_dir / "morph_report.csv";
  write_text_file(result.report_csv_path, morph_report_csv(with_reference));
  result.comparison_csv_path = out_dir / "morph_comparison.csv";
  write_text_file(result.comparison_csv_path, result.comparison.to_csv());
  result.chart_data_path = out_dir / "morph_chart_data.json";
  write_text_file(result.chart_data_path, result.comparison.chart_data().dump(2) + "\n");

  // Chart groups: conditions in comparison order, then the reference.
  std::vector<std::string> groups;
  for (const auto& row : result.comparison.rows)
    if (groups.empty() || groups.back() != row.condition) groups.push_back(row.condition);
  groups.push_back("reference");

  auto collect = [&](auto&& getter) {
    std::vector<std::optional<double>> values;
    for (const auto& g : groups) {
      const MorphReport& r = g == "reference" ? result.reference : result.by_condition.at(g);
      values.push_back(getter(r));
    }
    return values;
  };

  GroupedBarChart speaker_chart;
  speaker_chart.title = "Gender of predicates governed by first-person subjects";
  speaker_chart.y_label = "proportion";
  speaker_chart.groups = groups;
  speaker_chart.series = {
      {"masculine", collect([](const MorphReport& r) {
         return r.speaker.proportion_incl_both(GenderLabel::Masculine);
       })},
      {"feminine", collect([](const MorphReport& r) {
         return r.speaker.proportion_incl_both(GenderLabel::Feminine);
       })},
      {"both", collect([](const MorphReport& r) {
         return r.speaker.proportion_incl_both(GenderLabel::Both);
       })}};
  result.speaker_svg_path = out_dir / "speaker_gender.svg";
  write_text_file(result.speaker_svg_path, render_grouped_bar_svg(speaker_chart));

  GroupedBarChart audience_chart;
  audience_chart.title = "Number of second-person pronouns";
  audience_chart.y_label = "proportion";
  audience_chart.groups = groups;
  audience_chart.series = {
      {"singular",
       collect([](const MorphReport& r) { return r.audience.proportion_singular(); })},
      {"plural", collect([](const MorphReport& r) { return r.audience.proportion_plural(); })}};
  result.audience_svg_path = out_dir / "audience_number.svg";
  write_text_file(result.audience_svg_path, render_grouped_bar_svg(audience_chart));

  return result;
}

}  // namespace mthint
