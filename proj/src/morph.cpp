#include "mthint/morph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mthint {

namespace {

std::vector<std::string> split_tsv(const std::string& line) {
  std::vector<std::string> cols;
  size_t start = 0;
  for (;;) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

Number number_from_string(const std::string& s) {
  if (s == "Sing" || s == "sing" || s == "singular") return Number::Singular;
  if (s == "Plur" || s == "plur" || s == "plural") return Number::Plural;
  if (s.empty() || s == "_" || s == "-") return Number::Unspecified;
  throw ConfigError("lexicon: bad number value '" + s + "'");
}

std::optional<Gender> gender_from_string(const std::string& s) {
  if (s == "Masc" || s == "masc" || s == "masculine") return Gender::Masculine;
  if (s == "Fem" || s == "fem" || s == "feminine") return Gender::Feminine;
  if (s.empty() || s == "_" || s == "-") return std::nullopt;
  throw ConfigError("lexicon: bad gender value '" + s + "'");
}

// Gender label of a token's own Gender feature.
GenderLabel gender_label_of(const Token& token) {
  const auto* values = token.feat("Gender");
  if (!values || values->empty()) return GenderLabel::Unmarked;
  bool masc = values->count("Masc") > 0;
  bool fem = values->count("Fem") > 0;
  if (masc && fem) return GenderLabel::Both;
  if (masc) return GenderLabel::Masculine;
  if (fem) return GenderLabel::Feminine;
  return GenderLabel::Unmarked;
}

void add_gender(AudienceStats& stats, GenderLabel g) {
  switch (g) {
    case GenderLabel::Masculine: ++stats.gender_masculine; break;
    case GenderLabel::Feminine: ++stats.gender_feminine; break;
    case GenderLabel::Both: ++stats.gender_both; break;
    case GenderLabel::Unmarked: ++stats.gender_unmarked; break;
  }
}

std::optional<double> ratio(long long num, long long den) {
  if (den <= 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(6);
  ss << *v;
  return ss.str();
}

}  // namespace

std::string to_string(GenderLabel g) {
  switch (g) {
    case GenderLabel::Masculine: return "masculine";
    case GenderLabel::Feminine: return "feminine";
    case GenderLabel::Both: return "both";
    case GenderLabel::Unmarked: return "unmarked";
  }
  return "unmarked";
}

PronounLexicon PronounLexicon::from_tsv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open lexicon file " + path.string());
  PronounLexicon lex;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tsv(line);
    if (cols.size() < 4)
      throw ConfigError("lexicon " + path.string() + " line " + std::to_string(lineno) +
                        ": expected form<TAB>lemma<TAB>person<TAB>number[<TAB>gender]");
    LexiconEntry e;
    e.form = cols[0];
    e.lemma = cols[1];
    try {
      e.person = std::stoi(cols[2]);
    } catch (...) {
      throw ConfigError("lexicon " + path.string() + " line " + std::to_string(lineno) +
                        ": bad person '" + cols[2] + "'");
    }
    e.number = number_from_string(cols[3]);
    if (cols.size() >= 5) e.gender = gender_from_string(cols[4]);
    lex.entries.push_back(std::move(e));
  }
  return lex;
}

const LexiconEntry* PronounLexicon::match(const Token& token) const {
  for (const auto& e : entries) {
    if ((!e.form.empty() && token.form == e.form) ||
        (!e.lemma.empty() && token.lemma == e.lemma))
      return &e;
  }
  return nullptr;
}

std::optional<double> SpeakerStats::proportion_incl_both(GenderLabel g) const {
  long long num = g == GenderLabel::Masculine ? masculine
                  : g == GenderLabel::Feminine ? feminine
                  : g == GenderLabel::Both     ? both
                                               : 0;
  return ratio(num, marked());
}

std::optional<double> SpeakerStats::proportion_excl_both(GenderLabel g) const {
  if (g == GenderLabel::Both || g == GenderLabel::Unmarked) return std::nullopt;
  long long num = g == GenderLabel::Masculine ? masculine : feminine;
  return ratio(num, masculine + feminine);
}

std::optional<double> AudienceStats::proportion_singular() const {
  return ratio(number_singular, number_singular + number_plural);
}

std::optional<double> AudienceStats::proportion_plural() const {
  return ratio(number_plural, number_singular + number_plural);
}

SpeakerStats speaker_gender_stats(const std::vector<ParsedSentence>& sentences,
                                  const PronounLexicon& speaker_lexicon,
                                  const MorphOptions& options) {
  SpeakerStats stats;
  for (const auto& sentence : sentences) {
    for (const auto& token : sentence.tokens) {
      if (!speaker_lexicon.match(token)) continue;
      if (options.subject_relations.count(token.deprel) == 0) continue;
      const Token* predicate = sentence.find(token.head);
      if (!predicate) continue;  // subject of the root slot; nothing governs it
      // For copular constructions the pronoun's head already is the
      // adjective/noun predicate, so its own features are the right ones.
      switch (gender_label_of(*predicate)) {
        case GenderLabel::Masculine: ++stats.masculine; break;
        case GenderLabel::Feminine: ++stats.feminine; break;
        case GenderLabel::Both: ++stats.both; break;
        case GenderLabel::Unmarked: ++stats.unmarked; break;
      }
    }
  }
  return stats;
}

AudienceStats audience_stats(const std::vector<ParsedSentence>& sentences,
                             const PronounLexicon& audience_lexicon,
                             const MorphOptions& options) {
  AudienceStats stats;
  for (const auto& sentence : sentences) {
    for (const auto& token : sentence.tokens) {
      const LexiconEntry* entry = audience_lexicon.match(token);
      if (!entry) continue;

      // Number: the token's own feature, else the form's marked number.
      const auto* numbers = token.feat("Number");
      if (numbers && numbers->count("Sing") && !numbers->count("Plur")) {
        ++stats.number_singular;
      } else if (numbers && numbers->count("Plur") && !numbers->count("Sing")) {
        ++stats.number_plural;
      } else if (!numbers && entry->number == Number::Singular) {
        ++stats.number_singular;
      } else if (!numbers && entry->number == Number::Plural) {
        ++stats.number_plural;
      } else {
        ++stats.number_unmarked;
      }

      // Gender of the pronoun itself: feature, else the form's marked gender.
      GenderLabel own = gender_label_of(token);
      if (own == GenderLabel::Unmarked && entry->gender) {
        own = *entry->gender == Gender::Masculine ? GenderLabel::Masculine
                                                  : GenderLabel::Feminine;
      }
      add_gender(stats, own);

      // Subject position: the governing predicate's gender and number too.
      if (options.subject_relations.count(token.deprel) == 0) continue;
      const Token* predicate = sentence.find(token.head);
      if (!predicate) continue;
      add_gender(stats, gender_label_of(*predicate));
      const auto* pred_numbers = predicate->feat("Number");
      if (pred_numbers && pred_numbers->count("Sing") && !pred_numbers->count("Plur"))
        ++stats.predicate_singular;
      else if (pred_numbers && pred_numbers->count("Plur") && !pred_numbers->count("Sing"))
        ++stats.predicate_plural;
      else
        ++stats.predicate_number_unmarked;
    }
  }
  return stats;
}

MorphReport morph_report(const std::vector<ParsedSentence>& sentences,
                         const PronounLexicon& speaker_lexicon,
                         const PronounLexicon& audience_lexicon, const MorphOptions& options) {
  MorphReport report;
  report.speaker = speaker_gender_stats(sentences, speaker_lexicon, options);
  report.audience = audience_stats(sentences, audience_lexicon, options);
  report.total_sentences = static_cast<long long>(sentences.size());
  return report;
}

nlohmann::json MorphReport::to_json() const {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  return nlohmann::json{
      {"total_sentences", total_sentences},
      {"speaker",
       {{"masculine", speaker.masculine},
        {"feminine", speaker.feminine},
        {"both", speaker.both},
        {"unmarked", speaker.unmarked},
        {"proportion_masculine", opt(speaker.proportion_incl_both(GenderLabel::Masculine))},
        {"proportion_feminine", opt(speaker.proportion_incl_both(GenderLabel::Feminine))},
        {"proportion_both", opt(speaker.proportion_incl_both(GenderLabel::Both))}}},
      {"audience",
       {{"singular", audience.number_singular},
        {"plural", audience.number_plural},
        {"number_unmarked", audience.number_unmarked},
        {"proportion_singular", opt(audience.proportion_singular())},
        {"proportion_plural", opt(audience.proportion_plural())},
        {"gender_masculine", audience.gender_masculine},
        {"gender_feminine", audience.gender_feminine},
        {"gender_both", audience.gender_both},
        {"gender_unmarked", audience.gender_unmarked},
        {"predicate_singular", audience.predicate_singular},
        {"predicate_plural", audience.predicate_plural},
        {"predicate_number_unmarked", audience.predicate_number_unmarked}}}};
}

namespace {

struct CategoryValue {
  std::string category;
  long long count;
  std::optional<double> proportion;            // primary (gender: incl. both)
  std::optional<double> proportion_excl_both;  // gender rows only
};

std::vector<CategoryValue> report_categories(const MorphReport& r) {
  long long gender_total = r.audience.gender_masculine + r.audience.gender_feminine +
                           r.audience.gender_both + r.audience.gender_unmarked;
  auto gratio = [&](long long n) { return ratio(n, gender_total); };
  return {
      {"speaker_masculine", r.speaker.masculine,
       r.speaker.proportion_incl_both(GenderLabel::Masculine),
       r.speaker.proportion_excl_both(GenderLabel::Masculine)},
      {"speaker_feminine", r.speaker.feminine,
       r.speaker.proportion_incl_both(GenderLabel::Feminine),
       r.speaker.proportion_excl_both(GenderLabel::Feminine)},
      {"speaker_both", r.speaker.both, r.speaker.proportion_incl_both(GenderLabel::Both),
       std::nullopt},
      {"speaker_unmarked", r.speaker.unmarked, std::nullopt, std::nullopt},
      {"audience_singular", r.audience.number_singular, r.audience.proportion_singular(),
       std::nullopt},
      {"audience_plural", r.audience.number_plural, r.audience.proportion_plural(), std::nullopt},
      {"audience_number_unmarked", r.audience.number_unmarked, std::nullopt, std::nullopt},
      {"audience_gender_masculine", r.audience.gender_masculine,
       gratio(r.audience.gender_masculine), std::nullopt},
      {"audience_gender_feminine", r.audience.gender_feminine,
       gratio(r.audience.gender_feminine), std::nullopt},
      {"audience_gender_both", r.audience.gender_both, gratio(r.audience.gender_both),
       std::nullopt},
      {"audience_gender_unmarked", r.audience.gender_unmarked,
       gratio(r.audience.gender_unmarked), std::nullopt},
  };
}

// Conditions in grid order when the labels parse; otherwise appended sorted.
std::vector<std::string> ordered_condition_labels(
    const std::map<std::string, MorphReport>& by_condition, const std::string& extra = "") {
  PrefixTemplateSet ordering_only;
  std::vector<std::string> out, leftovers;
  for (const auto& [label, report] : by_condition) {
    (void)report;
    try {
      parse_condition_label(label);
      ordering_only.entries[label] = "";
    } catch (const MalformedLabel&) {
      leftovers.push_back(label);
    }
  }
  for (const auto& c : enumerate_grid(ordering_only)) out.push_back(c.label);
  std::sort(leftovers.begin(), leftovers.end());
  out.insert(out.end(), leftovers.begin(), leftovers.end());
  if (!extra.empty()) out.push_back(extra);
  return out;
}

}  // namespace

std::string morph_report_csv(const std::map<std::string, MorphReport>& by_condition) {
  std::ostringstream out;
  out << "condition,category,count,proportion,proportion_excl_both\n";
  for (const auto& label : ordered_condition_labels(by_condition)) {
    const MorphReport& r = by_condition.at(label);
    for (const auto& row : report_categories(r)) {
      out << label << ',' << row.category << ',' << row.count << ',' << cell(row.proportion)
          << ',' << cell(row.proportion_excl_both) << '\n';
    }
  }
  return out.str();
}

std::string MorphComparison::to_csv() const {
  std::ostringstream out;
  out << "condition,category,proportion,reference_proportion,abs_difference\n";
  for (const auto& row : rows) {
    out << row.condition << ',' << row.category << ',' << cell(row.proportion) << ','
        << cell(row.reference_proportion) << ',' << cell(row.abs_difference) << '\n';
  }
  return out.str();
}

nlohmann::json MorphComparison::chart_data() const {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    rows_json.push_back({{"condition", row.condition},
                         {"category", row.category},
                         {"proportion", opt(row.proportion)},
                         {"reference_proportion", opt(row.reference_proportion)},
                         {"abs_difference", opt(row.abs_difference)}});
  }
  return nlohmann::json{{"rows", rows_json}};
}

MorphComparison compare_to_reference(const std::map<std::string, MorphReport>& by_condition,
                                     const MorphReport& reference) {
  if (by_condition.find("baseline") == by_condition.end())
    throw MissingBaseline("morph comparison requires a baseline condition");

  auto ref_categories = report_categories(reference);
  MorphComparison cmp;
  for (const auto& label : ordered_condition_labels(by_condition)) {
    const auto categories = report_categories(by_condition.at(label));
    for (size_t i = 0; i < categories.size(); ++i) {
      MorphComparisonRow row;
      row.condition = label;
      row.category = categories[i].category;
      row.proportion = categories[i].proportion;
      row.reference_proportion = ref_categories[i].proportion;
      if (row.proportion && row.reference_proportion)
        row.abs_difference = std::abs(*row.proportion - *row.reference_proportion);
      cmp.rows.push_back(std::move(row));
    }
  }
  return cmp;
}

}  // namespace mthint
