#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "mthint/conllu.hpp"
#include "mthint/grid.hpp"

namespace mthint {

enum class GenderLabel { Masculine, Feminine, Both, Unmarked };
std::string to_string(GenderLabel g);

// One pronoun per line: form, lemma, person, number, optional gender.
struct LexiconEntry {
  std::string form;
  std::string lemma;
  int person = 0;
  Number number = Number::Unspecified;
  std::optional<Gender> gender;
};

struct PronounLexicon {
  std::vector<LexiconEntry> entries;

  static PronounLexicon from_tsv_file(const std::filesystem::path& path);
  // A token matches when its form or lemma equals an entry's form or lemma.
  const LexiconEntry* match(const Token& token) const;
};

struct MorphOptions {
  std::set<std::string> subject_relations = {"nsubj", "nsubj:pass", "nsubj:cop"};
};

// Gender of predicates governing first-person-singular subject pronouns.
// Predicates without a Gender feature count as unmarked and stay out of the
// marked-proportion denominators.
struct SpeakerStats {
  long long masculine = 0;
  long long feminine = 0;
  long long both = 0;
  long long unmarked = 0;

  long long matched() const { return masculine + feminine + both + unmarked; }
  long long marked() const { return masculine + feminine + both; }
  // Denominator includes the ambiguous "both" readings.
  std::optional<double> proportion_incl_both(GenderLabel g) const;
  // Denominator is masculine + feminine only.
  std::optional<double> proportion_excl_both(GenderLabel g) const;
};

// Number of second-person pronouns, plus gender/number of the predicates
// governing the ones in subject position.
struct AudienceStats {
  long long number_singular = 0;
  long long number_plural = 0;
  long long number_unmarked = 0;
  // Combined gender tallies over the pronouns themselves and, for subject
  // position, their governing predicates.
  long long gender_masculine = 0;
  long long gender_feminine = 0;
  long long gender_both = 0;
  long long gender_unmarked = 0;
  long long predicate_singular = 0;
  long long predicate_plural = 0;
  long long predicate_number_unmarked = 0;

  long long matched() const { return number_singular + number_plural + number_unmarked; }
  std::optional<double> proportion_singular() const;
  std::optional<double> proportion_plural() const;
};

struct MorphReport {
  SpeakerStats speaker;
  AudienceStats audience;
  long long total_sentences = 0;

  nlohmann::json to_json() const;
};

SpeakerStats speaker_gender_stats(const std::vector<ParsedSentence>& sentences,
                                  const PronounLexicon& speaker_lexicon,
                                  const MorphOptions& options = {});
AudienceStats audience_stats(const std::vector<ParsedSentence>& sentences,
                             const PronounLexicon& audience_lexicon,
                             const MorphOptions& options = {});
MorphReport morph_report(const std::vector<ParsedSentence>& sentences,
                         const PronounLexicon& speaker_lexicon,
                         const PronounLexicon& audience_lexicon, const MorphOptions& options = {});

// condition,category,count,proportion,proportion_excl_both
std::string morph_report_csv(const std::map<std::string, MorphReport>& by_condition);

struct MorphComparisonRow {
  std::string condition;
  std::string category;
  std::optional<double> proportion;
  std::optional<double> reference_proportion;
  std::optional<double> abs_difference;
};

struct MorphComparison {
  std::vector<MorphComparisonRow> rows;

  std::string to_csv() const;
  nlohmann::json chart_data() const;
};

// Per-condition absolute difference of each proportion from the reference.
// Gender proportions use the denominator that includes "both". Throws
// MissingBaseline when no baseline condition is present.
MorphComparison compare_to_reference(const std::map<std::string, MorphReport>& by_condition,
                                     const MorphReport& reference);

}  // namespace mthint
