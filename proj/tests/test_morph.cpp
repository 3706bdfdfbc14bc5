#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "mthint/morph.hpp"

using namespace mthint;

namespace {

std::filesystem::path morph_data(const char* name) {
  return std::filesystem::path(MTHINT_TEST_DATA) / "morph" / name;
}

PronounLexicon speaker_lex() { return PronounLexicon::from_tsv_file(morph_data("speaker_lex.tsv")); }
PronounLexicon audience_lex() {
  return PronounLexicon::from_tsv_file(morph_data("audience_lex.tsv"));
}

}  // namespace

TEST_CASE("a first-person subject with a feminine head verb tallies one feminine") {
  std::string doc =
      "1\tani\tani\tPRON\t_\tNumber=Sing|Person=1\t2\tnsubj\t_\t_\n"
      "2\tohevet\tahav\tVERB\t_\tGender=Fem|Number=Sing\t0\troot\t_\t_\n";
  auto stats = speaker_gender_stats(parse_conllu(doc), speaker_lex());
  CHECK(stats.feminine == 1);
  CHECK(stats.masculine == 0);
  CHECK(stats.both == 0);
  CHECK(stats.matched() == 1);
}

TEST_CASE("a copular adjective carrying both genders tallies one 'both'") {
  std::string doc =
      "1\tani\tani\tPRON\t_\tNumber=Sing|Person=1\t3\tnsubj\t_\t_\n"
      "2\thayiti\thaya\tAUX\t_\t_\t3\tcop\t_\t_\n"
      "3\trotse\tratsa\tADJ\t_\tGender=Fem,Masc\t0\troot\t_\t_\n";
  auto stats = speaker_gender_stats(parse_conllu(doc), speaker_lex());
  CHECK(stats.both == 1);
  CHECK(stats.matched() == 1);
}

TEST_CASE("non-subject and non-lexicon pronouns contribute nothing") {
  std::string doc =
      "1\thu\thu\tPRON\t_\tPerson=3\t2\tnsubj\t_\t_\n"       // not first person
      "2\tohev\tahav\tVERB\t_\tGender=Masc\t0\troot\t_\t_\n"
      "3\tani\tani\tPRON\t_\tNumber=Sing|Person=1\t2\tobj\t_\t_\n";  // not a subject
  auto stats = speaker_gender_stats(parse_conllu(doc), speaker_lex());
  CHECK(stats.matched() == 0);
}

TEST_CASE("the hand-annotated 12-sentence fixture matches its hand counts exactly") {
  auto sentences = parse_conllu_file(morph_data("hand12.conllu"));
  REQUIRE(sentences.size() == 12);

  auto report = morph_report(sentences, speaker_lex(), audience_lex());
  CHECK(report.total_sentences == 12);

  // speaker: s01+s03 masculine, s02+s04+s12 feminine, s05 both, s06 unmarked
  CHECK(report.speaker.masculine == 2);
  CHECK(report.speaker.feminine == 3);
  CHECK(report.speaker.both == 1);
  CHECK(report.speaker.unmarked == 1);
  CHECK(report.speaker.matched() == 7);

  CHECK(*report.speaker.proportion_incl_both(GenderLabel::Masculine) ==
        doctest::Approx(2.0 / 6.0).epsilon(1e-12));
  CHECK(*report.speaker.proportion_incl_both(GenderLabel::Feminine) ==
        doctest::Approx(3.0 / 6.0).epsilon(1e-12));
  CHECK(*report.speaker.proportion_incl_both(GenderLabel::Both) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(*report.speaker.proportion_excl_both(GenderLabel::Masculine) ==
        doctest::Approx(2.0 / 5.0).epsilon(1e-12));
  CHECK(*report.speaker.proportion_excl_both(GenderLabel::Feminine) ==
        doctest::Approx(3.0 / 5.0).epsilon(1e-12));

  // the three proportions over the marked denominator sum to one
  double sum = *report.speaker.proportion_incl_both(GenderLabel::Masculine) +
               *report.speaker.proportion_incl_both(GenderLabel::Feminine) +
               *report.speaker.proportion_incl_both(GenderLabel::Both);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

  // audience: s07+s09+s11 singular, s08+s10+s12 plural
  CHECK(report.audience.number_singular == 3);
  CHECK(report.audience.number_plural == 3);
  CHECK(report.audience.number_unmarked == 0);
  CHECK(report.audience.matched() == 6);
  CHECK(*report.audience.proportion_singular() == doctest::Approx(0.5));

  // pronoun genders M,M,F,F,M,M plus subject-position predicates M,M,F,F
  CHECK(report.audience.gender_masculine == 6);
  CHECK(report.audience.gender_feminine == 4);
  CHECK(report.audience.gender_both == 0);
  CHECK(report.audience.gender_unmarked == 0);

  // predicate number for the four subject-position pronouns
  CHECK(report.audience.predicate_singular == 2);
  CHECK(report.audience.predicate_plural == 2);
  CHECK(report.audience.predicate_number_unmarked == 0);
}

TEST_CASE("a 3-singular 7-plural fixture yields 0.3/0.7") {
  std::string doc;
  for (int i = 0; i < 3; ++i)
    doc +=
        "1\tata\tata\tPRON\t_\tGender=Masc|Number=Sing|Person=2\t2\tnsubj\t_\t_\n"
        "2\tohev\tahav\tVERB\t_\tGender=Masc|Number=Sing\t0\troot\t_\t_\n\n";
  for (int i = 0; i < 7; ++i)
    doc +=
        "1\tatem\tatem\tPRON\t_\tGender=Masc|Number=Plur|Person=2\t2\tnsubj\t_\t_\n"
        "2\tohavim\tahav\tVERB\t_\tGender=Masc|Number=Plur\t0\troot\t_\t_\n\n";
  auto stats = audience_stats(parse_conllu(doc), audience_lex());
  CHECK(stats.number_singular == 3);
  CHECK(stats.number_plural == 7);
  CHECK(*stats.proportion_singular() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(*stats.proportion_plural() == doctest::Approx(0.7).epsilon(1e-12));
  // every matched pronoun lands in exactly one number bucket
  CHECK(stats.number_singular + stats.number_plural + stats.number_unmarked == 10);
}

TEST_CASE("a subject-position second-person pronoun tallies its predicate too") {
  std::string doc =
      "1\tatem\tatem\tPRON\t_\tGender=Masc|Number=Plur|Person=2\t2\tnsubj\t_\t_\n"
      "2\tohavim\tahav\tVERB\t_\tGender=Masc|Number=Plur\t0\troot\t_\t_\n";
  auto stats = audience_stats(parse_conllu(doc), audience_lex());
  CHECK(stats.number_plural == 1);
  CHECK(stats.gender_masculine == 2);  // pronoun + governing verb
  CHECK(stats.predicate_plural == 1);
  CHECK(stats.predicate_singular == 0);
}

TEST_CASE("a pronoun with no Number feature falls back to the lexicon's marked number") {
  std::string doc =
      "1\thu\thu\tPRON\t_\tPerson=3\t2\tnsubj\t_\t_\n"
      "2\tohev\tahav\tVERB\t_\tGender=Masc\t0\troot\t_\t_\n"
      "3\tetkhem\tatem\tPRON\t_\t_\t2\tobj\t_\t_\n";
  auto stats = audience_stats(parse_conllu(doc), audience_lex());
  CHECK(stats.number_plural == 1);
  CHECK(stats.gender_masculine == 1);  // lexicon-marked gender
}

TEST_CASE("sentence order does not change any tally") {
  auto sentences = parse_conllu_file(morph_data("hand12.conllu"));
  auto base = morph_report(sentences, speaker_lex(), audience_lex());
  std::mt19937 rng(13);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(sentences.begin(), sentences.end(), rng);
    auto shuffled = morph_report(sentences, speaker_lex(), audience_lex());
    CHECK(shuffled.speaker.masculine == base.speaker.masculine);
    CHECK(shuffled.speaker.feminine == base.speaker.feminine);
    CHECK(shuffled.speaker.both == base.speaker.both);
    CHECK(shuffled.audience.number_singular == base.audience.number_singular);
    CHECK(shuffled.audience.number_plural == base.audience.number_plural);
    CHECK(shuffled.audience.gender_masculine == base.audience.gender_masculine);
  }
}

TEST_CASE("no first-person pronouns means an undefined speaker proportion, not 0/0") {
  std::string doc =
      "1\thu\thu\tPRON\t_\tPerson=3\t2\tnsubj\t_\t_\n"
      "2\tohev\tahav\tVERB\t_\tGender=Masc\t0\troot\t_\t_\n";
  auto stats = speaker_gender_stats(parse_conllu(doc), speaker_lex());
  CHECK(stats.matched() == 0);
  CHECK(!stats.proportion_incl_both(GenderLabel::Feminine).has_value());
  CHECK(!stats.proportion_excl_both(GenderLabel::Feminine).has_value());
}

TEST_CASE("comparing a report set against itself yields all-zero differences") {
  auto sentences = parse_conllu_file(morph_data("hand12.conllu"));
  auto report = morph_report(sentences, speaker_lex(), audience_lex());
  auto cmp = compare_to_reference({{"baseline", report}}, report);
  REQUIRE(!cmp.rows.empty());
  for (const auto& row : cmp.rows) {
    if (row.abs_difference) CHECK(*row.abs_difference == doctest::Approx(0.0));
    if (row.proportion && row.reference_proportion) REQUIRE(row.abs_difference.has_value());
  }
}

TEST_CASE("comparison without a baseline condition is rejected") {
  auto sentences = parse_conllu_file(morph_data("hand12.conllu"));
  auto report = morph_report(sentences, speaker_lex(), audience_lex());
  CHECK_THROWS_AS(compare_to_reference({{"she", report}}, report), MissingBaseline);
}

TEST_CASE("report CSV carries both proportion normalizations") {
  auto sentences = parse_conllu_file(morph_data("hand12.conllu"));
  auto report = morph_report(sentences, speaker_lex(), audience_lex());
  auto csv = morph_report_csv({{"baseline", report}});
  CHECK(csv.rfind("condition,category,count,proportion,proportion_excl_both\n", 0) == 0);
  CHECK(csv.find("baseline,speaker_feminine,3,0.500000,0.600000") != std::string::npos);
  CHECK(csv.find("baseline,speaker_both,1,0.166667,") != std::string::npos);
  CHECK(csv.find("baseline,audience_plural,3,0.500000,") != std::string::npos);
}
