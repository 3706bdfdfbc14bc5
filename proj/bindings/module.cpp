// Python bindings for the core operations: condition grid, wrap/strip,
// corpus BLEU, CoNLL-U morphology statistics, probe detection.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mthint/bleu.hpp"
#include "mthint/conllu.hpp"
#include "mthint/grid.hpp"
#include "mthint/morph.hpp"
#include "mthint/probe.hpp"
#include "mthint/wrap_strip.hpp"

namespace py = pybind11;
using namespace mthint;

PYBIND11_MODULE(_core, m) {
  m.doc() = "black-box MT morphology control: prefix injection, stripping, BLEU, audits";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "MthintError");

  // --- condition grid ---
  py::enum_<Gender>(m, "Gender")
      .value("Masculine", Gender::Masculine)
      .value("Feminine", Gender::Feminine)
      .value("Unspecified", Gender::Unspecified);
  py::enum_<Number>(m, "Number")
      .value("Singular", Number::Singular)
      .value("Plural", Number::Plural)
      .value("Unspecified", Number::Unspecified);

  py::class_<HintCondition>(m, "HintCondition")
      .def(py::init<>())
      .def_readwrite("speaker", &HintCondition::speaker)
      .def_readwrite("audience_gender", &HintCondition::audience_gender)
      .def_readwrite("audience_number", &HintCondition::audience_number)
      .def_readwrite("label", &HintCondition::label)
      .def("is_baseline", &HintCondition::is_baseline)
      .def("__eq__", [](const HintCondition& a, const HintCondition& b) { return a == b; })
      .def("__repr__",
           [](const HintCondition& c) { return "<HintCondition '" + c.label + "'>"; });

  py::class_<PrefixTemplateSet>(m, "PrefixTemplateSet")
      .def(py::init<>())
      .def_readwrite("source_language", &PrefixTemplateSet::source_language)
      .def_readwrite("entries", &PrefixTemplateSet::entries)
      .def_readwrite("separator", &PrefixTemplateSet::separator)
      .def_static("english_defaults", &PrefixTemplateSet::english_defaults,
                  py::arg("full_grid") = false)
      .def_static("from_json_file", &PrefixTemplateSet::from_json_file)
      .def("validate", &PrefixTemplateSet::validate);

  m.def("render_prefix", &render_prefix, py::arg("condition"), py::arg("templates"));
  m.def("enumerate_grid", &enumerate_grid, py::arg("templates"));
  m.def("parse_condition_label", &parse_condition_label, py::arg("label"));

  // --- wrap / strip ---
  py::enum_<StripMethod>(m, "StripMethod")
      .value("ExactPattern", StripMethod::ExactPattern)
      .value("DelimiterHeuristic", StripMethod::DelimiterHeuristic)
      .value("Unstripped", StripMethod::Unstripped);

  py::class_<WrappedSentence>(m, "WrappedSentence")
      .def_readonly("original", &WrappedSentence::original)
      .def_readonly("prefix", &WrappedSentence::prefix)
      .def_readonly("wrapped", &WrappedSentence::wrapped);

  py::class_<StripOutcome>(m, "StripOutcome")
      .def_readonly("stripped", &StripOutcome::stripped)
      .def_readonly("method", &StripOutcome::method)
      .def_readonly("matched_pattern", &StripOutcome::matched_pattern);

  py::class_<StripRuleSet>(m, "StripRuleSet")
      .def(py::init<>())
      .def_readwrite("target_language", &StripRuleSet::target_language)
      .def_readwrite("exact_patterns", &StripRuleSet::exact_patterns)
      .def_readwrite("delimiter", &StripRuleSet::delimiter)
      .def_readwrite("max_prefix_tokens", &StripRuleSet::max_prefix_tokens)
      .def_readwrite("trim_quotes", &StripRuleSet::trim_quotes)
      .def_static("from_json_file", &StripRuleSet::from_json_file);

  m.def("wrap", &wrap, py::arg("sentence"), py::arg("prefix"), py::arg("separator") = " ");
  m.def("strip", &strip, py::arg("raw_translation"), py::arg("rules"));
  m.def("strip_rate", &strip_rate, py::arg("outcomes"));

  // --- BLEU ---
  py::class_<BleuScore>(m, "BleuScore")
      .def_readonly("bleu", &BleuScore::bleu)
      .def_readonly("precisions", &BleuScore::precisions)
      .def_readonly("brevity_penalty", &BleuScore::brevity_penalty)
      .def_readonly("hyp_len", &BleuScore::hyp_len)
      .def_readonly("ref_len", &BleuScore::ref_len)
      .def_readonly("length_ratio", &BleuScore::length_ratio)
      .def("__repr__", [](const BleuScore& s) {
        return "<BleuScore " + std::to_string(s.bleu) + ">";
      });

  m.def("corpus_bleu", &corpus_bleu, py::arg("hypotheses"), py::arg("references"),
        py::arg("lowercase") = false);

  // --- CoNLL-U and morphology ---
  py::class_<Token>(m, "Token")
      .def_readonly("id", &Token::id)
      .def_readonly("form", &Token::form)
      .def_readonly("lemma", &Token::lemma)
      .def_readonly("upos", &Token::upos)
      .def_readonly("feats", &Token::feats)
      .def_readonly("head", &Token::head)
      .def_readonly("deprel", &Token::deprel);

  py::class_<ParsedSentence>(m, "ParsedSentence")
      .def_readonly("sentence_id", &ParsedSentence::sentence_id)
      .def_readonly("tokens", &ParsedSentence::tokens)
      .def_readonly("comments", &ParsedSentence::comments);

  m.def("parse_conllu", [](const std::string& text) { return parse_conllu(text); },
        py::arg("document"));
  m.def("parse_conllu_file", &parse_conllu_file, py::arg("path"));

  py::class_<LexiconEntry>(m, "LexiconEntry")
      .def(py::init<>())
      .def_readwrite("form", &LexiconEntry::form)
      .def_readwrite("lemma", &LexiconEntry::lemma)
      .def_readwrite("person", &LexiconEntry::person)
      .def_readwrite("number", &LexiconEntry::number)
      .def_readwrite("gender", &LexiconEntry::gender);

  py::class_<PronounLexicon>(m, "PronounLexicon")
      .def(py::init<>())
      .def_readwrite("entries", &PronounLexicon::entries)
      .def_static("from_tsv_file", &PronounLexicon::from_tsv_file);

  py::class_<SpeakerStats>(m, "SpeakerStats")
      .def_readonly("masculine", &SpeakerStats::masculine)
      .def_readonly("feminine", &SpeakerStats::feminine)
      .def_readonly("both", &SpeakerStats::both)
      .def_readonly("unmarked", &SpeakerStats::unmarked)
      .def("matched", &SpeakerStats::matched);

  py::class_<AudienceStats>(m, "AudienceStats")
      .def_readonly("number_singular", &AudienceStats::number_singular)
      .def_readonly("number_plural", &AudienceStats::number_plural)
      .def_readonly("number_unmarked", &AudienceStats::number_unmarked)
      .def_readonly("gender_masculine", &AudienceStats::gender_masculine)
      .def_readonly("gender_feminine", &AudienceStats::gender_feminine)
      .def_readonly("gender_both", &AudienceStats::gender_both)
      .def_readonly("gender_unmarked", &AudienceStats::gender_unmarked)
      .def_readonly("predicate_singular", &AudienceStats::predicate_singular)
      .def_readonly("predicate_plural", &AudienceStats::predicate_plural);

  m.def(
      "speaker_gender_stats",
      [](const std::vector<ParsedSentence>& sentences, const PronounLexicon& lex) {
        return speaker_gender_stats(sentences, lex);
      },
      py::arg("sentences"), py::arg("speaker_lexicon"));
  m.def(
      "audience_stats",
      [](const std::vector<ParsedSentence>& sentences, const PronounLexicon& lex) {
        return audience_stats(sentences, lex);
      },
      py::arg("sentences"), py::arg("audience_lexicon"));

  // --- probe detection ---
  py::enum_<ProbeDetection>(m, "ProbeDetection")
      .value("Masculine", ProbeDetection::Masculine)
      .value("Feminine", ProbeDetection::Feminine)
      .value("Neither", ProbeDetection::Neither);

  m.def("detect_form", &detect_form, py::arg("stripped_translation"),
        py::arg("masculine_form"), py::arg("feminine_form"));
}
