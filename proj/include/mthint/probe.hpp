#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mthint/backend.hpp"
#include "mthint/grid.hpp"
#include "mthint/wrap_strip.hpp"

namespace mthint {

// One gendered-form probe case: a source sentence whose translation must
// surface either the masculine or the feminine form of a known word pair.
struct ProbeCase {
  std::string target_language;
  std::string source;
  std::string masculine_form;
  std::string feminine_form;

  void validate() const;  // forms must differ
};

enum class ProbeDetection { Masculine, Feminine, Neither };
std::string to_string(ProbeDetection d);

struct ProbeCaseResult {
  ProbeCase probe;
  ProbeDetection under_he = ProbeDetection::Neither;
  ProbeDetection under_she = ProbeDetection::Neither;
  std::string he_translation;   // stripped
  std::string she_translation;  // stripped

  // A case works when the masculine prefix surfaces the masculine form and
  // the feminine prefix the feminine form.
  bool success() const {
    return under_he == ProbeDetection::Masculine && under_she == ProbeDetection::Feminine;
  }
};

struct ProbeResult {
  std::vector<ProbeCaseResult> cases;
  long long successes = 0;
  double summary_fraction = 0.0;

  std::string to_csv() const;  // language,source,he_detected,she_detected,success
};

// A form is present when its tokens occur as a contiguous token run in the
// translation (tokens compared after edge-punctuation trimming and ASCII
// case folding, so "Dala" matches "dala"). Masculine wins iff only the
// masculine form is present; both or neither present detect as Neither.
ProbeDetection detect_form(const std::string& stripped_translation,
                           const std::string& masculine_form, const std::string& feminine_form);

// TSV: language, source, masculine_form, feminine_form. '#' lines ignored.
std::vector<ProbeCase> load_probe_cases_tsv(const std::filesystem::path& path);

// Translates every case under the bare masculine- and feminine-speaker
// prefixes, strips, and applies the detection rule. The backend spec is
// re-targeted per case language ("{target}" in a table fixture path expands
// accordingly).
ProbeResult run_gender_probe(const std::vector<ProbeCase>& cases, const BackendSpec& backend,
                             const PrefixTemplateSet& templates, const StripRuleSet& rules);

}  // namespace mthint
