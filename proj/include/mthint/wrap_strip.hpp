#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mthint/errors.hpp"

namespace mthint {

struct WrappedSentence {
  std::string original;
  std::string prefix;
  std::string wrapped;  // == original when prefix is empty
};

enum class StripMethod { ExactPattern, DelimiterHeuristic, Unstripped };

std::string to_string(StripMethod m);
StripMethod strip_method_from_string(std::string_view s);

struct StripOutcome {
  std::string stripped;
  StripMethod method = StripMethod::Unstripped;
  std::optional<std::string> matched_pattern;  // set iff method == ExactPattern
};

// Target-side rules for removing the translated prefix.
struct StripRuleSet {
  std::string target_language;
  std::vector<std::string> exact_patterns;  // tried longest first
  std::string delimiter = ":";
  int max_prefix_tokens = 6;  // heuristic scope, in whitespace tokens
  bool trim_quotes = true;    // drop a quote that hugs the removed delimiter
  std::string quote_pairs = "\"\"''«»“”‘’";  // open/close, concatenated UTF-8 pairs

  static StripRuleSet from_json_file(const std::filesystem::path& path);
  void validate() const;
};

// Prepends the prefix (plus separator) to the sentence. The original text is
// preserved byte for byte; an empty prefix is the identity. Throws
// EmptySentence when the sentence is blank.
WrappedSentence wrap(std::string_view sentence, std::string_view prefix,
                     std::string_view separator = " ");

// Removes the translated prefix from a raw translation. Exact target-side
// patterns are tried longest first; failing those, everything up to a
// delimiter found within the first max_prefix_tokens tokens is dropped.
// Failure is never an exception: the outcome comes back Unstripped.
StripOutcome strip(std::string_view raw_translation, const StripRuleSet& rules);

// Fraction of outcomes whose prefix was removed, rounded to 4 decimals.
double strip_rate(const std::vector<StripOutcome>& outcomes);

}  // namespace mthint
