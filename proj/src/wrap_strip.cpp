#include "mthint/wrap_strip.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace mthint {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return is_space(c); });
}

std::string_view skip_leading_space(std::string_view s) {
  size_t i = 0;
  while (i < s.size() && is_space(s[i])) ++i;
  return s.substr(i);
}

// Byte offsets [begin, end) of whitespace-separated tokens.
std::vector<std::pair<size_t, size_t>> token_spans(std::string_view s) {
  std::vector<std::pair<size_t, size_t>> spans;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    if (i >= s.size()) break;
    size_t begin = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    spans.emplace_back(begin, i);
  }
  return spans;
}

size_t utf8_cp_len(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 1;  // tolerate malformed input
}

std::vector<std::pair<std::string, std::string>> decode_quote_pairs(std::string_view pairs) {
  std::vector<std::string> cps;
  size_t i = 0;
  while (i < pairs.size()) {
    size_t n = std::min(utf8_cp_len(static_cast<unsigned char>(pairs[i])), pairs.size() - i);
    cps.emplace_back(pairs.substr(i, n));
    i += n;
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (size_t k = 0; k + 1 < cps.size(); k += 2) out.emplace_back(cps[k], cps[k + 1]);
  return out;
}

// A quote hugging the removed delimiter is target-side decoration of the
// parataxis clause, not payload; drop it (and its mate at the end, if any).
std::string trim_adjacent_quotes(std::string_view rest, const StripRuleSet& rules) {
  if (rules.trim_quotes) {
    for (const auto& [open, close] : decode_quote_pairs(rules.quote_pairs)) {
      if (rest.size() > open.size() && rest.substr(0, open.size()) == open) {
        rest = skip_leading_space(rest.substr(open.size()));
        if (rest.size() > close.size() && rest.substr(rest.size() - close.size()) == close)
          rest = rest.substr(0, rest.size() - close.size());
        break;
      }
    }
  }
  return std::string(rest);
}

}  // namespace

std::string to_string(StripMethod m) {
  switch (m) {
    case StripMethod::ExactPattern: return "exact_pattern";
    case StripMethod::DelimiterHeuristic: return "delimiter_heuristic";
    case StripMethod::Unstripped: return "unstripped";
  }
  return "unstripped";
}

StripMethod strip_method_from_string(std::string_view s) {
  if (s == "exact_pattern") return StripMethod::ExactPattern;
  if (s == "delimiter_heuristic") return StripMethod::DelimiterHeuristic;
  if (s == "unstripped") return StripMethod::Unstripped;
  throw Error("unknown strip method '" + std::string(s) + "'");
}

void StripRuleSet::validate() const {
  if (delimiter.empty()) throw ConfigError("strip rules: delimiter is empty");
  if (max_prefix_tokens < 1) throw ConfigError("strip rules: max_prefix_tokens must be >= 1");
  for (const auto& p : exact_patterns)
    if (is_blank(p)) throw ConfigError("strip rules: blank exact pattern");
}

StripRuleSet StripRuleSet::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open strip rule file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad strip rule file " + path.string() + ": " + e.what());
  }
  StripRuleSet r;
  r.target_language = j.value("target_language", "");
  r.delimiter = j.value("delimiter", ":");
  r.max_prefix_tokens = j.value("max_prefix_tokens", 6);
  r.trim_quotes = j.value("trim_quotes", true);
  if (j.contains("quote_pairs")) r.quote_pairs = j["quote_pairs"].get<std::string>();
  for (const auto& p : j.value("exact_patterns", nlohmann::json::array()))
    r.exact_patterns.push_back(p.get<std::string>());
  r.validate();
  return r;
}

WrappedSentence wrap(std::string_view sentence, std::string_view prefix,
                     std::string_view separator) {
  if (is_blank(sentence)) throw EmptySentence("refusing to wrap a blank sentence");
  WrappedSentence w;
  w.original = std::string(sentence);
  w.prefix = std::string(prefix);
  if (prefix.empty()) {
    w.wrapped = w.original;
  } else {
    w.wrapped.reserve(prefix.size() + separator.size() + sentence.size());
    w.wrapped.append(prefix).append(separator).append(sentence);
  }
  return w;
}

StripOutcome strip(std::string_view raw_translation, const StripRuleSet& rules) {
  // Exact patterns first, longest first: an exact match cannot over-strip.
  std::vector<const std::string*> ordered;
  ordered.reserve(rules.exact_patterns.size());
  for (const auto& p : rules.exact_patterns) ordered.push_back(&p);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const std::string* a, const std::string* b) { return a->size() > b->size(); });

  for (const std::string* pat : ordered) {
    if (pat->empty() || raw_translation.size() <= pat->size()) continue;
    if (raw_translation.substr(0, pat->size()) != *pat) continue;
    std::string_view rest = skip_leading_space(raw_translation.substr(pat->size()));
    if (rest.empty()) continue;  // never strip the whole sentence away
    return {trim_adjacent_quotes(rest, rules), StripMethod::ExactPattern, *pat};
  }

  // Delimiter heuristic, capped so sentence-internal delimiters survive.
  size_t pos = raw_translation.find(rules.delimiter);
  if (pos != std::string_view::npos) {
    auto spans = token_spans(raw_translation);
    size_t limit = std::min<size_t>(spans.size(), static_cast<size_t>(rules.max_prefix_tokens));
    for (size_t t = 0; t < limit; ++t) {
      if (pos >= spans[t].first && pos < spans[t].second) {
        std::string_view rest =
            skip_leading_space(raw_translation.substr(pos + rules.delimiter.size()));
        if (rest.empty()) break;
        return {trim_adjacent_quotes(rest, rules), StripMethod::DelimiterHeuristic, std::nullopt};
      }
    }
  }

  return {std::string(raw_translation), StripMethod::Unstripped, std::nullopt};
}

double strip_rate(const std::vector<StripOutcome>& outcomes) {
  if (outcomes.empty()) throw EmptyInput("strip_rate over an empty outcome list");
  long long stripped = std::count_if(outcomes.begin(), outcomes.end(), [](const StripOutcome& o) {
    return o.method != StripMethod::Unstripped;
  });
  long double frac = static_cast<long double>(stripped) / outcomes.size();
  return static_cast<double>(std::llroundl(frac * 10000.0L)) / 10000.0;
}

}  // namespace mthint
