#include "mthint/probe.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mthint {

namespace {

const char* kEdgePunct[] = {".", ",", ";", ":", "!", "?", "\"", "'", "(", ")", "[", "]",
                            "{", "}", "«", "»", "“", "”", "‘", "’", "…"};

bool strip_edge(std::string& tok, bool leading) {
  for (const char* p : kEdgePunct) {
    size_t n = std::char_traits<char>::length(p);
    if (tok.size() < n) continue;
    if (leading ? tok.compare(0, n, p) == 0 : tok.compare(tok.size() - n, n, p) == 0) {
      if (leading)
        tok.erase(0, n);
      else
        tok.erase(tok.size() - n);
      return true;
    }
  }
  return false;
}

std::vector<std::string> normalized_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    while (strip_edge(tok, true)) {
    }
    while (strip_edge(tok, false)) {
    }
    for (char& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

bool contains_run(const std::vector<std::string>& haystack,
                  const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

}  // namespace

void ProbeCase::validate() const {
  if (masculine_form == feminine_form)
    throw ConfigError("probe case '" + source + "': masculine and feminine forms are identical");
  if (source.empty() || masculine_form.empty() || feminine_form.empty())
    throw ConfigError("probe case with empty field (source '" + source + "')");
}

std::string to_string(ProbeDetection d) {
  switch (d) {
    case ProbeDetection::Masculine: return "masculine";
    case ProbeDetection::Feminine: return "feminine";
    case ProbeDetection::Neither: return "neither";
  }
  return "neither";
}

ProbeDetection detect_form(const std::string& stripped_translation,
                           const std::string& masculine_form, const std::string& feminine_form) {
  auto tokens = normalized_tokens(stripped_translation);
  bool masc = contains_run(tokens, normalized_tokens(masculine_form));
  bool fem = contains_run(tokens, normalized_tokens(feminine_form));
  if (masc && !fem) return ProbeDetection::Masculine;
  if (fem && !masc) return ProbeDetection::Feminine;
  return ProbeDetection::Neither;
}

std::vector<ProbeCase> load_probe_cases_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open probe cases file " + path.string());
  std::vector<ProbeCase> cases;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
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
    if (cols.size() != 4)
      throw ConfigError("probe cases " + path.string() + " line " + std::to_string(lineno) +
                        ": expected language<TAB>source<TAB>masculine<TAB>feminine");
    ProbeCase c{cols[0], cols[1], cols[2], cols[3]};
    c.validate();
    cases.push_back(std::move(c));
  }
  if (cases.empty()) throw EmptyInput("probe cases file " + path.string() + " is empty");
  return cases;
}

std::string ProbeResult::to_csv() const {
  std::ostringstream out;
  out << "language,source,he_detected,she_detected,success\n";
  for (const auto& r : cases) {
    out << r.probe.target_language << ',' << r.probe.source << ',' << to_string(r.under_he)
        << ',' << to_string(r.under_she) << ',' << (r.success() ? "1" : "0") << '\n';
  }
  return out.str();
}

ProbeResult run_gender_probe(const std::vector<ProbeCase>& cases, const BackendSpec& backend,
                             const PrefixTemplateSet& templates, const StripRuleSet& rules) {
  if (cases.empty()) throw EmptyInput("gender probe over an empty case list");
  const std::string he_prefix = render_prefix(parse_condition_label("he"), templates);
  const std::string she_prefix = render_prefix(parse_condition_label("she"), templates);

  ProbeResult result;
  for (const auto& probe : cases) {
    probe.validate();
    BackendSpec per_case = backend;
    per_case.target_lang = probe.target_language;
    auto instance = make_backend(per_case);

    auto translate_under = [&](const std::string& prefix) {
      WrappedSentence w = wrap(probe.source, prefix, templates.separator);
      std::string raw;
      try {
        raw = translate_one(w.wrapped, *instance);
      } catch (const BackendError& e) {
        throw BackendError("probe case '" + probe.target_language + "': " + e.what());
      }
      return strip(raw, rules).stripped;
    };

    ProbeCaseResult r;
    r.probe = probe;
    r.he_translation = translate_under(he_prefix);
    r.she_translation = translate_under(she_prefix);
    r.under_he = detect_form(r.he_translation, probe.masculine_form, probe.feminine_form);
    r.under_she = detect_form(r.she_translation, probe.masculine_form, probe.feminine_form);
    if (r.success()) ++result.successes;
    result.cases.push_back(std::move(r));
  }
  result.summary_fraction = static_cast<double>(result.successes) / cases.size();
  return result;
}

}  // namespace mthint
