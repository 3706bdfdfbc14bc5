#include "mthint/grid.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include <json.hpp>

namespace mthint {

namespace {

// Grid row order: speaker-major, audience-minor.
constexpr std::array<std::string_view, 3> kSpeakerOrder = {"he", "i", "she"};
constexpr std::array<std::string_view, 3> kAudienceOrder = {"him", "her", "them"};

int speaker_rank(std::string_view s) {
  for (size_t i = 0; i < kSpeakerOrder.size(); ++i)
    if (kSpeakerOrder[i] == s) return static_cast<int>(i);
  return static_cast<int>(kSpeakerOrder.size());
}

int audience_rank(std::string_view a) {
  if (a.empty()) return 0;
  for (size_t i = 0; i < kAudienceOrder.size(); ++i)
    if (kAudienceOrder[i] == a) return static_cast<int>(i) + 1;
  return static_cast<int>(kAudienceOrder.size()) + 1;
}

std::pair<std::string, std::string> split_label(std::string_view label) {
  auto plus = label.find('+');
  if (plus == std::string_view::npos) return {std::string(label), ""};
  return {std::string(label.substr(0, plus)), std::string(label.substr(plus + 1))};
}

}  // namespace

std::string to_string(Gender g) {
  switch (g) {
    case Gender::Masculine: return "masculine";
    case Gender::Feminine: return "feminine";
    case Gender::Unspecified: return "unspecified";
  }
  return "unspecified";
}

std::string to_string(Number n) {
  switch (n) {
    case Number::Singular: return "singular";
    case Number::Plural: return "plural";
    case Number::Unspecified: return "unspecified";
  }
  return "unspecified";
}

void HintCondition::validate() const {
  if (label.empty()) throw MalformedLabel("condition label is empty");
  if (is_baseline() &&
      (speaker != Gender::Unspecified || audience_gender != Gender::Unspecified ||
       audience_number != Number::Unspecified)) {
    throw MalformedLabel("baseline condition must leave speaker and audience unspecified");
  }
  if (audience_number == Number::Plural && audience_gender != Gender::Unspecified) {
    throw MalformedLabel("plural audience carries no gender (label '" + label + "')");
  }
}

HintCondition parse_condition_label(std::string_view label) {
  auto [speaker, audience] = split_label(label);

  HintCondition c;
  c.label = std::string(label);
  if (speaker == "he") {
    c.speaker = Gender::Masculine;
  } else if (speaker == "she") {
    c.speaker = Gender::Feminine;
  } else if (speaker == "i" || speaker == "baseline") {
    c.speaker = Gender::Unspecified;
  } else {
    throw MalformedLabel("unknown speaker token '" + speaker + "' in label '" +
                         std::string(label) + "'");
  }
  if (speaker == "baseline" && !audience.empty()) {
    throw MalformedLabel("baseline admits no audience token (label '" + std::string(label) + "')");
  }

  if (audience.empty() && label.find('+') != std::string_view::npos) {
    throw MalformedLabel("empty audience token in label '" + std::string(label) + "'");
  }
  if (audience == "him") {
    c.audience_gender = Gender::Masculine;
    c.audience_number = Number::Singular;
  } else if (audience == "her") {
    c.audience_gender = Gender::Feminine;
    c.audience_number = Number::Singular;
  } else if (audience == "them") {
    c.audience_number = Number::Plural;
  } else if (!audience.empty()) {
    throw MalformedLabel("unknown audience token '" + audience + "' in label '" +
                         std::string(label) + "'");
  }

  c.validate();
  return c;
}

PrefixTemplateSet PrefixTemplateSet::english_defaults(bool full_grid) {
  PrefixTemplateSet t;
  t.source_language = "en";
  t.entries = {
      {"baseline", ""},
      {"he", "He said:"},
      {"he+him", "He said to him:"},
      {"he+her", "He said to her:"},
      {"he+them", "He said to them:"},
      {"i", "I said:"},
      {"i+them", "I said to them:"},
      {"she", "She said:"},
      {"she+him", "She said to him:"},
      {"she+her", "She said to her:"},
      {"she+them", "She said to them:"},
  };
  if (full_grid) {
    t.entries["i+him"] = "I said to him:";
    t.entries["i+her"] = "I said to her:";
  }
  return t;
}

void PrefixTemplateSet::validate() const {
  for (const auto& [label, prefix] : entries) {
    HintCondition c = parse_condition_label(label);  // throws on bad labels
    if (c.is_baseline()) {
      if (!prefix.empty())
        throw ConfigError("baseline must map to the empty prefix, got '" + prefix + "'");
    } else {
      if (prefix.empty())
        throw ConfigError("prefix for '" + label + "' is empty");
      if (prefix.back() != ':')
        throw ConfigError("prefix for '" + label + "' must end with the parataxis delimiter ':'");
    }
  }
}

PrefixTemplateSet PrefixTemplateSet::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open template file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad template file " + path.string() + ": " + e.what());
  }
  PrefixTemplateSet t;
  t.source_language = j.value("source_language", "en");
  t.separator = j.value("separator", " ");
  if (!j.contains("entries") || !j["entries"].is_object())
    throw ConfigError("template file " + path.string() + " lacks an 'entries' object");
  for (const auto& [label, prefix] : j["entries"].items()) {
    if (!prefix.is_string())
      throw ConfigError("template entry '" + label + "' is not a string");
    t.entries[label] = prefix.get<std::string>();
  }
  t.validate();
  return t;
}

std::string render_prefix(const HintCondition& condition, const PrefixTemplateSet& templates) {
  auto it = templates.entries.find(condition.label);
  if (it == templates.entries.end())
    throw UnknownCondition("no prefix template for condition '" + condition.label + "'");
  return it->second;
}

std::vector<HintCondition> enumerate_grid(const PrefixTemplateSet& templates) {
  std::vector<HintCondition> grid;
  grid.reserve(templates.entries.size());
  for (const auto& [label, prefix] : templates.entries) {
    (void)prefix;
    grid.push_back(parse_condition_label(label));
  }
  std::sort(grid.begin(), grid.end(), [](const HintCondition& a, const HintCondition& b) {
    if (a.is_baseline() != b.is_baseline()) return a.is_baseline();
    auto [sa, aa] = split_label(a.label);
    auto [sb, ab] = split_label(b.label);
    auto ka = std::tuple(speaker_rank(sa), audience_rank(aa), a.label);
    auto kb = std::tuple(speaker_rank(sb), audience_rank(ab), b.label);
    return ka < kb;
  });
  return grid;
}

}  // namespace mthint
