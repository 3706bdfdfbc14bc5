#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mthint/errors.hpp"

namespace mthint {

enum class Gender { Masculine, Feminine, Unspecified };
enum class Number { Singular, Plural, Unspecified };

std::string to_string(Gender g);
std::string to_string(Number n);

// One speaker x audience cell of the condition grid. Identity is carried by
// the label: the "i" condition (explicit first-person speaker of unknown
// gender) shares the all-Unspecified feature triple with the baseline and is
// distinguished from it only by label.
struct HintCondition {
  Gender speaker = Gender::Unspecified;
  Gender audience_gender = Gender::Unspecified;
  Number audience_number = Number::Unspecified;
  std::string label;

  bool is_baseline() const { return label == "baseline"; }

  // Enforces: baseline => all Unspecified; plural audience carries no gender.
  void validate() const;

  friend bool operator==(const HintCondition&, const HintCondition&) = default;
};

// Source-language prefix texts, keyed by condition label.
struct PrefixTemplateSet {
  std::string source_language = "en";
  std::map<std::string, std::string> entries;  // label -> prefix text
  std::string separator = " ";                 // appended between prefix and sentence

  // The stock English set: baseline + the ten prefix cells. full_grid adds
  // the two unknown-speaker singular-audience cells that the standard grid
  // leaves out.
  static PrefixTemplateSet english_defaults(bool full_grid = false);

  // Loads {"source_language": ..., "separator": ..., "entries": {label: prefix}}.
  static PrefixTemplateSet from_json_file(const std::filesystem::path& path);

  // Baseline maps to the empty prefix; every other prefix is non-empty and
  // ends with the parataxis delimiter ':'.
  void validate() const;
};

// Prefix text for a condition, verbatim from the template set. Empty iff
// baseline. Throws UnknownCondition when the label has no entry.
std::string render_prefix(const HintCondition& condition, const PrefixTemplateSet& templates);

// All conditions present in the template set, baseline first, then grid row
// order (speaker he < i < she, audience none < him < her < them). Labels that
// are not part of the standard grid grammar are rejected (MalformedLabel).
std::vector<HintCondition> enumerate_grid(const PrefixTemplateSet& templates);

// Inverse of the grid labeling: "<speaker>[+<audience>]" with speaker in
// {he, she, i, baseline} and audience in {him, her, them}.
HintCondition parse_condition_label(std::string_view label);

}  // namespace mthint
