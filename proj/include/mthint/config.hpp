#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mthint/backend.hpp"
#include "mthint/grid.hpp"
#include "mthint/wrap_strip.hpp"

namespace mthint {

// Declarative run description. Relative paths resolve against the config
// file's directory; CLI flags override individual keys.
struct ExperimentConfig {
  std::vector<BackendSpec> backends;
  std::string backend_name;  // which backend to use

  std::filesystem::path templates_path;    // empty = stock English templates
  std::filesystem::path strip_rules_path;  // empty = bare delimiter heuristic

  // "table1", "full-grid", or an explicit label list.
  std::vector<std::string> conditions;

  std::filesystem::path source_corpus;
  std::filesystem::path reference_corpus;
  std::filesystem::path cache_path;  // empty = in-memory only
  std::filesystem::path out_dir = "out";

  bool drop_unstripped = false;
  bool lowercase_bleu = false;
  bool full_grid = false;

  // morph audit inputs
  std::filesystem::path conllu_dir;
  std::filesystem::path reference_conllu;
  std::filesystem::path speaker_lexicon;
  std::filesystem::path audience_lexicon;

  // probe inputs
  std::filesystem::path probe_cases;

  static ExperimentConfig from_json_file(const std::filesystem::path& path);

  const BackendSpec& selected_backend() const;
  PrefixTemplateSet load_templates() const;
  StripRuleSet load_strip_rules() const;
  // Labels resolved against the template set, in grid order for the
  // "table1"/"full-grid" shorthands. Unknown labels are a ConfigError.
  std::vector<HintCondition> resolve_conditions(const PrefixTemplateSet& templates) const;
};

struct CliOverrides {
  std::vector<std::string> conditions;
  std::string backend;
  std::optional<std::filesystem::path> cache;
  std::optional<std::filesystem::path> out_dir;
  bool drop_unstripped = false;
  bool lowercase = false;
  bool full_grid = false;
};

void apply_overrides(ExperimentConfig& config, const CliOverrides& cli);

}  // namespace mthint
