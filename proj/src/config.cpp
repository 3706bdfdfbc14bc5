#include "mthint/config.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace mthint {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return {};
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad config file " + path.string() + ": " + e.what());
  }

  const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : ".";
  ExperimentConfig c;

  if (j.contains("backends")) {
    for (const auto& b : j["backends"]) {
      BackendSpec spec = BackendSpec::from_json(b);
      if (!spec.fixture.empty())
        spec.fixture = resolve(base, spec.fixture).string();
      for (const auto& existing : c.backends)
        if (existing.name == spec.name)
          throw ConfigError("duplicate backend name '" + spec.name + "'");
      c.backends.push_back(std::move(spec));
    }
  }
  c.backend_name = j.value("backend", c.backends.empty() ? "" : c.backends.front().name);

  c.templates_path = resolve(base, j.value("templates", ""));
  c.strip_rules_path = resolve(base, j.value("strip_rules", ""));

  if (j.contains("conditions")) {
    if (j["conditions"].is_string()) {
      c.conditions = {j["conditions"].get<std::string>()};
    } else if (j["conditions"].is_array()) {
      for (const auto& l : j["conditions"]) c.conditions.push_back(l.get<std::string>());
    } else {
      throw ConfigError("'conditions' must be a string or an array of labels");
    }
  }

  c.source_corpus = resolve(base, j.value("source_corpus", ""));
  c.reference_corpus = resolve(base, j.value("reference_corpus", ""));
  c.cache_path = resolve(base, j.value("cache", ""));
  c.out_dir = resolve(base, j.value("out_dir", "out"));
  c.drop_unstripped = j.value("drop_unstripped", false);
  c.lowercase_bleu = j.value("lowercase_bleu", false);
  c.full_grid = j.value("full_grid", false);

  if (j.contains("audit")) {
    const auto& a = j["audit"];
    c.conllu_dir = resolve(base, a.value("conllu_dir", ""));
    c.reference_conllu = resolve(base, a.value("reference_conllu", ""));
    c.speaker_lexicon = resolve(base, a.value("speaker_lexicon", ""));
    c.audience_lexicon = resolve(base, a.value("audience_lexicon", ""));
  }
  if (j.contains("probe")) {
    c.probe_cases = resolve(base, j["probe"].value("cases", ""));
  }
  return c;
}

const BackendSpec& ExperimentConfig::selected_backend() const {
  if (backends.empty()) throw ConfigError("config defines no backends");
  for (const auto& b : backends)
    if (b.name == backend_name) return b;
  throw ConfigError("config has no backend named '" + backend_name + "'");
}

PrefixTemplateSet ExperimentConfig::load_templates() const {
  PrefixTemplateSet t = templates_path.empty() ? PrefixTemplateSet::english_defaults(full_grid)
                                               : PrefixTemplateSet::from_json_file(templates_path);
  t.validate();
  return t;
}

StripRuleSet ExperimentConfig::load_strip_rules() const {
  if (strip_rules_path.empty()) {
    StripRuleSet r;  // bare delimiter heuristic
    r.target_language = backends.empty() ? "" : selected_backend().target_lang;
    return r;
  }
  return StripRuleSet::from_json_file(strip_rules_path);
}

std::vector<HintCondition> ExperimentConfig::resolve_conditions(
    const PrefixTemplateSet& templates) const {
  const auto grid = enumerate_grid(templates);
  auto find_label = [&](const std::string& label) {
    auto it = std::find_if(grid.begin(), grid.end(),
                           [&](const HintCondition& c) { return c.label == label; });
    if (it == grid.end())
      throw ConfigError("condition '" + label + "' is not defined by the template set");
    return *it;
  };

  if (conditions.empty()) return grid;  // everything the template set defines

  if (conditions.size() == 1 && (conditions[0] == "table1" || conditions[0] == "full-grid")) {
    // The canonical grids, independent of whatever else the templates define.
    std::vector<std::string> labels = {"baseline", "he",  "he+him",  "he+her",  "he+them", "i",
                                       "i+them",   "she", "she+him", "she+her", "she+them"};
    if (conditions[0] == "full-grid") {
      labels.insert(labels.begin() + 6, {"i+him", "i+her"});
    }
    std::vector<HintCondition> out;
    for (const auto& label : labels) out.push_back(find_label(label));
    return out;
  }

  std::vector<HintCondition> out;
  for (const auto& label : conditions) {
    if (std::any_of(out.begin(), out.end(),
                    [&](const HintCondition& c) { return c.label == label; }))
      throw ConfigError("condition '" + label + "' listed twice");
    out.push_back(find_label(label));
  }
  return out;
}

void apply_overrides(ExperimentConfig& config, const CliOverrides& cli) {
  if (!cli.conditions.empty()) config.conditions = cli.conditions;
  if (!cli.backend.empty()) config.backend_name = cli.backend;
  if (cli.cache) config.cache_path = *cli.cache;
  if (cli.out_dir) config.out_dir = *cli.out_dir;
  if (cli.drop_unstripped) config.drop_unstripped = true;
  if (cli.lowercase) config.lowercase_bleu = true;
  if (cli.full_grid) config.full_grid = true;
}

}  // namespace mthint
