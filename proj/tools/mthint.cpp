// mthint: control gender/number morphology in black-box MT by prefix
// injection, evaluate with corpus BLEU, audit morphology from CoNLL-U parses.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mthint/config.hpp"
#include "mthint/harness.hpp"
#include "mthint/probe.hpp"

namespace {

// Exit codes, stable for scripting: 0 ok, 2 config, 3 data, 4 backend.
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kDataError = 3;
constexpr int kBackendError = 4;

struct CommonOpts {
  std::string config_path;
  mthint::CliOverrides overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required) {
  auto* config = cmd->add_option("--config", opts.config_path, "experiment config (JSON)");
  if (config_required) config->required();
  cmd->add_option("--condition", opts.overrides.conditions,
                  "condition label to run (repeatable; overrides config)");
  cmd->add_option("--backend", opts.overrides.backend, "backend name (overrides config)");
  cmd->add_option("--cache", opts.overrides.cache, "translation cache file (JSON-lines)");
  cmd->add_option("--out", opts.overrides.out_dir, "output directory");
  cmd->add_flag("--drop-unstripped", opts.overrides.drop_unstripped,
                "exclude unstripped records (and their references) from BLEU");
  cmd->add_flag("--lc", opts.overrides.lowercase, "lowercase before BLEU");
  cmd->add_flag("--full-grid", opts.overrides.full_grid,
                "use all speaker x audience combinations");
}

mthint::ExperimentConfig load_config(const CommonOpts& opts) {
  mthint::ExperimentConfig config;
  if (!opts.config_path.empty())
    config = mthint::ExperimentConfig::from_json_file(opts.config_path);
  mthint::apply_overrides(config, opts.overrides);
  return config;
}

int run_grid(const CommonOpts& opts, const std::string& templates_path) {
  mthint::PrefixTemplateSet templates;
  if (!templates_path.empty()) {
    templates = mthint::PrefixTemplateSet::from_json_file(templates_path);
  } else if (!opts.config_path.empty()) {
    templates = load_config(opts).load_templates();
  } else {
    templates = mthint::PrefixTemplateSet::english_defaults(opts.overrides.full_grid);
  }
  for (const auto& condition : mthint::enumerate_grid(templates)) {
    std::cout << condition.label << '\t' << mthint::render_prefix(condition, templates) << '\n';
  }
  return kOk;
}

int run_translate_cmd(const CommonOpts& opts) {
  auto config = load_config(opts);
  auto result = mthint::run_translate(config);
  std::cout << "wrote " << result.records_path.string() << " ("
            << result.records_by_condition.size() << " conditions, " << result.backend_calls
            << " backend calls)\n";
  std::cout << "wrote " << result.strip_rates_path.string() << '\n';
  return kOk;
}

int run_score_cmd(const CommonOpts& opts, const std::string& records_path) {
  auto config = load_config(opts);
  std::filesystem::path records = records_path.empty()
                                      ? config.out_dir / "records.jsonl"
                                      : std::filesystem::path(records_path);
  auto by_condition = mthint::read_records_jsonl(records);
  auto report = mthint::write_score_report(config, by_condition);
  std::cout << report.to_csv();
  std::cout << "wrote " << (config.out_dir / "report.csv").string() << " and report.json\n";
  return kOk;
}

int run_report_cmd(const CommonOpts& opts) {
  auto config = load_config(opts);
  auto result = mthint::run_experiment(config);
  std::cout << result.report.to_csv();
  std::cout << "wrote " << result.report_csv_path.string() << ", report.json, "
            << result.translation.records_path.string() << ", "
            << result.translation.strip_rates_path.string() << '\n';
  return kOk;
}

int run_audit_cmd(const CommonOpts& opts, std::string conllu_dir, std::string reference,
                  std::string speaker_lex, std::string audience_lex) {
  std::filesystem::path out_dir = "out";
  if (!opts.config_path.empty()) {
    auto config = load_config(opts);
    if (conllu_dir.empty()) conllu_dir = config.conllu_dir.string();
    if (reference.empty()) reference = config.reference_conllu.string();
    if (speaker_lex.empty()) speaker_lex = config.speaker_lexicon.string();
    if (audience_lex.empty()) audience_lex = config.audience_lexicon.string();
    out_dir = config.out_dir;
  }
  if (opts.overrides.out_dir) out_dir = *opts.overrides.out_dir;
  if (conllu_dir.empty() || reference.empty() || speaker_lex.empty() || audience_lex.empty())
    throw mthint::ConfigError(
        "audit needs --conllu-dir, --reference, --speaker-lexicon and --audience-lexicon "
        "(or an 'audit' config section)");

  auto speaker = mthint::PronounLexicon::from_tsv_file(speaker_lex);
  auto audience = mthint::PronounLexicon::from_tsv_file(audience_lex);
  auto result = mthint::run_morph_audit(conllu_dir, reference, speaker, audience, out_dir);
  std::cout << "audited " << result.by_condition.size() << " conditions against "
            << reference << '\n';
  std::cout << "wrote " << result.report_csv_path.string() << ", "
            << result.comparison_csv_path.string() << ", " << result.chart_data_path.string()
            << ", " << result.speaker_svg_path.string() << ", "
            << result.audience_svg_path.string() << '\n';
  return kOk;
}

int run_probe_cmd(const CommonOpts& opts, std::string cases_path) {
  auto config = load_config(opts);
  if (cases_path.empty()) cases_path = config.probe_cases.string();
  if (cases_path.empty())
    throw mthint::ConfigError("probe needs --cases (or a 'probe.cases' config key)");

  auto cases = mthint::load_probe_cases_tsv(cases_path);
  auto templates = config.load_templates();
  auto rules = config.load_strip_rules();
  auto result = mthint::run_gender_probe(cases, config.selected_backend(), templates, rules);

  std::cout << result.to_csv();
  std::cout << "summary: " << result.successes << "/" << result.cases.size() << " ("
            << result.summary_fraction << ")\n";

  std::filesystem::path out_dir = opts.overrides.out_dir.value_or(config.out_dir);
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir / "probe_results.csv", std::ios::binary);
  out << result.to_csv();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"black-box MT morphology control: prefix injection, stripping, BLEU, audits"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string templates_path, records_path, cases_path;
  std::string conllu_dir, reference, speaker_lex, audience_lex;

  auto* grid = app.add_subcommand("grid", "list the conditions and their prefixes");
  add_common(grid, opts, false);
  grid->add_option("--templates", templates_path, "prefix template file (JSON)");

  auto* translate = app.add_subcommand("translate", "wrap, translate and strip a corpus");
  add_common(translate, opts, true);

  auto* score = app.add_subcommand("score", "score a records archive against references");
  add_common(score, opts, true);
  score->add_option("--records", records_path, "records JSONL (default: <out>/records.jsonl)");

  auto* report = app.add_subcommand("report", "full run: translate then score");
  add_common(report, opts, true);

  auto* audit = app.add_subcommand("audit", "morphological audit of dependency parses");
  add_common(audit, opts, false);
  audit->add_option("--conllu-dir", conllu_dir, "directory of <condition>.conllu files");
  audit->add_option("--reference", reference, "reference parse (.conllu)");
  audit->add_option("--speaker-lexicon", speaker_lex, "first-person pronoun lexicon (TSV)");
  audit->add_option("--audience-lexicon", audience_lex, "second-person pronoun lexicon (TSV)");

  auto* probe = app.add_subcommand("probe", "gendered-form probe across languages");
  add_common(probe, opts, false);
  probe->add_option("--cases", cases_path, "probe cases TSV: language, source, masc, fem");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (grid->parsed()) return run_grid(opts, templates_path);
    if (translate->parsed()) return run_translate_cmd(opts);
    if (score->parsed()) return run_score_cmd(opts, records_path);
    if (report->parsed()) return run_report_cmd(opts);
    if (audit->parsed())
      return run_audit_cmd(opts, conllu_dir, reference, speaker_lex, audience_lex);
    if (probe->parsed()) return run_probe_cmd(opts, cases_path);
  } catch (const mthint::BackendError& e) {
    std::cerr << "backend error: " << e.what() << '\n';
    return kBackendError;
  } catch (const mthint::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const mthint::UnknownCondition& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const mthint::MalformedLabel& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const mthint::Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}
