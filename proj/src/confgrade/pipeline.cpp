#include "confgrade/pipeline.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <unordered_map>

#include "confgrade/coloring.hpp"
#include "confgrade/embedding.hpp"
#include "confgrade/errors.hpp"
#include "confgrade/parallel.hpp"
#include "confgrade/prompt.hpp"
#include "confgrade/virtual_merge.hpp"
#include "json.hpp"

namespace confgrade {
namespace {

const std::string& require_path(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorKind::InvalidArgument, std::string("missing ") + flag);
  return value;
}

void require_file(const std::string& path, const char* what) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorKind::MissingInput, std::string(what) + " not found: " + path);
  }
}

std::vector<MergeScenario> load_scenarios_for(const std::string& corpus) {
  const auto path = scenarios_path_for(corpus);
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorKind::MissingInput, "scenario file not found: " + path.string());
  }
  return read_scenarios(path);
}

std::string env_or_empty(const std::string& name) {
  if (name.empty()) return {};
  const char* v = std::getenv(name.c_str());
  return v ? std::string(v) : std::string();
}

}  // namespace

std::filesystem::path table_path_for(const std::filesystem::path& json_path) {
  auto p = json_path;
  return p.replace_extension(".txt");
}

std::vector<CaseRecord> build_cases(const MergeScenario& scenario, const AnchorOptions& anchors) {
  const auto m_lines = split_lines(scenario.version_m);
  const auto blocks = parse_conflict_blocks(m_lines);
  std::vector<std::optional<Lines>> truths(blocks.size());
  if (scenario.version_r) truths = harvest_resolution(scenario, anchors);

  std::vector<CaseRecord> out;
  const auto scenario_id = scenario.id();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    CaseRecord r;
    r.case_id = make_case_id(scenario_id, i);
    r.scenario_id = scenario_id;
    r.repo = scenario.repo_id;
    r.merge_commit = scenario.merge_commit;
    r.file_path = scenario.file_path;
    r.language = scenario.language;
    r.block_index = i;
    r.m_span = b.m_span;
    r.a_lines = b.a_lines;
    r.b_lines = b.b_lines;
    r.base_lines = b.base_lines;
    r.ground_truth = truths[i];
    r.alignable = truths[i].has_value();
    r.conflict_lines = b.a_lines.size() + b.b_lines.size();
    r.resolution_lines = truths[i] ? truths[i]->size() : 0;
    out.push_back(std::move(r));
  }
  return out;
}

void classify_scenario_cases(const MergeScenario& scenario, std::vector<CaseRecord*>& cases,
                             const MappingTable& mapping) {
  const auto m_lines = split_lines(scenario.version_m);
  const auto blocks = parse_conflict_blocks(m_lines);
  const auto vm_a = build_side_merged(m_lines, blocks, Side::A);
  const auto vm_b = build_side_merged(m_lines, blocks, Side::B);
  const auto trace = color_conflicts(vm_a, vm_b, scenario.language, mapping);
  const auto labels = label_scenario(trace);
  for (auto* c : cases) {
    if (c->block_index >= blocks.size() || blocks[c->block_index].m_span != c->m_span) {
      throw Error(ErrorKind::Consistency, "case " + c->case_id + " does not match its scenario");
    }
    c->ops_a = trace.pa[c->block_index];
    c->ops_b = trace.pb[c->block_index];
    c->grade = labels[c->block_index];
  }
}

MappingTable load_mapping(const RunConfig& config) {
  if (config.mapping.empty()) return MappingTable::defaults();
  require_file(config.mapping, "mapping table");
  return MappingTable::load(config.mapping);
}

MineSummary run_mine(const RunConfig& config) {
  config.validate();
  if (config.repos.empty()) throw Error(ErrorKind::InvalidArgument, "missing --repo");
  const auto& out = require_path(config.out, "--out");

  MineOptions options;
  options.replay.languages = config.languages;
  options.replay.detect_renames = config.detect_renames;
  options.limit = config.limit;
  options.jobs = config.jobs;
  const AnchorOptions anchors{config.anchor_min_width, config.anchor_max_width};

  MineSummary summary;
  std::vector<MergeScenario> scenarios;
  std::vector<CaseRecord> cases;
  for (const auto& repo : config.repos) {
    if (!std::filesystem::is_directory(repo)) {
      throw Error(ErrorKind::MissingInput, "repository not found: " + repo);
    }
    auto mined = mine_repository(repo, options);
    summary.merges_seen += mined.merges_seen;
    summary.merges_replayed += mined.merges_replayed;
    for (auto& s : mined.skipped) summary.skipped.push_back(std::move(s));

    std::vector<std::vector<CaseRecord>> per(mined.scenarios.size());
    parallel_for(per.size(), config.jobs,
                 [&](std::size_t i) { per[i] = build_cases(mined.scenarios[i], anchors); });
    for (auto& list : per) {
      for (auto& c : list) cases.push_back(std::move(c));
    }
    for (auto& s : mined.scenarios) scenarios.push_back(std::move(s));
  }
  summary.scenarios = scenarios.size();
  summary.cases = cases.size();
  for (const auto& c : cases) summary.unalignable += c.alignable ? 0 : 1;

  write_corpus(cases, out);
  write_scenarios(scenarios, scenarios_path_for(out));
  return summary;
}

ClassifySummary run_classify(const RunConfig& config) {
  config.validate();
  const auto& corpus = require_path(config.corpus, "--corpus");
  require_file(corpus, "corpus");
  const auto mapping = load_mapping(config);
  auto cases = read_corpus(corpus);
  const auto scenarios = load_scenarios_for(corpus);

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < scenarios.size(); ++i) index.emplace(scenarios[i].id(), i);
  std::vector<std::vector<CaseRecord*>> groups(scenarios.size());
  for (auto& c : cases) {
    const auto it = index.find(c.scenario_id);
    if (it == index.end()) throw Error(ErrorKind::Consistency, "no scenario for case " + c.case_id);
    groups[it->second].push_back(&c);
  }
  parallel_for(scenarios.size(), config.jobs, [&](std::size_t i) {
    if (!groups[i].empty()) classify_scenario_cases(scenarios[i], groups[i], mapping);
  });

  const auto out = config.out.empty() ? corpus : config.out;
  write_corpus(cases, out);
  if (scenarios_path_for(out) != scenarios_path_for(corpus)) write_scenarios(scenarios, scenarios_path_for(out));

  ClassifySummary summary;
  summary.cases = cases.size();
  for (const auto& c : cases) ++summary.regions[grade_name(c.grade)];
  return summary;
}

std::string run_stats(const RunConfig& config) {
  config.validate();
  const auto& corpus = require_path(config.corpus, "--corpus");
  require_file(corpus, "corpus");
  const auto stats = corpus_stats(read_corpus(corpus));
  const auto table = stats_to_table(stats);
  if (!config.out.empty()) {
    write_file(config.out, stats_to_json(stats));
    write_file(table_path_for(config.out), table);
  }
  return table;
}

std::vector<EvaluationRecord> run_evaluate(const RunConfig& config) {
  config.validate();
  const auto& corpus = require_path(config.corpus, "--corpus");
  require_file(corpus, "corpus");
  const auto& out = require_path(config.out, "--out");
  const auto cases = read_corpus(corpus);
  const auto scenarios = load_scenarios_for(corpus);

  std::unique_ptr<ModelClient> client;
  if (!config.mock.empty()) {
    require_file(config.mock, "mock fixture");
    client = std::make_unique<ScriptedModelClient>(ScriptedModelClient::load(config.mock));
  } else {
    client = std::make_unique<HttpChatClient>(HttpChatOptions{
        config.model.endpoint, config.model.name, env_or_empty(config.model.api_key_env),
        config.model.timeout_seconds});
  }

  std::unique_ptr<EmbeddingProvider> embedder;
  if (config.embedding.provider == "hashing") {
    embedder = std::make_unique<HashingEmbedder>(config.embedding.dimensions);
  } else if (config.embedding.provider == "http") {
    if (config.embedding.endpoint.empty()) throw Error(ErrorKind::InvalidConfig, "embedding.endpoint is not set");
    embedder = std::make_unique<HttpEmbeddingProvider>(HttpEmbeddingOptions{
        config.embedding.endpoint, config.embedding.model, env_or_empty(config.embedding.api_key_env),
        config.model.timeout_seconds});
  }

  std::optional<PromptTemplate> tmpl;
  if (!config.prompt_template.empty()) {
    require_file(config.prompt_template, "prompt template");
    tmpl = PromptTemplate::load(config.prompt_template);
  }

  EvaluationOptions options;
  options.max_lines = config.max_lines;
  options.no_context = config.no_context;
  options.context_limit = config.model.context_limit;
  options.query.max_attempts = config.model.max_attempts;
  options.query.temperature = config.model.temperature;
  options.query.seed = config.seed;
  options.winnowing = config.winnowing;
  options.threshold = config.threshold;
  options.jobs = config.jobs;

  EvaluationInputs inputs;
  inputs.prompt = tmpl ? &*tmpl : nullptr;
  inputs.embedder = embedder.get();
  auto records = evaluate_cases(cases, scenarios, *client, options, inputs);
  write_records(records, out);
  return records;
}

std::string run_report(const RunConfig& config) {
  config.validate();
  const auto& corpus = require_path(config.corpus, "--corpus");
  const auto& records_path = require_path(config.records, "--records");
  require_file(corpus, "corpus");
  require_file(records_path, "evaluation records");
  const auto report = evaluate_run(read_corpus(corpus), read_records(records_path));
  const auto table = report_to_table(report);
  if (!config.out.empty()) {
    write_file(config.out, report_to_json(report));
    write_file(table_path_for(config.out), table);
  }
  return table;
}

std::size_t run_export(const RunConfig& config) {
  using json = nlohmann::ordered_json;
  config.validate();
  const auto& corpus = require_path(config.corpus, "--corpus");
  require_file(corpus, "corpus");
  const auto& out = require_path(config.out, "--out");
  const auto cases = read_corpus(corpus);
  const auto scenarios = load_scenarios_for(corpus);
  std::unordered_map<std::string, const MergeScenario*> by_id;
  for (const auto& s : scenarios) by_id.emplace(s.id(), &s);

  std::string content;
  for (const auto& c : cases) {
    const auto it = by_id.find(c.scenario_id);
    if (it == by_id.end()) throw Error(ErrorKind::Consistency, "no scenario for case " + c.case_id);
    const auto m_lines = split_lines(it->second->version_m);
    const auto ctx = build_context(m_lines, c.m_span, config.max_lines);
    auto j = json::parse(case_to_json_line(c));
    j["conflict_text"] = Lines(m_lines.begin() + static_cast<std::ptrdiff_t>(c.m_span.begin),
                               m_lines.begin() + static_cast<std::ptrdiff_t>(std::min(c.m_span.end, m_lines.size())));
    j["pre_context"] = ctx.pre;
    j["post_context"] = ctx.post;
    content += j.dump() + "\n";
  }
  write_file(out, content);
  return cases.size();
}

}  // namespace confgrade
