#include "confgrade/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "confgrade/errors.hpp"
#include "confgrade/parallel.hpp"
#include "json.hpp"

namespace confgrade {
namespace {

using json = nlohmann::ordered_json;

struct Accumulator {
  Tally tally;
  double es = 0;
  double ws = 0;
  double ss = 0;
  std::size_t ss_count = 0;

  void add(const EvaluationRecord& r) {
    ++tally.n;
    if (r.outcome != Outcome::Resolved) return;
    ++tally.g;
    if (r.matched.value_or(false)) ++tally.c;
    if (r.scores) {
      es += r.scores->es.value_or(0.0);
      ws += r.scores->ws.value_or(0.0);
      if (r.scores->ss) {
        ss += *r.scores->ss;
        ++ss_count;
      }
    }
  }

  Tally finish() const {
    Tally t = tally;
    if (t.n > 0) t.accuracy = static_cast<double>(t.c) / static_cast<double>(t.n);
    if (t.g > 0) {
      const auto g = static_cast<double>(t.g);
      t.precision = static_cast<double>(t.c) / g;
      t.mean_es = es / g;
      t.mean_ws = ws / g;
    }
    if (ss_count > 0) t.mean_ss = ss / static_cast<double>(ss_count);
    return t;
  }
};

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json tally_json(const Tally& t) {
  return json{{"n", t.n},
              {"g", t.g},
              {"c", t.c},
              {"accuracy", opt_json(t.accuracy)},
              {"precision", opt_json(t.precision)},
              {"mean_es", opt_json(t.mean_es)},
              {"mean_ws", opt_json(t.mean_ws)},
              {"mean_ss", opt_json(t.mean_ss)}};
}

std::string fmt(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

std::string row(const std::string& name, const Tally& t) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s %6zu %6zu %6zu %9s %9s %8s %8s %8s\n", name.c_str(), t.n, t.g,
                t.c, fmt(t.accuracy).c_str(), fmt(t.precision).c_str(), fmt(t.mean_es).c_str(),
                fmt(t.mean_ws).c_str(), fmt(t.mean_ss).c_str());
  return buf;
}

std::vector<std::string> region_names() {
  std::vector<std::string> out(kCategoryNames.begin(), kCategoryNames.end());
  out.emplace_back(kUnclassified);
  out.emplace_back(kUngraded);
  return out;
}

}  // namespace

bool is_counted(const CaseRecord& c) { return c.alignable && c.ground_truth.has_value(); }

PromptBundle prepare_bundle(const CaseRecord& c, const MergeScenario* scenario,
                            const EvaluationOptions& options, const PromptTemplate& tmpl,
                            const Tokenizer& tokenizer) {
  Lines conflict;
  ConflictContext context;
  if (scenario) {
    const auto m_lines = split_lines(scenario->version_m);
    if (c.m_span.end > m_lines.size() || c.m_span.empty()) {
      throw Error(ErrorKind::Consistency, "case " + c.case_id + " points outside its scenario");
    }
    conflict.assign(m_lines.begin() + static_cast<std::ptrdiff_t>(c.m_span.begin),
                    m_lines.begin() + static_cast<std::ptrdiff_t>(c.m_span.end));
    if (!options.no_context) context = build_context(m_lines, c.m_span, options.max_lines);
  } else {
    conflict = render_conflict_block(c.a_lines, c.b_lines, c.base_lines);
  }
  auto bundle = make_bundle(c.language, std::move(conflict), std::move(context), tmpl, tokenizer);
  return fit_to_budget(std::move(bundle), tmpl, tokenizer, options.context_limit);
}

EvaluationRecord evaluate_case(const CaseRecord& c, const MergeScenario* scenario,
                               ModelClient& client, const EvaluationOptions& options,
                               const EvaluationInputs& inputs) {
  static const PromptTemplate kDefault = PromptTemplate::default_template();
  static const ByteEstimateTokenizer kTokenizer;
  const auto& tmpl = inputs.prompt ? *inputs.prompt : kDefault;
  const auto& tokenizer = inputs.tokenizer ? *inputs.tokenizer : static_cast<const Tokenizer&>(kTokenizer);

  EvaluationRecord record;
  record.case_id = c.case_id;
  PromptBundle bundle;
  try {
    bundle = prepare_bundle(c, scenario, options, tmpl, tokenizer);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ConflictTooLarge) throw;
    record.outcome = Outcome::Unprocessable;
    record.note = "conflict_too_large";
    return record;
  }
  record.prompt_tokens = bundle.token_count;
  record.pre_context_lines = bundle.pre_context.size();
  record.post_context_lines = bundle.post_context.size();

  auto result = query_model(c.case_id, bundle.rendered_prompt, client, options.query);
  record.attempt_count = result.attempt_count;
  record.failures = std::move(result.failures);
  if (!result.candidate) {
    record.outcome = Outcome::Unprocessable;
    return record;
  }
  record.outcome = Outcome::Resolved;
  record.candidate = std::move(result.candidate);
  const auto truth = c.ground_truth ? join_lines(*c.ground_truth) : std::string();
  record.scores = score_candidate(*record.candidate, truth, inputs.embedder, options.winnowing);
  record.matched = matches_ground_truth(*record.scores, options.threshold);
  return record;
}

std::vector<EvaluationRecord> evaluate_cases(const std::vector<CaseRecord>& cases,
                                             const std::vector<MergeScenario>& scenarios,
                                             ModelClient& client, const EvaluationOptions& options,
                                             const EvaluationInputs& inputs) {
  std::unordered_map<std::string, const MergeScenario*> by_id;
  for (const auto& s : scenarios) by_id.emplace(s.id(), &s);

  std::vector<const CaseRecord*> todo;
  for (const auto& c : cases) {
    if (is_counted(c)) todo.push_back(&c);
  }
  std::sort(todo.begin(), todo.end(),
            [](const CaseRecord* a, const CaseRecord* b) { return a->case_id < b->case_id; });

  std::vector<EvaluationRecord> out(todo.size());
  parallel_for(todo.size(), options.jobs, [&](std::size_t i) {
    const auto& c = *todo[i];
    const MergeScenario* scenario = nullptr;
    if (!scenarios.empty()) {
      const auto it = by_id.find(c.scenario_id);
      if (it == by_id.end()) throw Error(ErrorKind::Consistency, "no scenario for case " + c.case_id);
      scenario = it->second;
    }
    out[i] = evaluate_case(c, scenario, client, options, inputs);
  });
  return out;
}

std::string record_to_json_line(const EvaluationRecord& r) {
  json j;
  j["case_id"] = r.case_id;
  j["attempt_count"] = r.attempt_count;
  j["outcome"] = r.outcome == Outcome::Resolved ? "resolved" : "unprocessable";
  j["candidate"] = r.candidate ? json(*r.candidate) : json(nullptr);
  if (r.scores) {
    j["scores"] = {{"es", opt_json(r.scores->es)}, {"ws", opt_json(r.scores->ws)}, {"ss", opt_json(r.scores->ss)}};
  } else {
    j["scores"] = nullptr;
  }
  j["matched"] = r.matched ? json(*r.matched) : json(nullptr);
  j["failures"] = r.failures;
  j["note"] = r.note;
  j["prompt_tokens"] = r.prompt_tokens;
  j["pre_context_lines"] = r.pre_context_lines;
  j["post_context_lines"] = r.post_context_lines;
  return j.dump();
}

EvaluationRecord record_from_json_line(std::string_view text, std::size_t line) {
  try {
    const auto j = json::parse(text);
    EvaluationRecord r;
    r.case_id = j.at("case_id").get<std::string>();
    r.attempt_count = j.at("attempt_count").get<unsigned>();
    const auto outcome = j.at("outcome").get<std::string>();
    if (outcome == "resolved") {
      r.outcome = Outcome::Resolved;
    } else if (outcome == "unprocessable") {
      r.outcome = Outcome::Unprocessable;
    } else {
      throw CorpusFormatError(line, "unknown outcome '" + outcome + "'");
    }
    if (!j.at("candidate").is_null()) r.candidate = j["candidate"].get<std::string>();
    if (const auto& s = j.at("scores"); !s.is_null()) {
      SimilarityScores scores;
      auto get = [&](const char* key) -> std::optional<double> {
        if (!s.contains(key) || s[key].is_null()) return std::nullopt;
        return s[key].get<double>();
      };
      scores.es = get("es");
      scores.ws = get("ws");
      scores.ss = get("ss");
      r.scores = scores;
    }
    if (!j.at("matched").is_null()) r.matched = j["matched"].get<bool>();
    r.failures = j.value("failures", std::vector<std::string>{});
    r.note = j.value("note", std::string());
    r.prompt_tokens = j.value("prompt_tokens", std::size_t{0});
    r.pre_context_lines = j.value("pre_context_lines", std::size_t{0});
    r.post_context_lines = j.value("post_context_lines", std::size_t{0});
    return r;
  } catch (const json::exception& e) {
    throw CorpusFormatError(line, e.what());
  }
}

void write_records(const std::vector<EvaluationRecord>& records, const std::filesystem::path& path) {
  std::string content;
  for (const auto& r : records) content += record_to_json_line(r) + "\n";
  write_file(path, content);
}

std::vector<EvaluationRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingInput, "cannot open " + path.string());
  std::vector<EvaluationRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    out.push_back(record_from_json_line(line, number));
  }
  return out;
}

AggregateReport evaluate_run(const std::vector<CaseRecord>& cases,
                             const std::vector<EvaluationRecord>& records) {
  std::unordered_map<std::string, const EvaluationRecord*> by_case;
  for (const auto& r : records) {
    if (!by_case.emplace(r.case_id, &r).second) {
      throw Error(ErrorKind::Consistency, "more than one record for case " + r.case_id);
    }
  }

  AggregateReport report;
  Accumulator overall;
  std::map<std::string, Accumulator> categories;
  std::map<std::string, Accumulator> regions;
  std::map<std::string, Accumulator> languages;
  std::map<std::string, std::map<std::string, Accumulator>> matrix;
  const auto all = all_categories();

  std::vector<const CaseRecord*> sorted;
  for (const auto& c : cases) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(),
            [](const CaseRecord* a, const CaseRecord* b) { return a->case_id < b->case_id; });

  std::size_t matched_records = 0;
  for (const auto* c : sorted) {
    const auto it = by_case.find(c->case_id);
    if (!is_counted(*c)) {
      ++report.excluded_unalignable;
      if (it != by_case.end()) {
        throw Error(ErrorKind::Consistency, "record for excluded case " + c->case_id);
      }
      continue;
    }
    if (it == by_case.end()) throw Error(ErrorKind::Consistency, "no record for case " + c->case_id);
    ++matched_records;
    const auto& r = *it->second;
    if (r.outcome == Outcome::Unprocessable) ++report.unprocessable;

    const std::string lang(display_name(c->language));
    overall.add(r);
    languages[lang].add(r);
    regions[grade_name(c->grade)].add(r);
    if (c->grade) {
      for (const auto& cat : all) {
        if (c->grade->covers(cat)) {
          categories[to_string(cat)].add(r);
          matrix[lang][to_string(cat)].add(r);
        }
      }
    }
  }
  if (matched_records != records.size()) {
    throw Error(ErrorKind::Consistency, "records reference cases missing from the corpus");
  }

  report.overall = overall.finish();
  for (auto name : kCategoryNames) report.categories[std::string(name)] = categories[std::string(name)].finish();
  for (const auto& name : region_names()) report.regions[name] = regions[name].finish();
  for (auto lang : kAllLanguages) {
    const std::string key(display_name(lang));
    report.languages[key] = languages[key].finish();
    for (auto name : kCategoryNames) report.matrix[key][std::string(name)] = matrix[key][std::string(name)].finish();
  }
  return report;
}

std::string report_to_json(const AggregateReport& report) {
  json j;
  j["overall"] = tally_json(report.overall);
  json cats;
  for (auto name : kCategoryNames) cats[std::string(name)] = tally_json(report.categories.at(std::string(name)));
  j["categories"] = cats;
  json regs;
  for (const auto& name : region_names()) regs[name] = tally_json(report.regions.at(name));
  j["regions"] = regs;
  json langs;
  for (const auto& [lang, t] : report.languages) langs[lang] = tally_json(t);
  j["languages"] = langs;
  json matrix;
  for (const auto& [lang, cells] : report.matrix) {
    json r;
    for (auto name : kCategoryNames) r[std::string(name)] = opt_json(cells.at(std::string(name)).precision);
    matrix[lang] = r;
  }
  j["precision_matrix"] = matrix;
  j["excluded_unalignable"] = report.excluded_unalignable;
  j["unprocessable"] = report.unprocessable;
  return j.dump(2) + "\n";
}

std::string report_to_table(const AggregateReport& report) {
  std::ostringstream out;
  char header[256];
  std::snprintf(header, sizeof header, "%-14s %6s %6s %6s %9s %9s %8s %8s %8s\n", "Scope", "N", "G", "C",
                "Accuracy", "Precision", "ES", "WS", "SS");
  out << header << row("Overall", report.overall) << "\nBy grade\n";
  for (auto name : kCategoryNames) out << row(std::string(name), report.categories.at(std::string(name)));
  out << "\nBy Venn region\n";
  for (const auto& name : region_names()) out << row(name, report.regions.at(name));
  out << "\nBy language\n";
  for (const auto& [lang, t] : report.languages) out << row(lang, t);

  out << "\nPrecision by language and grade\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-10s", "");
  out << buf;
  for (auto name : kCategoryNames) {
    std::snprintf(buf, sizeof buf, "%8s", std::string(name).c_str());
    out << buf;
  }
  out << "\n";
  for (const auto& [lang, cells] : report.matrix) {
    std::snprintf(buf, sizeof buf, "%-10s", lang.c_str());
    out << buf;
    for (auto name : kCategoryNames) {
      std::snprintf(buf, sizeof buf, "%8s", fmt(cells.at(std::string(name)).precision).c_str());
      out << buf;
    }
    out << "\n";
  }
  out << "\nExcluded (unaligned): " << report.excluded_unalignable
      << "\nUnprocessable: " << report.unprocessable << "\n";
  return out.str();
}

}  // namespace confgrade
