#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confgrade/dataset.hpp"
#include "confgrade/model_client.hpp"
#include "confgrade/prompt.hpp"
#include "confgrade/similarity.hpp"

namespace confgrade {

enum class Outcome { Resolved, Unprocessable };

struct EvaluationRecord {
  std::string case_id;
  unsigned attempt_count = 0;
  Outcome outcome = Outcome::Unprocessable;
  std::optional<std::string> candidate;
  std::optional<SimilarityScores> scores;
  std::optional<bool> matched;
  std::vector<std::string> failures;  // per failed attempt
  std::string note;                   // e.g. "conflict_too_large"
  std::size_t prompt_tokens = 0;
  std::size_t pre_context_lines = 0;
  std::size_t post_context_lines = 0;

  friend bool operator==(const EvaluationRecord&, const EvaluationRecord&) = default;
};

struct EvaluationOptions {
  std::size_t max_lines = 100;
  bool no_context = false;
  std::size_t context_limit = 8192;  // tokens
  QueryOptions query;
  WinnowingParams winnowing;
  double threshold = kMatchThreshold;
  unsigned jobs = 1;
};

// Cases with aligned ground truth; only these enter the denominators.
bool is_counted(const CaseRecord& c);

struct EvaluationInputs {
  const PromptTemplate* prompt = nullptr;  // defaults to the shipped template
  const Tokenizer* tokenizer = nullptr;    // defaults to ByteEstimateTokenizer
  EmbeddingProvider* embedder = nullptr;   // no semantic score when null
};

// The prompt bundle a case would be sent with. `scenario` may be null, in
// which case the conflict is rebuilt from the side texts without context.
PromptBundle prepare_bundle(const CaseRecord& c, const MergeScenario* scenario,
                            const EvaluationOptions& options, const PromptTemplate& tmpl,
                            const Tokenizer& tokenizer);

EvaluationRecord evaluate_case(const CaseRecord& c, const MergeScenario* scenario,
                               ModelClient& client, const EvaluationOptions& options,
                               const EvaluationInputs& inputs = {});

// Evaluates every counted case, `options.jobs` at a time; output sorted by case_id.
// When `scenarios` is non-empty each case must find its scenario there.
std::vector<EvaluationRecord> evaluate_cases(const std::vector<CaseRecord>& cases,
                                             const std::vector<MergeScenario>& scenarios,
                                             ModelClient& client, const EvaluationOptions& options,
                                             const EvaluationInputs& inputs = {});

std::string record_to_json_line(const EvaluationRecord& record);
EvaluationRecord record_from_json_line(std::string_view text, std::size_t line);
void write_records(const std::vector<EvaluationRecord>& records, const std::filesystem::path& path);
std::vector<EvaluationRecord> read_records(const std::filesystem::path& path);

struct Tally {
  std::size_t n = 0;  // conflicts
  std::size_t g = 0;  // resolved
  std::size_t c = 0;  // matched
  std::optional<double> accuracy;   // absent when n == 0
  std::optional<double> precision;  // absent when g == 0
  std::optional<double> mean_es;    // over resolved cases
  std::optional<double> mean_ws;
  std::optional<double> mean_ss;  // over resolved cases with a semantic score
};

struct AggregateReport {
  Tally overall;
  std::map<std::string, Tally> categories;  // the seven overlapping grades
  std::map<std::string, Tally> regions;     // disjoint: seven grades, Unclassified, ungraded
  std::map<std::string, Tally> languages;   // display names
  // language -> category -> tally, backing the precision matrix
  std::map<std::string, std::map<std::string, Tally>> matrix;
  std::size_t excluded_unalignable = 0;
  std::size_t unprocessable = 0;
};

// Throws Error(Consistency) unless records and counted cases pair up one to one.
AggregateReport evaluate_run(const std::vector<CaseRecord>& cases,
                             const std::vector<EvaluationRecord>& records);

std::string report_to_json(const AggregateReport& report);
std::string report_to_table(const AggregateReport& report);

}  // namespace confgrade
