#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confgrade/classifier.hpp"
#include "confgrade/operations.hpp"
#include "confgrade/scenario.hpp"
#include "confgrade/text.hpp"

namespace confgrade {

// One conflict block of one scenario. Context is kept by reference: the
// scenario's version_m lives in the sidecar file and m_span locates the block.
struct CaseRecord {
  std::string case_id;      // scenario_id#block_index
  std::string scenario_id;  // repo@merge:path
  std::string repo;
  std::string merge_commit;
  std::string file_path;
  Language language = Language::C;
  std::size_t block_index = 0;
  LineRange m_span;
  Lines a_lines;
  Lines b_lines;
  std::optional<Lines> base_lines;
  std::optional<Lines> ground_truth;
  bool alignable = false;
  std::optional<GradeLabel> grade;  // empty until classified
  OpSet ops_a;
  OpSet ops_b;
  std::size_t conflict_lines = 0;    // a_lines + b_lines
  std::size_t resolution_lines = 0;  // ground-truth lines

  friend bool operator==(const CaseRecord&, const CaseRecord&) = default;
};

inline constexpr std::string_view kUngraded = "ungraded";

std::string make_case_id(const std::string& scenario_id, std::size_t block_index);

// "ungraded", "Unclassified", "T", ...
std::string grade_name(const std::optional<GradeLabel>& grade);

std::string case_to_json_line(const CaseRecord& record);
// `line` is the 1-based line number reported on failure.
CaseRecord case_from_json_line(std::string_view text, std::size_t line);

// Line-delimited records; throws CorpusFormatError naming the bad line.
// Duplicate case ids are rejected on both read and write.
void write_corpus(const std::vector<CaseRecord>& records, const std::filesystem::path& path);
std::vector<CaseRecord> read_corpus(const std::filesystem::path& path);

// cases.jsonl -> cases.scenarios.jsonl
std::filesystem::path scenarios_path_for(const std::filesystem::path& corpus_path);

void write_scenarios(const std::vector<MergeScenario>& scenarios, const std::filesystem::path& path);
std::vector<MergeScenario> read_scenarios(const std::filesystem::path& path);

struct LengthSummary {
  std::size_t count = 0;
  double mean_conflict_lines = 0;
  double mean_resolution_lines = 0;  // over aligned records
};

struct LanguageStats {
  std::size_t total = 0;
  std::size_t unalignable = 0;
  // Venn region name -> count; holds the seven regions, Unclassified and ungraded.
  std::map<std::string, std::size_t> regions;
  std::map<std::string, LengthSummary> lengths;  // per region
  // conflicts-per-file -> number of files
  std::map<std::size_t, std::size_t> blocks_per_file;
  std::size_t files = 0;
};

struct CorpusStats {
  LanguageStats overall;
  std::map<std::string, LanguageStats> by_language;  // display names
};

CorpusStats corpus_stats(const std::vector<CaseRecord>& records);
std::string stats_to_json(const CorpusStats& stats);
std::string stats_to_table(const CorpusStats& stats);

}  // namespace confgrade
