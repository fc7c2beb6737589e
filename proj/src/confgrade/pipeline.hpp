#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "confgrade/config.hpp"
#include "confgrade/dataset.hpp"
#include "confgrade/evaluation.hpp"
#include "confgrade/mapping.hpp"
#include "confgrade/miner.hpp"

namespace confgrade {

// One record per conflict block, ungraded, with harvested ground truth.
std::vector<CaseRecord> build_cases(const MergeScenario& scenario, const AnchorOptions& anchors);

// Colors and labels the cases of one scenario in place.
void classify_scenario_cases(const MergeScenario& scenario, std::vector<CaseRecord*>& cases,
                             const MappingTable& mapping);

struct MineSummary {
  std::size_t merges_seen = 0;
  std::size_t merges_replayed = 0;
  std::size_t scenarios = 0;
  std::size_t cases = 0;
  std::size_t unalignable = 0;
  std::vector<SkipRecord> skipped;
};

struct ClassifySummary {
  std::size_t cases = 0;
  std::map<std::string, std::size_t> regions;
};

MappingTable load_mapping(const RunConfig& config);

// Mines config.repos into config.out (cases) and its scenario sidecar.
MineSummary run_mine(const RunConfig& config);
// Grades config.corpus, writing to config.out (or back in place).
ClassifySummary run_classify(const RunConfig& config);
// Writes config.out (JSON) and a .txt table next to it; returns the table.
std::string run_stats(const RunConfig& config);
// Evaluates config.corpus into config.out (records).
std::vector<EvaluationRecord> run_evaluate(const RunConfig& config);
// Aggregates config.corpus + config.records into config.out (JSON) and a
// .txt table; returns the table.
std::string run_report(const RunConfig& config);
// Writes config.corpus with contexts inlined to config.out.
std::size_t run_export(const RunConfig& config);

// foo.json -> foo.txt
std::filesystem::path table_path_for(const std::filesystem::path& json_path);

}  // namespace confgrade
