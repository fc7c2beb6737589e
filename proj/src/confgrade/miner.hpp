#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "confgrade/scenario.hpp"
#include "confgrade/text.hpp"

namespace confgrade {

class GitRepository;

struct MergeTuple {
  std::string merge_commit;
  std::string parent_a;
  std::string parent_b;
  std::string base;

  friend bool operator==(const MergeTuple&, const MergeTuple&) = default;
};

// Something the miner passed over, with the reason.
struct SkipRecord {
  std::string commit;
  std::string path;
  std::string reason;
};

struct DiscoveredMerges {
  std::vector<MergeTuple> tuples;
  std::vector<SkipRecord> skipped;
};

// Two-parent commits in topological order (parents first, ties broken by
// commit time then hash), each paired with its single merge base. Merges
// with zero or several best ancestors are skipped.
DiscoveredMerges discover_merges(const GitRepository& repo);

struct ReplayOptions {
  std::set<Language> languages{Language::C, Language::Cpp, Language::Java, Language::Python};
  bool detect_renames = false;
  bool capture_base = false;
};

// Re-runs the file-level three-way merge for every file changed on both
// sides and returns the ones that conflict, ordered by path.
std::vector<MergeScenario> replay_merge(const GitRepository& repo, const MergeTuple& tuple,
                                        const std::string& repo_id, const ReplayOptions& options,
                                        std::vector<SkipRecord>* skipped = nullptr);

struct AnchorOptions {
  std::size_t min_width = 3;
  std::size_t max_width = 10;
};

// Per conflict block of version_m, the lines of version_r between the
// block's surrounding anchors, or nullopt when the block cannot be aligned.
std::vector<std::optional<Lines>> harvest_resolution(const MergeScenario& scenario,
                                                     const AnchorOptions& options = {});

struct MineOptions {
  ReplayOptions replay;
  std::optional<std::size_t> limit;  // merge commits replayed
  unsigned jobs = 1;
};

struct MineResult {
  std::vector<MergeScenario> scenarios;
  std::vector<SkipRecord> skipped;
  std::size_t merges_seen = 0;
  std::size_t merges_replayed = 0;
};

MineResult mine_repository(const std::string& repo_path, const MineOptions& options);

// Directory name of the repository, used as repo_id.
std::string repo_id_for(const std::string& repo_path);

}  // namespace confgrade
