#include "confgrade/miner.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <queue>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "confgrade/errors.hpp"
#include "confgrade/git_repo.hpp"
#include "confgrade/virtual_merge.hpp"

namespace confgrade {
namespace {

bool looks_binary(const std::string& text) {
  return text.find('\0') != std::string::npos;
}

// Where a file lives on one side, keyed by its base path.
std::map<std::string, PathChange> changes_by_base(const std::vector<PathChange>& changes) {
  std::map<std::string, PathChange> out;
  for (const auto& c : changes) {
    const auto key = c.status == 'A' ? c.new_path : c.old_path;
    out.emplace(key, c);
  }
  return out;
}

// Occurrences of lines[begin, begin+width) in `haystack`, up to two.
std::vector<std::size_t> find_sequence(const Lines& haystack, const Lines& needle_src,
                                       std::size_t begin, std::size_t width) {
  std::vector<std::size_t> hits;
  if (width == 0 || width > haystack.size()) return hits;
  for (std::size_t i = 0; i + width <= haystack.size(); ++i) {
    bool same = true;
    for (std::size_t k = 0; k < width; ++k) {
      if (haystack[i + k] != needle_src[begin + k]) {
        same = false;
        break;
      }
    }
    if (same) {
      hits.push_back(i);
      if (hits.size() > 1) break;
    }
  }
  return hits;
}

enum class AnchorSide { Before, After };

// Resolves one anchor. For Before, returns the index in R just past the
// anchor; for After, the index in R where the anchor starts. `available` is
// the count of non-conflict lines on that side of the block, `at_edge` is
// true when those lines reach the file boundary.
std::optional<std::size_t> locate_anchor(const Lines& m, const Lines& r, std::size_t block_edge,
                                         std::size_t available, bool at_edge, AnchorSide side,
                                         const AnchorOptions& options) {
  if (available == 0) {
    if (!at_edge) return std::nullopt;
    return side == AnchorSide::Before ? 0 : r.size();
  }
  const auto start_width = std::min(options.min_width, available);
  const auto last_width = std::min(options.max_width, available);
  for (auto width = std::max<std::size_t>(start_width, 1); width <= last_width; ++width) {
    const auto begin = side == AnchorSide::Before ? block_edge - width : block_edge;
    const auto hits = find_sequence(r, m, begin, width);
    if (hits.empty()) return std::nullopt;  // a longer sequence cannot appear either
    if (hits.size() == 1) {
      return side == AnchorSide::Before ? hits[0] + width : hits[0];
    }
  }
  return std::nullopt;
}

}  // namespace

std::string repo_id_for(const std::string& repo_path) {
  auto p = std::filesystem::path(repo_path).lexically_normal();
  if (p.filename().empty()) p = p.parent_path();
  auto name = p.filename().string();
  if (name.size() > 4 && name.ends_with(".git")) name.resize(name.size() - 4);
  if (name.empty() || name == ".") {
    name = std::filesystem::absolute(repo_path).lexically_normal().filename().string();
  }
  return name;
}

DiscoveredMerges discover_merges(const GitRepository& repo) {
  const auto commits = repo.all_commits();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < commits.size(); ++i) index.emplace(commits[i].hash, i);

  // Kahn's algorithm: a commit is ready once all of its parents are emitted.
  std::vector<std::size_t> pending(commits.size(), 0);
  std::vector<std::vector<std::size_t>> children(commits.size());
  for (std::size_t i = 0; i < commits.size(); ++i) {
    for (const auto& p : commits[i].parents) {
      const auto it = index.find(p);
      if (it == index.end()) continue;  // shallow boundary
      ++pending[i];
      children[it->second].push_back(i);
    }
  }
  using Key = std::tuple<std::int64_t, std::string, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (std::size_t i = 0; i < commits.size(); ++i) {
    if (pending[i] == 0) ready.emplace(commits[i].commit_time, commits[i].hash, i);
  }

  DiscoveredMerges out;
  while (!ready.empty()) {
    const auto i = std::get<2>(ready.top());
    ready.pop();
    const auto& c = commits[i];
    for (auto child : children[i]) {
      if (--pending[child] == 0) ready.emplace(commits[child].commit_time, commits[child].hash, child);
    }
    if (c.parents.size() != 2) continue;
    std::vector<std::string> bases;
    try {
      bases = repo.merge_bases(c.parents[0], c.parents[1]);
    } catch (const Error& e) {
      out.skipped.push_back({c.hash, "", std::string("merge-base failed: ") + e.what()});
      continue;
    }
    if (bases.empty()) {
      out.skipped.push_back({c.hash, "", "no common ancestor"});
      continue;
    }
    if (bases.size() > 1) {
      out.skipped.push_back({c.hash, "", "multiple merge bases (criss-cross)"});
      continue;
    }
    out.tuples.push_back({c.hash, c.parents[0], c.parents[1], bases.front()});
  }
  return out;
}

std::vector<MergeScenario> replay_merge(const GitRepository& repo, const MergeTuple& tuple,
                                        const std::string& repo_id, const ReplayOptions& options,
                                        std::vector<SkipRecord>* skipped) {
  auto skip = [&](const std::string& path, const std::string& reason) {
    if (skipped) skipped->push_back({tuple.merge_commit, path, reason});
  };
  const auto side_a =
      changes_by_base(repo.changed_paths(tuple.base, tuple.parent_a, options.detect_renames));
  const auto side_b =
      changes_by_base(repo.changed_paths(tuple.base, tuple.parent_b, options.detect_renames));

  std::vector<MergeScenario> scenarios;
  for (const auto& [base_path, change_a] : side_a) {
    const auto it = side_b.find(base_path);
    if (it == side_b.end()) continue;  // one-sided change merges cleanly
    const auto& change_b = it->second;
    if (change_a.status == 'D' || change_b.status == 'D') continue;  // no text markers
    const auto& path = change_a.new_path;
    const auto language = language_from_path(path);
    if (!language || !options.languages.contains(*language)) continue;

    std::optional<std::string> o;
    if (change_a.status != 'A') o = repo.read_file(tuple.base, base_path);
    const auto a = repo.read_file(tuple.parent_a, change_a.new_path);
    const auto b = repo.read_file(tuple.parent_b, change_b.new_path);
    if (!a || !b) {
      skip(path, "file missing on one side");
      continue;
    }
    auto r = repo.read_file(tuple.merge_commit, change_a.new_path);
    if (!r && change_b.new_path != change_a.new_path) {
      r = repo.read_file(tuple.merge_commit, change_b.new_path);
    }
    const std::string o_text = o.value_or(std::string{});
    if (looks_binary(o_text) || looks_binary(*a) || looks_binary(*b) || (r && looks_binary(*r))) {
      skip(path, "binary file");
      continue;
    }
    if (!is_valid_utf8(o_text) || !is_valid_utf8(*a) || !is_valid_utf8(*b) ||
        (r && !is_valid_utf8(*r))) {
      skip(path, "not valid UTF-8");
      continue;
    }
    auto merged = repo.merge_file(o_text, *a, *b, options.capture_base);
    if (merged.conflicts == 0) continue;

    MergeScenario s;
    s.repo_id = repo_id;
    s.merge_commit = tuple.merge_commit;
    s.parent_a = tuple.parent_a;
    s.parent_b = tuple.parent_b;
    s.base = tuple.base;
    s.file_path = path;
    s.language = *language;
    s.version_o = o_text;
    s.version_a = *a;
    s.version_b = *b;
    s.version_m = std::move(merged.text);
    s.version_r = r;

    try {
      if (parse_conflict_blocks(split_lines(s.version_m)).empty()) {
        skip(path, "merge reported conflicts but produced no marker blocks");
        continue;
      }
    } catch (const MalformedConflict& e) {
      skip(path, e.what());
      continue;
    }
    scenarios.push_back(std::move(s));
  }
  std::sort(scenarios.begin(), scenarios.end(),
            [](const auto& x, const auto& y) { return x.file_path < y.file_path; });
  return scenarios;
}

std::vector<std::optional<Lines>> harvest_resolution(const MergeScenario& scenario,
                                                     const AnchorOptions& options) {
  const auto m = split_lines(scenario.version_m);
  const auto blocks = parse_conflict_blocks(m);
  std::vector<std::optional<Lines>> out(blocks.size());
  if (!scenario.version_r) return out;
  const auto r = split_lines(*scenario.version_r);

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& span = blocks[i].m_span;
    const std::size_t prev_end = i == 0 ? 0 : blocks[i - 1].m_span.end;
    const std::size_t next_begin = i + 1 == blocks.size() ? m.size() : blocks[i + 1].m_span.begin;
    const auto before = locate_anchor(m, r, span.begin, span.begin - prev_end, i == 0,
                                      AnchorSide::Before, options);
    const auto after = locate_anchor(m, r, span.end, next_begin - span.end,
                                     i + 1 == blocks.size(), AnchorSide::After, options);
    if (!before || !after || *after < *before) continue;
    out[i] = Lines(r.begin() + static_cast<std::ptrdiff_t>(*before),
                   r.begin() + static_cast<std::ptrdiff_t>(*after));
  }
  return out;
}

MineResult mine_repository(const std::string& repo_path, const MineOptions& options) {
  const GitRepository repo(repo_path);
  const auto repo_id = repo_id_for(repo_path);
  auto discovered = discover_merges(repo);

  MineResult result;
  result.merges_seen = discovered.tuples.size();
  result.skipped = std::move(discovered.skipped);
  auto tuples = std::move(discovered.tuples);
  if (options.limit && tuples.size() > *options.limit) tuples.resize(*options.limit);
  result.merges_replayed = tuples.size();

  struct Slot {
    std::vector<MergeScenario> scenarios;
    std::vector<SkipRecord> skipped;
  };
  std::vector<Slot> slots(tuples.size());
  const auto jobs = static_cast<unsigned>(
      std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(tuples.size(), 1)));
  // Each worker owns a repository handle and hence its own cat-file pipe.
  std::vector<std::unique_ptr<GitRepository>> handles;
  for (unsigned t = 0; t < jobs; ++t) handles.push_back(std::make_unique<GitRepository>(repo_path));

  std::atomic<std::size_t> next{0};
  auto worker = [&](const GitRepository& local) {
    for (auto i = next.fetch_add(1); i < tuples.size(); i = next.fetch_add(1)) {
      try {
        slots[i].scenarios = replay_merge(local, tuples[i], repo_id, options.replay,
                                          &slots[i].skipped);
      } catch (const std::exception& e) {
        slots[i].skipped.push_back({tuples[i].merge_commit, "", e.what()});
      }
    }
  };
  if (jobs == 1) {
    worker(*handles.front());
  } else {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker, std::cref(*handles[t]));
  }
  for (auto& slot : slots) {
    for (auto& s : slot.scenarios) result.scenarios.push_back(std::move(s));
    for (auto& k : slot.skipped) result.skipped.push_back(std::move(k));
  }
  return result;
}

}  // namespace confgrade
