#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace confgrade {

class ChildProcess;

struct CommitInfo {
  std::string hash;
  std::int64_t commit_time = 0;
  std::vector<std::string> parents;
};

// One changed file between two commits. `old_path` differs from `new_path`
// only for renames; additions have an empty `old_path`.
struct PathChange {
  char status = 'M';
  std::string old_path;
  std::string new_path;
};

struct FileMergeResult {
  std::string text;
  int conflicts = 0;
};

// Read-only access to a local repository through the git executable.
class GitRepository {
 public:
  explicit GitRepository(std::filesystem::path root);
  ~GitRepository();

  GitRepository(const GitRepository&) = delete;
  GitRepository& operator=(const GitRepository&) = delete;

  const std::filesystem::path& root() const noexcept { return root_; }

  // Every commit reachable from any ref, unordered.
  std::vector<CommitInfo> all_commits() const;

  // All best common ancestors. Empty when the histories are unrelated.
  std::vector<std::string> merge_bases(const std::string& a, const std::string& b) const;

  std::vector<PathChange> changed_paths(const std::string& from, const std::string& to,
                                        bool detect_renames) const;

  // Blob contents of `path` at `commit`; nullopt if absent or not a blob.
  std::optional<std::string> read_file(const std::string& commit, const std::string& path) const;

  // Three-way line merge of full texts, default two-sided markers labelled
  // "a" and "b" (plus "base" when `with_base`).
  FileMergeResult merge_file(const std::string& base, const std::string& ours,
                             const std::string& theirs, bool with_base = false) const;

 private:
  std::vector<std::string> git_args(std::initializer_list<std::string> args) const;

  std::filesystem::path root_;
  mutable std::mutex batch_mutex_;
  mutable std::unique_ptr<ChildProcess> batch_;
};

}  // namespace confgrade
