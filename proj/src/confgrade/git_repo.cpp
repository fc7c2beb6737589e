#include "confgrade/git_repo.hpp"

#include <cstdlib>
#include <sstream>

#include "confgrade/errors.hpp"
#include "confgrade/process.hpp"
#include "confgrade/text.hpp"

namespace confgrade {
namespace {

std::vector<std::string> split_nul(const std::string& data) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < data.size()) {
    auto end = data.find('\0', start);
    if (end == std::string::npos) end = data.size();
    out.push_back(data.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

class TempDir {
 public:
  TempDir() {
    auto tmpl = (std::filesystem::temp_directory_path() / "confgrade-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw Error(ErrorKind::Io, "mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

GitRepository::GitRepository(std::filesystem::path root) : root_(std::move(root)) {
  const auto r = run_process(git_args({"rev-parse", "--git-dir"}));
  if (r.exit_code != 0) {
    throw Error(ErrorKind::MissingInput, "not a git repository: " + root_.string());
  }
}

GitRepository::~GitRepository() = default;

std::vector<std::string> GitRepository::git_args(std::initializer_list<std::string> args) const {
  std::vector<std::string> argv{"git", "-C", root_.string(), "-c", "core.quotepath=off"};
  argv.insert(argv.end(), args.begin(), args.end());
  return argv;
}

std::vector<CommitInfo> GitRepository::all_commits() const {
  const auto r = run_process(git_args({"rev-list", "--all", "--parents", "--timestamp"}));
  if (r.exit_code != 0) throw Error(ErrorKind::Git, "git rev-list failed: " + r.err);
  std::vector<CommitInfo> commits;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    CommitInfo info;
    fields >> info.commit_time >> info.hash;
    std::string parent;
    while (fields >> parent) info.parents.push_back(parent);
    commits.push_back(std::move(info));
  }
  return commits;
}

std::vector<std::string> GitRepository::merge_bases(const std::string& a,
                                                    const std::string& b) const {
  const auto r = run_process(git_args({"merge-base", "--all", a, b}));
  // Exit status 1 with no output means the histories share no ancestor.
  if (r.exit_code == 1 && r.out.empty()) return {};
  if (r.exit_code != 0) throw Error(ErrorKind::Git, "git merge-base failed: " + r.err);
  std::vector<std::string> bases;
  std::istringstream in(r.out);
  std::string hash;
  while (in >> hash) bases.push_back(hash);
  return bases;
}

std::vector<PathChange> GitRepository::changed_paths(const std::string& from,
                                                     const std::string& to,
                                                     bool detect_renames) const {
  const auto r = run_process(git_args({"diff", "--name-status", "-z", "--no-ext-diff",
                                       detect_renames ? "-M" : "--no-renames", from, to}));
  if (r.exit_code != 0) throw Error(ErrorKind::Git, "git diff failed: " + r.err);
  const auto fields = split_nul(r.out);
  std::vector<PathChange> changes;
  for (std::size_t i = 0; i < fields.size();) {
    const auto& status = fields[i++];
    if (status.empty() || i >= fields.size()) break;
    PathChange change;
    change.status = status[0];
    if (change.status == 'R' || change.status == 'C') {
      change.old_path = fields[i++];
      if (i >= fields.size()) break;
      change.new_path = fields[i++];
    } else {
      change.new_path = fields[i++];
      change.old_path = change.status == 'A' ? std::string{} : change.new_path;
    }
    changes.push_back(std::move(change));
  }
  return changes;
}

std::optional<std::string> GitRepository::read_file(const std::string& commit,
                                                    const std::string& path) const {
  std::lock_guard lock(batch_mutex_);
  if (!batch_) batch_ = std::make_unique<ChildProcess>(git_args({"cat-file", "--batch"}));
  batch_->write(commit + ":" + path + "\n");
  const auto header = batch_->read_line();
  // "<oid> <type> <size>" or "<object> missing" / "ambiguous".
  std::istringstream fields(header);
  std::string oid, type;
  std::size_t size = 0;
  fields >> oid >> type;
  if (type != "blob" && type != "tree" && type != "commit" && type != "tag") return std::nullopt;
  fields >> size;
  auto content = batch_->read_exact(size);
  batch_->read_exact(1);  // trailing LF
  if (type != "blob") return std::nullopt;
  return content;
}

FileMergeResult GitRepository::merge_file(const std::string& base, const std::string& ours,
                                          const std::string& theirs, bool with_base) const {
  TempDir dir;
  const auto o = dir.path() / "base";
  const auto a = dir.path() / "a";
  const auto b = dir.path() / "b";
  write_file(o, base);
  write_file(a, ours);
  write_file(b, theirs);
  std::vector<std::string> argv{"git", "-c", "merge.conflictstyle=merge", "merge-file", "-p"};
  if (with_base) argv.push_back("--diff3");
  for (const auto* label : {"a", "base", "b"}) {
    argv.push_back("-L");
    argv.push_back(label);
  }
  argv.push_back(a.string());
  argv.push_back(o.string());
  argv.push_back(b.string());
  auto r = run_process(argv);
  // Exit status is the conflict count (capped); negative values mean failure.
  if (r.exit_code < 0 || r.exit_code > 127) {
    throw Error(ErrorKind::Git, "git merge-file failed: " + r.err);
  }
  return {std::move(r.out), r.exit_code};
}

}  // namespace confgrade
