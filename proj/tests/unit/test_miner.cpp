#include <gtest/gtest.h>

#include "confgrade/git_repo.hpp"
#include "confgrade/miner.hpp"
#include "confgrade/virtual_merge.hpp"
#include "fixture_repo.hpp"

namespace cg = confgrade;
namespace ct = confgrade::testing;

namespace {

const std::string kBase = "def f():\n    return 1\n\n\ndef g():\n    return 2\n\n\ndef h():\n    return 3\n";
const std::string kSideA = "def f():\n    return 1\n\n\ndef g():\n    return 20\n\n\ndef h():\n    return 3\n";
const std::string kSideB = "def f():\n    return 1\n\n\ndef g():\n    return 200\n\n\ndef h():\n    return 3\n";
const std::string kResolved = "def f():\n    return 1\n\n\ndef g():\n    return 220\n\n\ndef h():\n    return 3\n";

// main: O -> A; side: O -> B; merge resolved with `resolution` (or the
// file deleted when it is empty).
std::string conflicting_merge(ct::ScriptedRepo& repo, const std::string& path,
                              const std::string& resolution, const std::string& base = kBase,
                              const std::string& a = kSideA, const std::string& b = kSideB) {
  repo.write(path, base);
  repo.commit("base");
  repo.git({"checkout", "-q", "-b", "side"});
  repo.write(path, b);
  repo.commit("side");
  repo.git({"checkout", "-q", "main"});
  repo.write(path, a);
  repo.commit("main");
  repo.git({"merge", "-q", "--no-edit", "--no-ff", "side"}, true);
  if (resolution.empty()) {
    repo.remove(path);
  } else {
    repo.write(path, resolution);
  }
  return repo.commit("merge");
}

cg::MineOptions options() { return cg::MineOptions{}; }

}  // namespace

TEST(Miner, LinearHistoryHasNoMerges) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "linear");
  repo.write("a.py", "x = 1\n");
  repo.commit("one");
  repo.write("a.py", "x = 2\n");
  repo.commit("two");
  const auto result = cg::mine_repository((dir / "linear").string(), options());
  EXPECT_EQ(result.merges_seen, 0u);
  EXPECT_TRUE(result.scenarios.empty());
}

TEST(Miner, ConflictingMergeYieldsScenario) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "proj");
  const auto merge = conflicting_merge(repo, "pkg/mod.py", kResolved);
  const auto result = cg::mine_repository((dir / "proj").string(), options());
  ASSERT_EQ(result.merges_seen, 1u);
  ASSERT_EQ(result.scenarios.size(), 1u);
  const auto& s = result.scenarios[0];
  EXPECT_EQ(s.repo_id, "proj");
  EXPECT_EQ(s.merge_commit, merge);
  EXPECT_EQ(s.file_path, "pkg/mod.py");
  EXPECT_EQ(s.language, cg::Language::Python);
  EXPECT_EQ(s.version_o, kBase);
  EXPECT_EQ(s.version_a, kSideA);
  EXPECT_EQ(s.version_b, kSideB);
  EXPECT_EQ(s.version_r, kResolved);
  const auto blocks = cg::parse_conflict_blocks(cg::split_lines(s.version_m));
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].a_lines, (cg::Lines{"    return 20"}));
  EXPECT_EQ(blocks[0].b_lines, (cg::Lines{"    return 200"}));

  const auto harvested = cg::harvest_resolution(s);
  ASSERT_EQ(harvested.size(), 1u);
  ASSERT_TRUE(harvested[0].has_value());
  EXPECT_EQ(*harvested[0], (cg::Lines{"    return 220"}));
}

TEST(Miner, CleanMergeYieldsNothing) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "clean");
  repo.write("a.py", kBase);
  repo.write("b.py", kBase);
  repo.commit("base");
  repo.git({"checkout", "-q", "-b", "side"});
  repo.write("b.py", kSideB);
  repo.commit("side");
  repo.git({"checkout", "-q", "main"});
  repo.write("a.py", kSideA);
  repo.commit("main");
  repo.git({"merge", "-q", "--no-edit", "--no-ff", "side"});
  const auto result = cg::mine_repository((dir / "clean").string(), options());
  EXPECT_EQ(result.merges_seen, 1u);
  EXPECT_EQ(result.merges_replayed, 1u);
  EXPECT_TRUE(result.scenarios.empty());
}

TEST(Miner, OctopusMergesAreIgnored) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "octo");
  repo.write("a.py", "x = 1\n");
  repo.commit("base");
  for (const std::string b : {"one", "two"}) {
    repo.git({"checkout", "-q", "-b", b, "main"});
    repo.write(b + ".py", "y = 1\n");
    repo.commit(b);
  }
  repo.git({"checkout", "-q", "main"});
  repo.git({"merge", "-q", "--no-edit", "--no-ff", "one", "two"});
  EXPECT_EQ(repo.git({"rev-list", "--parents", "-n", "1", "HEAD"}).size(), 4 * 41u);
  const auto result = cg::mine_repository((dir / "octo").string(), options());
  EXPECT_EQ(result.merges_seen, 0u);
}

TEST(Miner, UnsupportedAndFilteredLanguagesAreIgnored) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "txt");
  conflicting_merge(repo, "notes.txt", kResolved);
  EXPECT_TRUE(cg::mine_repository((dir / "txt").string(), options()).scenarios.empty());

  ct::ScriptedRepo py(dir / "py");
  conflicting_merge(py, "m.py", kResolved);
  auto opts = options();
  opts.replay.languages = {cg::Language::Java};
  EXPECT_TRUE(cg::mine_repository((dir / "py").string(), opts).scenarios.empty());
}

TEST(Miner, AddAddConflictHasEmptyBase) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "addadd");
  repo.write("README.md", "x\n");
  repo.commit("root");
  repo.git({"checkout", "-q", "-b", "side"});
  repo.write("new.py", "VALUE = 2\n");
  repo.commit("side");
  repo.git({"checkout", "-q", "main"});
  repo.write("new.py", "VALUE = 1\n");
  repo.commit("main");
  repo.git({"merge", "-q", "--no-edit", "--no-ff", "side"}, true);
  repo.write("new.py", "VALUE = 3\n");
  repo.commit("merge");
  const auto result = cg::mine_repository((dir / "addadd").string(), options());
  ASSERT_EQ(result.scenarios.size(), 1u);
  EXPECT_EQ(result.scenarios[0].version_o, "");
  const auto harvested = cg::harvest_resolution(result.scenarios[0]);
  ASSERT_TRUE(harvested[0].has_value());
  EXPECT_EQ(*harvested[0], (cg::Lines{"VALUE = 3"}));
}

TEST(Miner, BinaryFilesAreSkippedWithReason) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "bin");
  conflicting_merge(repo, "blob.c", std::string("x\0y\n", 4), std::string("a\0b\n", 4),
                    std::string("a\0c\n", 4), std::string("a\0d\n", 4));
  const auto result = cg::mine_repository((dir / "bin").string(), options());
  EXPECT_TRUE(result.scenarios.empty());
  bool found = false;
  for (const auto& s : result.skipped) found = found || s.reason == "binary file";
  EXPECT_TRUE(found);
}

TEST(Miner, DeletedInResolutionHasNoGroundTruth) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "del");
  conflicting_merge(repo, "m.py", "");
  const auto result = cg::mine_repository((dir / "del").string(), options());
  ASSERT_EQ(result.scenarios.size(), 1u);
  EXPECT_FALSE(result.scenarios[0].version_r.has_value());
  const auto harvested = cg::harvest_resolution(result.scenarios[0]);
  ASSERT_EQ(harvested.size(), 1u);
  EXPECT_FALSE(harvested[0].has_value());
}

TEST(Miner, RewrittenAnchorsAreUnalignable) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "anchor");
  conflicting_merge(repo, "m.py", "completely = 'different'\n");
  const auto result = cg::mine_repository((dir / "anchor").string(), options());
  ASSERT_EQ(result.scenarios.size(), 1u);
  const auto harvested = cg::harvest_resolution(result.scenarios[0]);
  EXPECT_FALSE(harvested[0].has_value());
}

TEST(Miner, CrissCrossMergesAreSkipped) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "criss");
  repo.write("a.py", "x = 1\n");
  repo.commit("base");
  repo.git({"checkout", "-q", "-b", "side"});
  repo.write("b.py", "y = 1\n");
  const auto side1 = repo.commit("side one");
  repo.git({"checkout", "-q", "main"});
  repo.write("c.py", "z = 1\n");
  const auto main1 = repo.commit("main one");
  repo.git({"merge", "-q", "--no-edit", "--no-ff", "side"});
  repo.git({"checkout", "-q", "side"});
  repo.git({"merge", "-q", "--no-edit", "--no-ff", main1});
  repo.git({"checkout", "-q", "main"});
  repo.git({"merge", "-q", "--no-edit", "--no-ff", "side"});
  (void)side1;
  const auto result = cg::mine_repository((dir / "criss").string(), options());
  EXPECT_EQ(result.merges_seen, 2u);
  ASSERT_EQ(result.skipped.size(), 1u);
  EXPECT_NE(result.skipped[0].reason.find("criss-cross"), std::string::npos);
}

TEST(Miner, TopologicalOrderAndLimit) {
  ct::ScratchDir dir;
  ct::build_fixture_repo(dir / "fx");
  const cg::GitRepository git((dir / "fx").string());
  const auto found = cg::discover_merges(git);
  ASSERT_EQ(found.tuples.size(), 6u);
  // Each merge's first parent is the previous merge's descendant.
  for (std::size_t i = 1; i < found.tuples.size(); ++i) {
    EXPECT_EQ(git.merge_bases(found.tuples[i - 1].merge_commit, found.tuples[i].merge_commit),
              std::vector<std::string>{found.tuples[i - 1].merge_commit});
  }
  auto opts = options();
  opts.limit = 2;
  const auto limited = cg::mine_repository((dir / "fx").string(), opts);
  EXPECT_EQ(limited.merges_seen, 6u);
  EXPECT_EQ(limited.merges_replayed, 2u);
  EXPECT_EQ(limited.scenarios.size(), 2u);
}

TEST(Miner, ParallelMiningIsDeterministic) {
  ct::ScratchDir dir;
  ct::build_fixture_repo(dir / "fx");
  auto serial = options();
  auto parallel = options();
  parallel.jobs = 4;
  const auto x = cg::mine_repository((dir / "fx").string(), serial);
  const auto y = cg::mine_repository((dir / "fx").string(), parallel);
  EXPECT_EQ(x.scenarios, y.scenarios);
  EXPECT_EQ(x.scenarios.size(), 6u);
}

TEST(Miner, FixtureRepoHashesAreReproducible) {
  ct::ScratchDir one;
  ct::ScratchDir two;
  ct::build_fixture_repo(one / "fx");
  ct::build_fixture_repo(two / "fx");
  const auto x = cg::mine_repository((one / "fx").string(), options());
  const auto y = cg::mine_repository((two / "fx").string(), options());
  ASSERT_EQ(x.scenarios.size(), y.scenarios.size());
  for (std::size_t i = 0; i < x.scenarios.size(); ++i) {
    EXPECT_EQ(x.scenarios[i].merge_commit, y.scenarios[i].merge_commit);
  }
}

TEST(Miner, RepoIdIsDirectoryName) {
  EXPECT_EQ(cg::repo_id_for("/tmp/some/project"), "project");
  EXPECT_EQ(cg::repo_id_for("/tmp/some/project/"), "project");
}

TEST(GitRepository, MergeFileLabels) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "r");
  const cg::GitRepository git((dir / "r").string());
  const auto res = git.merge_file("x\n", "a\n", "b\n", true);
  EXPECT_EQ(res.conflicts, 1);
  EXPECT_EQ(res.text, "<<<<<<< a\na\n||||||| base\nx\n=======\nb\n>>>>>>> b\n");
  EXPECT_EQ(git.merge_file("x\n", "a\n", "x\n").conflicts, 0);
}

TEST(GitRepository, ReadMissingFile) {
  ct::ScratchDir dir;
  ct::ScriptedRepo repo(dir / "r");
  repo.write("a.py", "x\n");
  const auto head = repo.commit("one");
  const cg::GitRepository git((dir / "r").string());
  EXPECT_EQ(git.read_file(head, "a.py"), "x\n");
  EXPECT_FALSE(git.read_file(head, "nope.py").has_value());
}
