#include <gtest/gtest.h>

#include "confgrade/dataset.hpp"
#include "confgrade/evaluation.hpp"
#include "confgrade/process.hpp"
#include "confgrade/text.hpp"
#include "fixture_repo.hpp"

namespace cg = confgrade;
namespace ct = confgrade::testing;

namespace {

cg::ProcessResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), CONFGRADE_CLI);
  return cg::run_process(args);
}

// "path#block grade" per case, sorted; commit hashes left out.
std::string grade_listing(const std::vector<cg::CaseRecord>& cases) {
  std::vector<std::string> rows;
  for (const auto& c : cases) {
    rows.push_back(c.file_path + "#" + std::to_string(c.block_index) + " " + cg::grade_name(c.grade));
  }
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& r : rows) out += r + "\n";
  return out;
}

class CliPipeline : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new ct::ScratchDir("confgrade-cli");
    ct::build_fixture_repo(*dir_ / "fixture");
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static std::string path(const std::string& name) { return (*dir_ / name).string(); }

  static ct::ScratchDir* dir_;
};

ct::ScratchDir* CliPipeline::dir_ = nullptr;

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).exit_code, 2);
  EXPECT_EQ(cli({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(cli({"classify", "--no-such-flag"}).exit_code, 2);
  EXPECT_EQ(cli({"--help"}).exit_code, 0);
  const auto v = cli({"--version"});
  EXPECT_EQ(v.exit_code, 0);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
}

TEST(Cli, MissingInputs) {
  const auto r = cli({"classify", "--corpus", "/nonexistent/cases.jsonl"});
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_EQ(r.err.rfind("confgrade: ", 0), 0u);
  EXPECT_EQ(cli({"stats", "--config", "/nonexistent/run.json"}).exit_code, 3);
}

TEST(Cli, InvalidConfig) {
  EXPECT_EQ(cli({"mine", "--langs", "cobol", "--repo", "/tmp", "--out", "/tmp/x.jsonl"}).exit_code, 4);
  ct::ScratchDir dir;
  cg::write_file(dir / "run.json", R"({"threshold": 7})");
  EXPECT_EQ(cli({"stats", "--config", (dir / "run.json").string(), "--corpus", "x"}).exit_code, 4);
}

TEST(Cli, NotARepositoryIsMissingInput) {
  ct::ScratchDir dir;
  EXPECT_EQ(cli({"mine", "--repo", dir.path().string(), "--out", (dir / "c.jsonl").string()}).exit_code, 3);
}

TEST(Cli, MappingDump) {
  const auto r = cli({"mapping"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("\"java\""), std::string::npos);
}

TEST_F(CliPipeline, MineClassifyStatsEvaluateReport) {
  const auto corpus = path("cases.jsonl");
  auto r = cli({"mine", "--repo", path("fixture"), "--out", corpus});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(cg::scenarios_path_for(corpus)));
  for (const auto& c : cg::read_corpus(corpus)) EXPECT_FALSE(c.grade.has_value());

  r = cli({"classify", "--corpus", corpus});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto cases = cg::read_corpus(corpus);
  EXPECT_EQ(grade_listing(cases),
            cg::read_file(ct::source_dir() / "tests" / "golden" / "fixture_grades.txt"));

  r = cli({"stats", "--corpus", corpus, "--out", path("stats.json")});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(cg::read_file(path("stats.txt")),
            cg::read_file(ct::source_dir() / "tests" / "golden" / "fixture_stats.txt"));
  EXPECT_EQ(r.out, cg::read_file(path("stats.txt")));

  cg::write_file(path("mock.json"), R"({"default": ["```\nprint('hi')\n```"]})");
  r = cli({"evaluate", "--corpus", corpus, "--mock", path("mock.json"), "--out", path("records.jsonl"),
           "--jobs", "2"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto records = cg::read_records(path("records.jsonl"));
  EXPECT_EQ(records.size(), cases.size());

  r = cli({"report", "--corpus", corpus, "--records", path("records.jsonl"), "--out", path("report.json")});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(path("report.txt")));
  EXPECT_NE(r.out.find("Python"), std::string::npos);

  r = cli({"export", "--corpus", corpus, "--out", path("export.jsonl")});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(cg::read_file(path("export.jsonl")).find("\"pre_context\""), std::string::npos);
}

TEST_F(CliPipeline, ReportRejectsMismatchedRecords) {
  const auto corpus = path("mismatch.jsonl");
  ASSERT_EQ(cli({"mine", "--repo", path("fixture"), "--out", corpus}).exit_code, 0);
  ASSERT_EQ(cli({"classify", "--corpus", corpus}).exit_code, 0);
  cg::write_file(path("mock2.json"), R"({"default": ["```\nx\n```"]})");
  ASSERT_EQ(cli({"evaluate", "--corpus", corpus, "--mock", path("mock2.json"), "--out",
                 path("r2.jsonl")}).exit_code, 0);
  auto lines = cg::split_lines(cg::read_file(path("r2.jsonl")));
  lines.pop_back();
  cg::write_file(path("r2.jsonl"), cg::to_file_text(lines));
  EXPECT_EQ(cli({"report", "--corpus", corpus, "--records", path("r2.jsonl"), "--out",
                 path("r2.json")}).exit_code, 5);
}

TEST_F(CliPipeline, NoContextSendsBareConflict) {
  const auto corpus = path("bare.jsonl");
  ASSERT_EQ(cli({"mine", "--repo", path("fixture"), "--out", corpus}).exit_code, 0);
  cg::write_file(path("mock3.json"), R"({"default": ["```\nx\n```"]})");
  ASSERT_EQ(cli({"evaluate", "--corpus", corpus, "--mock", path("mock3.json"), "--no-context", "--out",
                 path("bare_records.jsonl")}).exit_code, 0);
  for (const auto& r : cg::read_records(path("bare_records.jsonl"))) {
    EXPECT_EQ(r.pre_context_lines, 0u);
    EXPECT_EQ(r.post_context_lines, 0u);
  }
  ASSERT_EQ(cli({"evaluate", "--corpus", corpus, "--mock", path("mock3.json"), "--out",
                 path("ctx_records.jsonl")}).exit_code, 0);
  std::size_t with_context = 0;
  for (const auto& r : cg::read_records(path("ctx_records.jsonl"))) with_context += r.pre_context_lines;
  EXPECT_GT(with_context, 0u);
}

TEST_F(CliPipeline, LimitCapsReplayedMerges) {
  const auto corpus = path("limited.jsonl");
  ASSERT_EQ(cli({"mine", "--repo", path("fixture"), "--out", corpus, "--limit", "1"}).exit_code, 0);
  EXPECT_EQ(cg::read_corpus(corpus).size(), 1u);
}

TEST_F(CliPipeline, LanguageFilter) {
  const auto corpus = path("java.jsonl");
  ASSERT_EQ(cli({"mine", "--repo", path("fixture"), "--out", corpus, "--langs", "java"}).exit_code, 0);
  const auto cases = cg::read_corpus(corpus);
  ASSERT_EQ(cases.size(), 2u);
  for (const auto& c : cases) EXPECT_EQ(c.language, cg::Language::Java);
}
