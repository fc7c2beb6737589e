// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "confgrade/classifier.hpp"
#include "confgrade/coloring.hpp"
#include "confgrade/config.hpp"
#include "confgrade/dataset.hpp"
#include "confgrade/errors.hpp"
#include "confgrade/evaluation.hpp"
#include "confgrade/model_client.hpp"
#include "confgrade/pipeline.hpp"
#include "confgrade/prompt.hpp"
#include "confgrade/similarity.hpp"
#include "fixture_repo.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace cg = confgrade;
namespace ct = confgrade::testing;

namespace {

using Clock = std::chrono::steady_clock;

// Empty on success, otherwise what went wrong.
using Outcome = std::optional<std::string>;

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << parts);
  return os.str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string random_text(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len,
                        const std::string& alphabet) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s(len(rng), ' ');
  for (auto& c : s) c = alphabet[pick(rng)];
  return s;
}

cg::RunConfig fixture_config(const std::filesystem::path& repo, const std::filesystem::path& out) {
  cg::RunConfig config;
  config.repos = {repo.string()};
  config.out = (out / "cases.jsonl").string();
  return config;
}

Outcome fixture_end_to_end() {
  const auto start = Clock::now();
  ct::ScratchDir dir("confgrade-accept");
  ct::build_fixture_repo(dir / "fixture");
  auto config = fixture_config(dir / "fixture", dir.path());
  const auto mined = cg::run_mine(config);
  config.corpus = config.out;
  config.out.clear();
  cg::run_classify(config);

  if (mined.scenarios != 6) return cat("expected 6 scenarios, got ", mined.scenarios);
  const auto cases = cg::read_corpus(config.corpus);
  if (cases.size() != 7) return cat("expected 7 blocks, got ", cases.size());
  std::vector<std::string> rows;
  for (const auto& c : cases) {
    rows.push_back(c.file_path + "#" + std::to_string(c.block_index) + " " + cg::grade_name(c.grade));
  }
  std::sort(rows.begin(), rows.end());
  std::string listing;
  for (const auto& r : rows) listing += r + "\n";
  const auto golden = cg::read_file(ct::source_dir() / "tests" / "golden" / "fixture_grades.txt");
  if (listing != golden) return cat("labels differ from golden file:\n", listing);
  const auto elapsed = seconds_since(start);
  if (elapsed >= 10.0) return cat("took ", elapsed, " s");
  return std::nullopt;
}

Outcome classifier_oracle() {
  const auto start = Clock::now();
  std::size_t pairs = 0;
  for (unsigned a = 0; a < 64; ++a) {
    for (unsigned b = 0; b < 64; ++b) {
      const auto pa = cg::OpSet::from_bits(static_cast<std::uint8_t>(a));
      const auto pb = cg::OpSet::from_bits(static_cast<std::uint8_t>(b));
      const auto na = pa.names();
      const auto nb = pb.names();
      const auto want = cg::oracle::classify({na.begin(), na.end()}, {nb.begin(), nb.end()});
      const auto got = cg::classify_conflict(pa, pb);
      if (got.text != want.text || got.syntax != want.syntax || got.functional != want.functional) {
        return cat("mismatch for ops ", a, " / ", b);
      }
      ++pairs;
    }
  }
  if (pairs != 4096) return cat("enumerated ", pairs, " pairs");
  const auto elapsed = seconds_since(start);
  if (elapsed >= 1.0) return cat("took ", elapsed, " s");
  return std::nullopt;
}

Outcome golden_demos() {
  const std::pair<const char*, const char*> demos[] = {
      {"demo1_text.py", "T"},
      {"demo2_text_functional.py", "T+F"},
      {"demo3_syntax.py", "S"},
      {"demo4_text_syntax_functional.py", "T+S+F"},
  };
  const auto table = cg::MappingTable::defaults();
  for (const auto& [file, want] : demos) {
    const auto m = cg::split_lines(cg::read_file(ct::source_dir() / "tests" / "data" / file));
    const auto blocks = cg::parse_conflict_blocks(m);
    const auto trace = cg::color_conflicts(cg::build_side_merged(m, blocks, cg::Side::A),
                                           cg::build_side_merged(m, blocks, cg::Side::B),
                                           cg::Language::Python, table);
    const auto labels = cg::label_scenario(trace);
    if (labels.size() != 1) return cat(file, ": expected one block, got ", labels.size());
    if (cg::to_string(labels[0]) != want) return cat(file, ": got ", cg::to_string(labels[0]), ", want ", want);
  }
  return std::nullopt;
}

Outcome edit_similarity_oracle() {
  std::mt19937_64 rng(20240101);
  for (int i = 0; i < 1000; ++i) {
    // Mix a tiny alphabet (many matches) with a wide one, plus some multibyte text.
    const std::string alphabet = i % 3 == 0 ? "ab" : i % 3 == 1 ? "abcdefghij (){};=" : "a\xC3\xA9z";
    const auto x = random_text(rng, 0, 200, alphabet);
    const auto y = random_text(rng, 0, 200, alphabet);
    const auto want = cg::oracle::edit_similarity(cg::decode_utf8(x), cg::decode_utf8(y));
    const auto got = cg::edit_similarity(x, y);
    if (got != want) return cat("pair ", i, ": got ", got, ", want ", want);
  }
  return std::nullopt;
}

Outcome winnowing_oracle() {
  std::mt19937_64 rng(424242);
  const cg::WinnowingParams params{3, 2};
  for (int i = 0; i < 500; ++i) {
    const auto s = random_text(rng, 0, 64, "abcXY \t\n");
    const auto got = cg::winnowing_fingerprints(s, params);
    const auto want = cg::oracle::fingerprints(s, 3, 2, cg::kWinnowingHashBase);
    if (std::set<std::uint64_t>(got.begin(), got.end()) != want) return cat("fingerprints differ for string ", i);
  }
  const std::size_t span = params.w + params.k - 1;
  for (int i = 0; i < 200; ++i) {
    const auto shared = random_text(rng, span, span + 8, "abcdefgh");
    const auto x = random_text(rng, 0, 20, "abcdefgh") + shared + random_text(rng, 0, 20, "abcdefgh");
    const auto y = random_text(rng, 0, 20, "abcdefgh") + shared + random_text(rng, 0, 20, "abcdefgh");
    const auto fx = cg::winnowing_fingerprints(x, params);
    const auto fy = cg::winnowing_fingerprints(y, params);
    std::vector<std::uint64_t> common;
    std::set_intersection(fx.begin(), fx.end(), fy.begin(), fy.end(), std::back_inserter(common));
    if (common.empty()) return cat("no shared fingerprint for pair ", i);
  }
  return std::nullopt;
}

Outcome match_rule() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double edges[] = {0.0, 0.7999999999999999, 0.8, 0.8000000000000002, 1.0};
  auto draw = [&]() -> std::optional<double> {
    switch (rng() % 4) {
      case 0: return std::nullopt;
      case 1: return edges[rng() % 5];
      default: return u(rng);
    }
  };
  for (int i = 0; i < 10000; ++i) {
    const cg::SimilarityScores s{draw(), draw(), draw()};
    const bool want = cg::oracle::matches({s.es, s.ws, s.ss}, 0.8);
    if (cg::matches_ground_truth(s) != want) return cat("triple ", i, " disagrees");
  }
  if (cg::matches_ground_truth({std::nullopt, std::nullopt, std::nullopt})) return "all-missing triple matched";
  return std::nullopt;
}

Outcome aggregation() {
  // 8 resolved and correct, 4 resolved and wrong, 8 unprocessable.
  const char* grades[] = {"T", "S", "F", "T+S", "T+F", "S+F", "T+S+F", "Unclassified"};
  std::vector<cg::CaseRecord> cases;
  cg::ScriptedModelClient client;
  for (int i = 0; i < 20; ++i) {
    const auto lang = cg::kAllLanguages[i % 4];
    auto c = ct::synthetic_case(cat("case", 10 + i, ".src"), lang, cg::parse_grade(grades[i % 8]));
    c.ground_truth = cg::Lines{"total = compute_total(items)"};
    if (i < 8) {
      client.set_script(c.case_id, {{"```\ntotal = compute_total(items)\n```", false}});
    } else if (i < 12) {
      client.set_script(c.case_id, {{"```\nraise NotImplementedError\n```", false}});
    } else {
      client.set_script(c.case_id, {{"I cannot resolve this.", false}});
    }
    cases.push_back(std::move(c));
  }
  cg::EvaluationOptions options;
  options.jobs = 3;
  const auto records = cg::evaluate_cases(cases, {}, client, options);
  const auto report = cg::evaluate_run(cases, records);
  const auto& o = report.overall;
  if (o.n != 20 || o.g != 12 || o.c != 8) return cat("counts n=", o.n, " g=", o.g, " c=", o.c);
  if (!o.accuracy || std::abs(*o.accuracy - 0.40) > 1e-12) return "accuracy is not 0.40";
  if (!o.precision || std::abs(*o.precision - 8.0 / 12.0) > 1e-12) return "precision is not 8/12";
  std::size_t n = 0, g = 0, c = 0;
  for (const auto& [name, t] : report.regions) {
    n += t.n;
    g += t.g;
    c += t.c;
  }
  if (n != o.n || g != o.g || c != o.c) return "region tallies do not add up to the overall tally";
  return std::nullopt;
}

// Counts words, so limits bite at predictable places.
class WordTokenizer : public cg::Tokenizer {
 public:
  std::size_t count(std::string_view text) const override {
    std::size_t n = 0;
    bool in_word = false;
    for (char ch : text) {
      const bool space = ch == ' ' || ch == '\n' || ch == '\t';
      if (!space && !in_word) ++n;
      in_word = !space;
    }
    return n;
  }
};

Outcome context_fitting() {
  std::mt19937_64 rng(8);
  const WordTokenizer tokenizer;
  const auto tmpl = cg::PromptTemplate::default_template();
  std::size_t fitted = 0;
  for (int i = 0; i < 200; ++i) {
    cg::MergeScenario s;
    s.repo_id = "prop";
    s.merge_commit = "0";
    s.file_path = cat("f", i, ".py");
    s.language = cg::Language::Python;
    cg::Lines m;
    const auto pre = rng() % 120;
    for (std::size_t k = 0; k < pre; ++k) m.push_back(cat("before_", k, " = ", k));
    const auto begin = m.size();
    m.push_back("<<<<<<< a");
    const auto a = 1 + rng() % 8;
    for (std::size_t k = 0; k < a; ++k) m.push_back(cat("    left ", k));
    m.push_back("=======");
    const auto b = rng() % 8;
    for (std::size_t k = 0; k < b; ++k) m.push_back(cat("    right ", k));
    m.push_back(">>>>>>> b");
    const auto end = m.size();
    const auto post = rng() % 120;
    for (std::size_t k = 0; k < post; ++k) m.push_back(cat("after_", k, " = ", k));
    s.version_m = cg::to_file_text(m);

    auto c = ct::synthetic_case(s.file_path, cg::Language::Python, std::nullopt);
    c.scenario_id = s.id();
    c.case_id = cg::make_case_id(c.scenario_id, 0);
    c.m_span = {begin, end};
    const cg::Lines conflict(m.begin() + static_cast<std::ptrdiff_t>(begin),
                             m.begin() + static_cast<std::ptrdiff_t>(end));

    cg::EvaluationOptions options;
    options.max_lines = rng() % 150;
    options.context_limit = 150 + rng() % 900;
    try {
      const auto bundle = cg::prepare_bundle(c, &s, options, tmpl, tokenizer);
      ++fitted;
      if (bundle.token_count > options.context_limit) return cat("case ", i, " exceeds the limit");
      if (tokenizer.count(bundle.rendered_prompt) != bundle.token_count) return cat("case ", i, " miscounted");
      if (bundle.conflict != conflict) return cat("case ", i, " lost conflict lines");
      if (bundle.pre_context.size() > options.max_lines || bundle.post_context.size() > options.max_lines) {
        return cat("case ", i, " took more context than max_lines");
      }
    } catch (const cg::Error& e) {
      if (e.kind() != cg::ErrorKind::ConflictTooLarge) throw;
      const auto bare = cg::assemble_prompt(cg::Language::Python, conflict, {}, tmpl);
      if (tokenizer.count(bare) <= options.context_limit) return cat("case ", i, " rejected although it fits");
    }
    options.no_context = true;
    options.context_limit = 1 << 20;
    const auto bare = cg::prepare_bundle(c, &s, options, tmpl, tokenizer);
    if (!bare.pre_context.empty() || !bare.post_context.empty()) return cat("case ", i, " kept context");
  }
  if (fitted < 150) return cat("only ", fitted, " of 200 cases fitted; the generator is off");
  return std::nullopt;
}

class CountingClient : public cg::ModelClient {
 public:
  explicit CountingClient(cg::ScriptedModelClient inner) : inner_(std::move(inner)) {}
  std::string complete(const cg::ChatRequest& r) override {
    ++calls;
    return inner_.complete(r);
  }
  unsigned calls = 0;

 private:
  cg::ScriptedModelClient inner_;
};

Outcome retry_policy() {
  for (unsigned failures = 0; failures <= 12; ++failures) {
    for (bool transport : {false, true}) {
      std::vector<cg::ScriptedModelClient::Entry> script;
      for (unsigned k = 0; k < failures; ++k) script.push_back({transport ? "timeout" : "no code here", transport});
      script.push_back({"```\nfixed\n```", false});
      cg::ScriptedModelClient inner;
      inner.set_script("case#0", script);
      CountingClient client(std::move(inner));

      auto c = ct::synthetic_case("retry.py", cg::Language::Python, std::nullopt);
      c.case_id = "case#0";
      const auto r = cg::evaluate_case(c, nullptr, client, {});
      if (client.calls > 10) return cat("made ", client.calls, " requests");
      if (failures < 10) {
        if (r.outcome != cg::Outcome::Resolved || r.attempt_count != failures + 1 || r.candidate != "fixed") {
          return cat("expected success on attempt ", failures + 1);
        }
      } else if (r.outcome != cg::Outcome::Unprocessable || r.attempt_count != 10 || r.candidate ||
                 r.failures.size() != 10 || r.matched) {
        return cat("expected Unprocessable after 10 attempts with ", failures, " scripted failures");
      }
    }
  }
  return std::nullopt;
}

// Every regular file under `root`, relative path -> contents.
std::map<std::string, std::string> snapshot(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[std::filesystem::relative(e.path(), root).string()] = cg::read_file(e.path());
  }
  return out;
}

void full_run(const std::filesystem::path& repo, const std::filesystem::path& out, unsigned jobs) {
  std::filesystem::create_directories(out);
  const auto mock = out.parent_path() / (out.filename().string() + "-mock.json");
  cg::write_file(mock, R"({"responses": {}, "default": ["not yet", "```\nreturn quick_sort(left) + middle\n```"]})");
  auto config = fixture_config(repo, out);
  config.jobs = jobs;
  cg::run_mine(config);
  config.corpus = config.out;
  config.out.clear();
  cg::run_classify(config);
  config.out = (out / "stats.json").string();
  cg::run_stats(config);
  config.mock = mock.string();
  config.out = (out / "records.jsonl").string();
  cg::run_evaluate(config);
  config.records = config.out;
  config.out = (out / "report.json").string();
  cg::run_report(config);
  config.out = (out / "export.jsonl").string();
  cg::run_export(config);
}

Outcome determinism() {
  ct::ScratchDir dir("confgrade-determinism");
  ct::build_fixture_repo(dir / "fixture");
  full_run(dir / "fixture", dir / "run1", 1);
  full_run(dir / "fixture", dir / "run2", 3);
  const auto a = snapshot(dir / "run1");
  const auto b = snapshot(dir / "run2");
  if (a.size() < 8) return cat("expected the full set of outputs, found ", a.size(), " files");
  for (const auto& [name, content] : a) {
    const auto it = b.find(name);
    if (it == b.end()) return cat(name, " missing from the second run");
    if (it->second != content) return cat(name, " differs between runs");
  }
  if (a.size() != b.size()) return "the runs wrote different file sets";
  return std::nullopt;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"fixture repository end to end", fixture_end_to_end},
      {"classifier matches brute-force rules on 4096 pairs", classifier_oracle},
      {"demo conflicts grade T, T+F, S, T+S+F", golden_demos},
      {"edit similarity equals DP Levenshtein on 1000 pairs", edit_similarity_oracle},
      {"winnowing fingerprints and shared-substring guarantee", winnowing_oracle},
      {"match rule on randomized score triples", match_rule},
      {"accuracy 0.40 and precision 8/12 on 20 mocked cases", aggregation},
      {"context fitting over 200 random cases", context_fitting},
      {"retry cap of 10 and Unprocessable marking", retry_policy},
      {"two full runs are byte-identical", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result = cat("exception: ", e.what());
    }
    std::printf("[%s] criterion %zu: %s", result ? "FAIL" : "PASS", i + 1, criteria[i].first.c_str());
    if (result) {
      std::printf(" (%s)", result->c_str());
      ++failed;
    }
    std::printf("\n");
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
