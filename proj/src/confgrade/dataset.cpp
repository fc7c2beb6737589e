#include "confgrade/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "confgrade/errors.hpp"
#include "json.hpp"

namespace confgrade {
namespace {

using json = nlohmann::ordered_json;

json lines_json(const Lines& lines) { return json(lines); }

Lines lines_from(const json& j, const char* field) {
  if (!j.is_array()) throw std::invalid_argument(std::string(field) + " must be an array of lines");
  return j.get<Lines>();
}

const json& require(const json& j, const char* field) {
  if (!j.contains(field)) throw std::invalid_argument(std::string("missing field '") + field + "'");
  return j.at(field);
}

OpSet ops_from(const json& j) {
  OpSet out;
  for (const auto& name : j) {
    const auto kind = parse_op_kind(name.get<std::string>());
    if (!kind) throw std::invalid_argument("unknown operation '" + name.get<std::string>() + "'");
    out.insert(*kind);
  }
  return out;
}

template <typename F>
void for_each_line(const std::filesystem::path& path, F&& f) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingInput, "cannot open " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    f(line, number);
  }
}

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::string content;
  for (const auto& l : lines) {
    content += l;
    content += '\n';
  }
  write_file(path, content);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::vector<std::string> region_order() {
  std::vector<std::string> out(kCategoryNames.begin(), kCategoryNames.end());
  out.emplace_back(kUnclassified);
  out.emplace_back(kUngraded);
  return out;
}

}  // namespace

std::string make_case_id(const std::string& scenario_id, std::size_t block_index) {
  return scenario_id + "#" + std::to_string(block_index);
}

std::string grade_name(const std::optional<GradeLabel>& grade) {
  return grade ? to_string(*grade) : std::string(kUngraded);
}

std::string case_to_json_line(const CaseRecord& r) {
  json j;
  j["case_id"] = r.case_id;
  j["scenario_id"] = r.scenario_id;
  j["repo"] = r.repo;
  j["merge_commit"] = r.merge_commit;
  j["file_path"] = r.file_path;
  j["language"] = std::string(to_string(r.language));
  j["block_index"] = r.block_index;
  j["m_span"] = {r.m_span.begin, r.m_span.end};
  j["a_lines"] = lines_json(r.a_lines);
  j["b_lines"] = lines_json(r.b_lines);
  j["base_lines"] = r.base_lines ? lines_json(*r.base_lines) : json(nullptr);
  j["ground_truth"] = r.ground_truth ? lines_json(*r.ground_truth) : json(nullptr);
  j["alignable"] = r.alignable;
  j["grade"] = grade_name(r.grade);
  j["ops_a"] = r.ops_a.names();
  j["ops_b"] = r.ops_b.names();
  j["conflict_lines"] = r.conflict_lines;
  j["resolution_lines"] = r.resolution_lines;
  return j.dump();
}

CaseRecord case_from_json_line(std::string_view text, std::size_t line) {
  try {
    const auto j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("record is not an object");
    CaseRecord r;
    r.case_id = require(j, "case_id").get<std::string>();
    r.scenario_id = require(j, "scenario_id").get<std::string>();
    r.repo = require(j, "repo").get<std::string>();
    r.merge_commit = require(j, "merge_commit").get<std::string>();
    r.file_path = require(j, "file_path").get<std::string>();
    const auto lang = require(j, "language").get<std::string>();
    const auto parsed = parse_language(lang);
    if (!parsed) throw std::invalid_argument("unknown language '" + lang + "'");
    r.language = *parsed;
    r.block_index = require(j, "block_index").get<std::size_t>();
    const auto& span = require(j, "m_span");
    if (!span.is_array() || span.size() != 2) throw std::invalid_argument("m_span must be [begin, end]");
    r.m_span = {span[0].get<std::size_t>(), span[1].get<std::size_t>()};
    r.a_lines = lines_from(require(j, "a_lines"), "a_lines");
    r.b_lines = lines_from(require(j, "b_lines"), "b_lines");
    if (const auto& b = require(j, "base_lines"); !b.is_null()) r.base_lines = lines_from(b, "base_lines");
    if (const auto& g = require(j, "ground_truth"); !g.is_null()) r.ground_truth = lines_from(g, "ground_truth");
    r.alignable = require(j, "alignable").get<bool>();
    const auto grade = require(j, "grade").get<std::string>();
    if (grade != kUngraded) {
      r.grade = parse_grade(grade);
      if (!r.grade) throw std::invalid_argument("unknown grade '" + grade + "'");
    }
    r.ops_a = ops_from(require(j, "ops_a"));
    r.ops_b = ops_from(require(j, "ops_b"));
    r.conflict_lines = require(j, "conflict_lines").get<std::size_t>();
    r.resolution_lines = require(j, "resolution_lines").get<std::size_t>();
    return r;
  } catch (const json::exception& e) {
    throw CorpusFormatError(line, e.what());
  } catch (const std::invalid_argument& e) {
    throw CorpusFormatError(line, e.what());
  }
}

void write_corpus(const std::vector<CaseRecord>& records, const std::filesystem::path& path) {
  std::set<std::string_view> seen;
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const auto& r : records) {
    if (!seen.insert(r.case_id).second) {
      throw Error(ErrorKind::Consistency, "duplicate case id " + r.case_id);
    }
    lines.push_back(case_to_json_line(r));
  }
  write_lines(path, lines);
}

std::vector<CaseRecord> read_corpus(const std::filesystem::path& path) {
  std::vector<CaseRecord> out;
  std::set<std::string> seen;
  for_each_line(path, [&](const std::string& line, std::size_t number) {
    out.push_back(case_from_json_line(line, number));
    if (!seen.insert(out.back().case_id).second) {
      throw CorpusFormatError(number, "duplicate case id " + out.back().case_id);
    }
  });
  return out;
}

std::filesystem::path scenarios_path_for(const std::filesystem::path& corpus_path) {
  auto p = corpus_path;
  const auto stem = p.stem().string();
  return p.replace_filename(stem + ".scenarios.jsonl");
}

void write_scenarios(const std::vector<MergeScenario>& scenarios, const std::filesystem::path& path) {
  std::vector<std::string> lines;
  for (const auto& s : scenarios) {
    json j;
    j["scenario_id"] = s.id();
    j["repo"] = s.repo_id;
    j["merge_commit"] = s.merge_commit;
    j["parent_a"] = s.parent_a;
    j["parent_b"] = s.parent_b;
    j["base"] = s.base;
    j["file_path"] = s.file_path;
    j["language"] = std::string(to_string(s.language));
    j["version_o"] = s.version_o;
    j["version_a"] = s.version_a;
    j["version_b"] = s.version_b;
    j["version_m"] = s.version_m;
    j["version_r"] = s.version_r ? json(*s.version_r) : json(nullptr);
    lines.push_back(j.dump());
  }
  write_lines(path, lines);
}

std::vector<MergeScenario> read_scenarios(const std::filesystem::path& path) {
  std::vector<MergeScenario> out;
  for_each_line(path, [&](const std::string& line, std::size_t number) {
    try {
      const auto j = json::parse(line);
      MergeScenario s;
      s.repo_id = require(j, "repo").get<std::string>();
      s.merge_commit = require(j, "merge_commit").get<std::string>();
      s.parent_a = require(j, "parent_a").get<std::string>();
      s.parent_b = require(j, "parent_b").get<std::string>();
      s.base = require(j, "base").get<std::string>();
      s.file_path = require(j, "file_path").get<std::string>();
      const auto lang = parse_language(require(j, "language").get<std::string>());
      if (!lang) throw std::invalid_argument("unknown language");
      s.language = *lang;
      s.version_o = require(j, "version_o").get<std::string>();
      s.version_a = require(j, "version_a").get<std::string>();
      s.version_b = require(j, "version_b").get<std::string>();
      s.version_m = require(j, "version_m").get<std::string>();
      if (const auto& r = require(j, "version_r"); !r.is_null()) s.version_r = r.get<std::string>();
      out.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw CorpusFormatError(number, e.what());
    } catch (const std::invalid_argument& e) {
      throw CorpusFormatError(number, e.what());
    }
  });
  return out;
}

CorpusStats corpus_stats(const std::vector<CaseRecord>& records) {
  CorpusStats stats;
  struct Sums {
    double conflict = 0;
    double resolution = 0;
    std::size_t aligned = 0;
  };
  std::map<std::string, std::map<std::string, Sums>> sums;
  std::map<std::string, std::map<std::string, std::size_t>> per_file;

  auto init = [](LanguageStats& ls) {
    for (const auto& name : region_order()) {
      ls.regions.emplace(name, 0);
      ls.lengths.emplace(name, LengthSummary{});
    }
  };
  init(stats.overall);
  for (auto lang : kAllLanguages) init(stats.by_language[std::string(display_name(lang))]);

  for (const auto& r : records) {
    const auto region = grade_name(r.grade);
    const std::string lang(display_name(r.language));
    for (const auto& key : {std::string(), lang}) {
      auto& ls = key.empty() ? stats.overall : stats.by_language[key];
      ++ls.total;
      if (!r.alignable) ++ls.unalignable;
      ++ls.regions[region];
      ++ls.lengths[region].count;
      auto& s = sums[key][region];
      s.conflict += static_cast<double>(r.conflict_lines);
      if (r.ground_truth) {
        s.resolution += static_cast<double>(r.resolution_lines);
        ++s.aligned;
      }
      ++per_file[key][r.scenario_id];
    }
  }

  auto finish = [&](const std::string& key, LanguageStats& ls) {
    for (auto& [region, summary] : ls.lengths) {
      const auto& s = sums[key][region];
      if (summary.count > 0) summary.mean_conflict_lines = s.conflict / static_cast<double>(summary.count);
      if (s.aligned > 0) summary.mean_resolution_lines = s.resolution / static_cast<double>(s.aligned);
    }
    for (const auto& [file, count] : per_file[key]) ++ls.blocks_per_file[count];
    ls.files = per_file[key].size();
  };
  finish("", stats.overall);
  for (auto& [lang, ls] : stats.by_language) finish(lang, ls);
  return stats;
}

namespace {

json language_stats_json(const LanguageStats& ls) {
  json j;
  j["total"] = ls.total;
  j["unalignable"] = ls.unalignable;
  json regions;
  json lengths;
  for (const auto& name : region_order()) {
    regions[name] = ls.regions.at(name);
    const auto& l = ls.lengths.at(name);
    lengths[name] = {{"count", l.count},
                     {"mean_conflict_lines", l.mean_conflict_lines},
                     {"mean_resolution_lines", l.mean_resolution_lines}};
  }
  j["regions"] = regions;
  j["lengths"] = lengths;
  j["files"] = ls.files;
  json dist = json::object();
  for (const auto& [blocks, files] : ls.blocks_per_file) dist[std::to_string(blocks)] = files;
  j["blocks_per_file"] = dist;
  return j;
}

}  // namespace

std::string stats_to_json(const CorpusStats& stats) {
  json j;
  j["overall"] = language_stats_json(stats.overall);
  json langs;
  for (const auto& [lang, ls] : stats.by_language) langs[lang] = language_stats_json(ls);
  j["languages"] = langs;
  return j.dump(2) + "\n";
}

std::string stats_to_table(const CorpusStats& stats) {
  std::ostringstream out;
  std::vector<std::pair<std::string, const LanguageStats*>> columns;
  for (const auto& [lang, ls] : stats.by_language) columns.emplace_back(lang, &ls);
  columns.emplace_back("All", &stats.overall);

  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s", "Region");
  out << buf;
  for (const auto& [name, ls] : columns) {
    std::snprintf(buf, sizeof buf, "%10s", name.c_str());
    out << buf;
  }
  out << "\n";
  for (const auto& region : region_order()) {
    std::snprintf(buf, sizeof buf, "%-14s", region.c_str());
    out << buf;
    for (const auto& [name, ls] : columns) {
      std::snprintf(buf, sizeof buf, "%10zu", ls->regions.at(region));
      out << buf;
    }
    out << "\n";
  }
  for (const auto& [label, value] :
       {std::pair<const char*, std::size_t LanguageStats::*>{"Total", &LanguageStats::total},
        {"Unalignable", &LanguageStats::unalignable},
        {"Files", &LanguageStats::files}}) {
    std::snprintf(buf, sizeof buf, "%-14s", label);
    out << buf;
    for (const auto& [name, ls] : columns) {
      std::snprintf(buf, sizeof buf, "%10zu", ls->*value);
      out << buf;
    }
    out << "\n";
  }

  out << "\nMean lines (All)      conflict  resolution\n";
  for (const auto& region : region_order()) {
    const auto& l = stats.overall.lengths.at(region);
    std::snprintf(buf, sizeof buf, "%-18s %12s %11s\n", region.c_str(),
                  format_double(l.mean_conflict_lines).c_str(),
                  format_double(l.mean_resolution_lines).c_str());
    out << buf;
  }

  out << "\nConflicts per file (All)\n";
  for (const auto& [blocks, files] : stats.overall.blocks_per_file) {
    std::snprintf(buf, sizeof buf, "%6zu block(s): %zu file(s)\n", blocks, files);
    out << buf;
  }
  return out.str();
}

}  // namespace confgrade
