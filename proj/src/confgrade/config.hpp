#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "confgrade/scenario.hpp"
#include "confgrade/similarity.hpp"

namespace confgrade {

struct ModelSettings {
  std::string endpoint;
  std::string name;
  std::string api_key_env = "CONFGRADE_API_KEY";
  std::size_t context_limit = 8192;
  unsigned max_attempts = 10;
  double temperature = 0.7;
  int timeout_seconds = 120;
};

struct EmbeddingSettings {
  std::string provider = "hashing";  // hashing | http | none
  std::string endpoint;
  std::string model;
  std::string api_key_env = "CONFGRADE_EMBEDDING_KEY";
  std::size_t dimensions = 256;
};

// Everything a run needs. Loaded from a JSON file, then overridden by flags
// or set_option(); secrets are read from the environment variables named here.
struct RunConfig {
  std::vector<std::string> repos;
  std::set<Language> languages{Language::C, Language::Cpp, Language::Java, Language::Python};
  std::string corpus;
  std::string out;
  std::string records;
  std::string mapping;
  std::string prompt_template;
  std::string mock;
  WinnowingParams winnowing;
  double threshold = kMatchThreshold;
  ModelSettings model;
  EmbeddingSettings embedding;
  std::size_t max_lines = 100;
  bool no_context = false;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::optional<std::size_t> limit;
  bool detect_renames = false;
  std::size_t anchor_min_width = 3;
  std::size_t anchor_max_width = 10;

  static RunConfig from_json_text(std::string_view text);
  static RunConfig load(const std::filesystem::path& path);
  std::string to_json_text() const;

  // Dotted keys as in the JSON file, e.g. "winnowing.k" or "model.endpoint".
  void set_option(std::string_view key, std::string_view value);

  // Throws Error(InvalidConfig) when a field is out of range.
  void validate() const;
};

// "c,cpp" -> {C, Cpp}; throws Error(InvalidConfig) on unknown names.
std::set<Language> parse_language_list(std::string_view list);

}  // namespace confgrade
