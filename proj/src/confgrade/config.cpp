#include "confgrade/config.hpp"

#include <charconv>

#include "confgrade/errors.hpp"
#include "confgrade/text.hpp"
#include "json.hpp"

namespace confgrade {
namespace {

using json = nlohmann::ordered_json;

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      out = static_cast<T>(std::stod(std::string(value), &used));
      if (used != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidConfig, "option " + std::string(key) + " expects a number");
    }
  } else {
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw Error(ErrorKind::InvalidConfig, "option " + std::string(key) + " expects an integer");
    }
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorKind::InvalidConfig, "option " + std::string(key) + " expects true or false");
}

// Flattens nested objects into dotted keys and feeds them through set_option.
void apply(RunConfig& cfg, const json& j, const std::string& prefix) {
  for (const auto& [key, value] : j.items()) {
    const auto dotted = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      apply(cfg, value, dotted);
    } else if (value.is_null()) {
      continue;
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ',';
        joined += v.is_string() ? v.get<std::string>() : v.dump();
      }
      if (dotted == "repos") {
        cfg.repos.clear();
        for (const auto& v : value) cfg.repos.push_back(v.get<std::string>());
      } else {
        cfg.set_option(dotted, joined);
      }
    } else {
      cfg.set_option(dotted, value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
}

}  // namespace

std::set<Language> parse_language_list(std::string_view list) {
  std::set<Language> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    auto comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    auto item = list.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const auto lang = parse_language(item);
      if (!lang) throw Error(ErrorKind::InvalidConfig, "unknown language '" + std::string(item) + "'");
      out.insert(*lang);
    }
    pos = comma + 1;
  }
  if (out.empty()) throw Error(ErrorKind::InvalidConfig, "language list is empty");
  return out;
}

void RunConfig::set_option(std::string_view key, std::string_view value) {
  const std::string v(value);
  if (key == "repos" || key == "repo") {
    repos.push_back(v);
  } else if (key == "languages" || key == "langs") {
    languages = parse_language_list(value);
  } else if (key == "corpus") {
    corpus = v;
  } else if (key == "out") {
    out = v;
  } else if (key == "records") {
    records = v;
  } else if (key == "mapping") {
    mapping = v;
  } else if (key == "prompt_template") {
    prompt_template = v;
  } else if (key == "mock") {
    mock = v;
  } else if (key == "winnowing.k") {
    winnowing.k = parse_number<std::size_t>(key, value);
  } else if (key == "winnowing.w") {
    winnowing.w = parse_number<std::size_t>(key, value);
  } else if (key == "threshold") {
    threshold = parse_number<double>(key, value);
  } else if (key == "model.endpoint") {
    model.endpoint = v;
  } else if (key == "model.name") {
    model.name = v;
  } else if (key == "model.api_key_env") {
    model.api_key_env = v;
  } else if (key == "model.context_limit") {
    model.context_limit = parse_number<std::size_t>(key, value);
  } else if (key == "model.max_attempts") {
    model.max_attempts = parse_number<unsigned>(key, value);
  } else if (key == "model.temperature") {
    model.temperature = parse_number<double>(key, value);
  } else if (key == "model.timeout_seconds") {
    model.timeout_seconds = parse_number<int>(key, value);
  } else if (key == "embedding.provider") {
    embedding.provider = v;
  } else if (key == "embedding.endpoint") {
    embedding.endpoint = v;
  } else if (key == "embedding.model") {
    embedding.model = v;
  } else if (key == "embedding.api_key_env") {
    embedding.api_key_env = v;
  } else if (key == "embedding.dimensions") {
    embedding.dimensions = parse_number<std::size_t>(key, value);
  } else if (key == "max_lines") {
    max_lines = parse_number<std::size_t>(key, value);
  } else if (key == "no_context") {
    no_context = parse_bool(key, value);
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "jobs") {
    jobs = parse_number<unsigned>(key, value);
  } else if (key == "limit") {
    limit = parse_number<std::size_t>(key, value);
  } else if (key == "detect_renames") {
    detect_renames = parse_bool(key, value);
  } else if (key == "anchor.min_width") {
    anchor_min_width = parse_number<std::size_t>(key, value);
  } else if (key == "anchor.max_width") {
    anchor_max_width = parse_number<std::size_t>(key, value);
  } else {
    throw Error(ErrorKind::InvalidConfig, "unknown option '" + std::string(key) + "'");
  }
}

RunConfig RunConfig::from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");
  RunConfig cfg;
  apply(cfg, doc, "");
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorKind::MissingInput, "config file not found: " + path.string());
  }
  return from_json_text(read_file(path));
}

std::string RunConfig::to_json_text() const {
  json j;
  j["repos"] = repos;
  std::vector<std::string> langs;
  for (auto l : languages) langs.emplace_back(to_string(l));
  j["languages"] = langs;
  j["corpus"] = corpus;
  j["out"] = out;
  j["records"] = records;
  j["mapping"] = mapping;
  j["prompt_template"] = prompt_template;
  j["mock"] = mock;
  j["winnowing"] = {{"k", winnowing.k}, {"w", winnowing.w}};
  j["threshold"] = threshold;
  j["model"] = {{"endpoint", model.endpoint},
                {"name", model.name},
                {"api_key_env", model.api_key_env},
                {"context_limit", model.context_limit},
                {"max_attempts", model.max_attempts},
                {"temperature", model.temperature},
                {"timeout_seconds", model.timeout_seconds}};
  j["embedding"] = {{"provider", embedding.provider},
                    {"endpoint", embedding.endpoint},
                    {"model", embedding.model},
                    {"api_key_env", embedding.api_key_env},
                    {"dimensions", embedding.dimensions}};
  j["max_lines"] = max_lines;
  j["no_context"] = no_context;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["jobs"] = jobs;
  j["limit"] = limit ? json(*limit) : json(nullptr);
  j["detect_renames"] = detect_renames;
  j["anchor"] = {{"min_width", anchor_min_width}, {"max_width", anchor_max_width}};
  return j.dump(2) + "\n";
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
  if (!(threshold > 0.0 && threshold <= 1.0)) fail("threshold must lie in (0, 1]");
  if (winnowing.k < 2) fail("winnowing.k must be at least 2");
  if (winnowing.w < 1) fail("winnowing.w must be at least 1");
  if (jobs < 1) fail("jobs must be at least 1");
  if (model.max_attempts < 1) fail("model.max_attempts must be at least 1");
  if (model.context_limit < 1) fail("model.context_limit must be at least 1");
  if (anchor_min_width < 1 || anchor_max_width < anchor_min_width) {
    fail("anchor widths must satisfy 1 <= min_width <= max_width");
  }
  if (embedding.provider != "hashing" && embedding.provider != "http" && embedding.provider != "none") {
    fail("embedding.provider must be hashing, http or none");
  }
  if (embedding.dimensions < 1) fail("embedding.dimensions must be at least 1");
}

}  // namespace confgrade
