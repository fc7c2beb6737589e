#include "confgrade/model_client.hpp"

#include "confgrade/errors.hpp"
#include "confgrade/http.hpp"
#include "confgrade/text.hpp"
#include "json.hpp"

namespace confgrade {
namespace {

using json = nlohmann::json;

std::vector<ScriptedModelClient::Entry> entries_from(const json& j) {
  std::vector<ScriptedModelClient::Entry> out;
  const json list = j.is_array() ? j : json::array({j});
  for (const auto& e : list) {
    if (e.is_string()) {
      out.push_back({e.get<std::string>(), false});
    } else if (e.is_object() && e.contains("error")) {
      out.push_back({e["error"].get<std::string>(), true});
    } else {
      throw Error(ErrorKind::InvalidConfig, "scripted reply must be a string or {\"error\": ...}");
    }
  }
  return out;
}

bool blank_prefix(std::string_view text, std::size_t line_start, std::size_t pos) {
  for (auto i = line_start; i < pos; ++i) {
    if (text[i] != ' ' && text[i] != '\t') return false;
  }
  return true;
}

}  // namespace

HttpChatClient::HttpChatClient(HttpChatOptions options) : options_(std::move(options)) {
  if (options_.endpoint.empty()) throw Error(ErrorKind::InvalidConfig, "model endpoint is not set");
  if (options_.model.empty()) throw Error(ErrorKind::InvalidConfig, "model name is not set");
}

std::string HttpChatClient::complete(const ChatRequest& request) {
  json body{{"model", options_.model},
            {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
            {"temperature", request.temperature}};
  if (request.seed) body["seed"] = *request.seed;

  HttpRequest req;
  req.url = options_.endpoint;
  req.body = body.dump();
  req.timeout = std::chrono::seconds(options_.timeout_seconds);
  if (!options_.api_key.empty()) req.headers.emplace_back("Authorization", "Bearer " + options_.api_key);

  const auto res = http_post_json(req);
  if (res.status != 200) {
    throw Error(ErrorKind::Transport, "model endpoint returned HTTP " + std::to_string(res.status));
  }
  try {
    const auto reply = json::parse(res.body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Transport, std::string("unreadable model reply: ") + e.what());
  }
}

ScriptedModelClient ScriptedModelClient::from_json_text(std::string_view json_text) {
  ScriptedModelClient client;
  try {
    const auto doc = json::parse(json_text);
    if (!doc.is_object()) throw Error(ErrorKind::InvalidConfig, "mock fixture must be a JSON object");
    if (doc.contains("responses")) {
      for (const auto& [id, list] : doc["responses"].items()) client.set_script(id, entries_from(list));
    }
    if (doc.contains("default")) client.set_default(entries_from(doc["default"]));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("bad mock fixture: ") + e.what());
  }
  return client;
}

ScriptedModelClient ScriptedModelClient::load(const std::filesystem::path& path) {
  return from_json_text(read_file(path));
}

void ScriptedModelClient::set_script(const std::string& case_id, std::vector<Entry> entries) {
  scripts_[case_id] = std::move(entries);
}

void ScriptedModelClient::set_default(std::vector<Entry> entries) { default_ = std::move(entries); }

std::string ScriptedModelClient::complete(const ChatRequest& request) {
  const auto it = scripts_.find(request.case_id);
  const auto& entries = it != scripts_.end() ? it->second : default_;
  if (entries.empty()) throw Error(ErrorKind::Transport, "no scripted reply for " + request.case_id);
  const auto index = std::min<std::size_t>(request.attempt == 0 ? 0 : request.attempt - 1, entries.size() - 1);
  const auto& entry = entries[index];
  if (entry.error) throw Error(ErrorKind::Transport, entry.text);
  return entry.text;
}

std::optional<std::string> extract_code_block(std::string_view response) {
  std::size_t search = 0;
  std::size_t open = std::string_view::npos;
  while (true) {
    const auto pos = response.find("```", search);
    if (pos == std::string_view::npos) return std::nullopt;
    const auto line_start = response.rfind('\n', pos == 0 ? 0 : pos - 1);
    const auto ls = (line_start == std::string_view::npos || pos == 0) ? 0 : line_start + 1;
    if (blank_prefix(response, ls, pos)) {
      open = pos;
      break;
    }
    search = pos + 3;
  }
  const auto body_start = response.find('\n', open);
  if (body_start == std::string_view::npos) return std::nullopt;

  std::size_t line = body_start + 1;
  while (line <= response.size()) {
    auto end = response.find('\n', line);
    if (end == std::string_view::npos) end = response.size();
    auto content = response.substr(line, end - line);
    const auto first = content.find_first_not_of(" \t");
    if (first != std::string_view::npos && content.substr(first, 3) == "```") {
      auto body = response.substr(body_start + 1, line - body_start - 1);
      if (!body.empty() && body.back() == '\n') body.remove_suffix(1);
      if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
      return std::string(body);
    }
    if (end == response.size()) break;
    line = end + 1;
  }
  return std::nullopt;
}

QueryResult query_model(const std::string& case_id, const std::string& prompt, ModelClient& client,
                        const QueryOptions& options) {
  QueryResult result;
  for (unsigned attempt = 1; attempt <= options.max_attempts; ++attempt) {
    result.attempt_count = attempt;
    std::string reply;
    try {
      reply = client.complete(ChatRequest{case_id, prompt, options.temperature, options.seed, attempt});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Transport) throw;
      result.failures.emplace_back("transport");
      continue;
    }
    if (auto code = extract_code_block(reply)) {
      result.candidate = std::move(code);
      return result;
    }
    result.failures.emplace_back("no_code_block");
  }
  return result;
}

}  // namespace confgrade
