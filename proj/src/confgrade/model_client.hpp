#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace confgrade {

struct ChatRequest {
  std::string case_id;
  std::string prompt;
  double temperature = 0.7;
  std::optional<std::uint64_t> seed;
  unsigned attempt = 1;  // 1-based
};

class ModelClient {
 public:
  virtual ~ModelClient() = default;
  // Returns the raw reply text. Throws Error(Transport) on delivery failures;
  // any other error aborts the run.
  virtual std::string complete(const ChatRequest& request) = 0;
};

struct HttpChatOptions {
  std::string endpoint;  // full chat-completions URL
  std::string model;
  std::string api_key;
  int timeout_seconds = 120;
};

// OpenAI-style chat completions: {"model", "messages", "temperature"[, "seed"]}.
class HttpChatClient : public ModelClient {
 public:
  explicit HttpChatClient(HttpChatOptions options);
  std::string complete(const ChatRequest& request) override;

 private:
  HttpChatOptions options_;
};

// Replays canned replies. Fixture format:
//   {"responses": {"<case_id>": ["reply", {"error": "timeout"}, ...]},
//    "default": ["reply", ...]}
// Attempt n takes entry n, or the last entry once the list runs out.
class ScriptedModelClient : public ModelClient {
 public:
  struct Entry {
    std::string text;
    bool error = false;
  };

  static ScriptedModelClient from_json_text(std::string_view json_text);
  static ScriptedModelClient load(const std::filesystem::path& path);

  void set_script(const std::string& case_id, std::vector<Entry> entries);
  void set_default(std::vector<Entry> entries);

  std::string complete(const ChatRequest& request) override;

 private:
  std::map<std::string, std::vector<Entry>, std::less<>> scripts_;
  std::vector<Entry> default_;
};

// Body of the first ``` fence with the language tag dropped, or nullopt.
std::optional<std::string> extract_code_block(std::string_view response);

struct QueryOptions {
  unsigned max_attempts = 10;
  double temperature = 0.7;
  std::optional<std::uint64_t> seed;
};

struct QueryResult {
  unsigned attempt_count = 0;
  std::optional<std::string> candidate;
  std::vector<std::string> failures;  // "transport" or "no_code_block", one per failed attempt
};

QueryResult query_model(const std::string& case_id, const std::string& prompt, ModelClient& client,
                        const QueryOptions& options = {});

}  // namespace confgrade
