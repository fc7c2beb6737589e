#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "confgrade/similarity.hpp"

namespace confgrade {

// Offline bag-of-tokens embedder. Tokens are identifiers, numbers and single
// punctuation characters; each is hashed into one of `dimensions` buckets.
class HashingEmbedder : public EmbeddingProvider {
 public:
  explicit HashingEmbedder(std::size_t dimensions = 256) : dimensions_(dimensions) {}

  std::vector<double> embed(std::string_view text) override;

  static std::vector<std::string> tokenize(std::string_view text);

 private:
  std::size_t dimensions_;
};

struct HttpEmbeddingOptions {
  std::string endpoint;
  std::string model;
  std::string api_key;  // sent as a bearer token when non-empty
  int timeout_seconds = 60;
};

// Sends {"model", "input"} and accepts either {"embedding": [...]} or
// {"data": [{"embedding": [...]}]} back. Safe for concurrent use.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(HttpEmbeddingOptions options) : options_(std::move(options)) {}

  std::vector<double> embed(std::string_view text) override;

 private:
  HttpEmbeddingOptions options_;
};

}  // namespace confgrade
