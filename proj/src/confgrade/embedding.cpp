#include "confgrade/embedding.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

#include "confgrade/errors.hpp"
#include "confgrade/http.hpp"
#include "json.hpp"

namespace confgrade {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

}  // namespace

std::vector<std::string> HashingEmbedder::tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (ident_char(c)) {
      const auto start = i;
      while (i < text.size() && ident_char(static_cast<unsigned char>(text[i]))) ++i;
      out.emplace_back(text.substr(start, i - start));
    } else {
      out.emplace_back(1, text[i]);
      ++i;
    }
  }
  return out;
}

std::vector<double> HashingEmbedder::embed(std::string_view text) {
  std::vector<double> v(dimensions_, 0.0);
  if (dimensions_ == 0) return v;
  for (const auto& tok : tokenize(text)) v[fnv1a(tok) % dimensions_] += 1.0;
  double norm = 0;
  for (double x : v) norm += x * x;
  if (norm > 0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

std::vector<double> HttpEmbeddingProvider::embed(std::string_view text) {
  using json = nlohmann::json;
  json request{{"input", std::string(text)}};
  if (!options_.model.empty()) request["model"] = options_.model;

  HttpRequest req;
  req.url = options_.endpoint;
  req.body = request.dump();
  req.timeout = std::chrono::seconds(options_.timeout_seconds);
  if (!options_.api_key.empty()) req.headers.emplace_back("Authorization", "Bearer " + options_.api_key);

  HttpResponse res;
  try {
    res = http_post_json(req);
  } catch (const Error& e) {
    throw Error(ErrorKind::ScoreUnavailable, e.what());
  }
  if (res.status != 200) {
    throw Error(ErrorKind::ScoreUnavailable, "embedding endpoint returned HTTP " + std::to_string(res.status));
  }
  try {
    const auto body = json::parse(res.body);
    const json* vec = nullptr;
    if (body.contains("embedding")) {
      vec = &body["embedding"];
    } else if (body.contains("data") && !body["data"].empty()) {
      vec = &body["data"][0]["embedding"];
    }
    if (!vec || !vec->is_array()) throw Error(ErrorKind::ScoreUnavailable, "no embedding in response");
    return vec->get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ScoreUnavailable, std::string("bad embedding response: ") + e.what());
  }
}

}  // namespace confgrade
