#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace confgrade {

// Code points of UTF-8 text; invalid bytes map to themselves.
std::u32string decode_utf8(std::string_view text);

std::size_t levenshtein(std::u32string_view x, std::u32string_view y);

// 1 - levenshtein / max length, over code points. 1.0 when both are empty.
double edit_similarity(std::string_view x, std::string_view y);

// k-gram hash: sum of byte_i * base^(k-1-i), modulo 2^64.
inline constexpr std::uint64_t kWinnowingHashBase = 1000003ULL;

struct WinnowingParams {
  std::size_t k = 13;
  std::size_t w = 17;
};

// Lowercases ASCII letters and drops ASCII whitespace.
std::string winnowing_normalize(std::string_view text);

// Polynomial hash of every k-gram of the normalized text.
std::vector<std::uint64_t> kgram_hashes(std::string_view normalized, std::size_t k);

// Distinct selected hashes, sorted ascending.
std::vector<std::uint64_t> winnowing_fingerprints(std::string_view text,
                                                  const WinnowingParams& params = {});

double winnowing_similarity(std::string_view x, std::string_view y,
                            const WinnowingParams& params = {});

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  // Throws ScoreUnavailable when no vector can be produced.
  virtual std::vector<double> embed(std::string_view text) = 0;
};

// Cosine of the two embeddings clamped to [0, 1].
double semantic_similarity(std::string_view x, std::string_view y, EmbeddingProvider& provider);
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

struct SimilarityScores {
  std::optional<double> es;
  std::optional<double> ws;
  std::optional<double> ss;

  friend bool operator==(const SimilarityScores&, const SimilarityScores&) = default;
};

inline constexpr double kMatchThreshold = 0.8;

bool matches_ground_truth(const SimilarityScores& scores, double threshold = kMatchThreshold);

// All three metrics; ss stays empty when there is no provider or it fails.
SimilarityScores score_candidate(std::string_view candidate, std::string_view ground_truth,
                                 EmbeddingProvider* provider, const WinnowingParams& params = {});

}  // namespace confgrade
