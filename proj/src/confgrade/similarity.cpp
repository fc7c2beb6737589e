#include "confgrade/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "confgrade/errors.hpp"

namespace confgrade {
std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      len = 1;
      cp = c;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    }
    bool ok = len > 0 && i + len <= text.size();
    for (std::size_t j = 1; ok && j < len; ++j) {
      const auto cc = static_cast<unsigned char>(text[i + j]);
      if ((cc & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(c);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

// Bit-parallel edit distance, 64 pattern characters per word.
std::size_t levenshtein(std::u32string_view x, std::u32string_view y) {
  if (x.size() < y.size()) std::swap(x, y);
  const auto m = y.size();
  if (m == 0) return x.size();
  const auto blocks = (m + 63) / 64;

  std::unordered_map<char32_t, std::size_t> alphabet;
  for (auto c : y) alphabet.try_emplace(c, alphabet.size());
  std::vector<std::uint64_t> peq(alphabet.size() * blocks, 0);
  for (std::size_t i = 0; i < m; ++i) {
    peq[alphabet[y[i]] * blocks + i / 64] |= std::uint64_t{1} << (i % 64);
  }

  std::vector<std::uint64_t> pv(blocks, ~std::uint64_t{0});
  std::vector<std::uint64_t> mv(blocks, 0);
  const std::uint64_t last_bit = std::uint64_t{1} << ((m - 1) % 64);
  std::size_t score = m;

  for (auto c : x) {
    const auto it = alphabet.find(c);
    const std::uint64_t* eqs = it == alphabet.end() ? nullptr : &peq[it->second * blocks];
    int h_in = 1;
    for (std::size_t b = 0; b < blocks; ++b) {
      std::uint64_t eq = eqs ? eqs[b] : 0;
      const auto p = pv[b];
      const auto n = mv[b];
      const auto xv = eq | n;
      if (h_in < 0) eq |= 1;
      const auto xh = (((eq & p) + p) ^ p) | eq;
      auto ph = n | ~(xh | p);
      auto mh = p & xh;
      const auto high = b + 1 == blocks ? last_bit : (std::uint64_t{1} << 63);
      int h_out = 0;
      if (ph & high) h_out = 1;
      else if (mh & high) h_out = -1;
      ph <<= 1;
      mh <<= 1;
      if (h_in < 0) mh |= 1;
      else if (h_in > 0) ph |= 1;
      pv[b] = mh | ~(xv | ph);
      mv[b] = ph & xv;
      h_in = h_out;
    }
    score = static_cast<std::size_t>(static_cast<long long>(score) + h_in);
  }
  return score;
}

double edit_similarity(std::string_view x, std::string_view y) {
  const auto a = decode_utf8(x);
  const auto b = decode_utf8(y);
  const auto longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

std::string winnowing_normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' || ch == '\v') continue;
    out.push_back(ch >= 'A' && ch <= 'Z' ? static_cast<char>(ch - 'A' + 'a') : ch);
  }
  return out;
}

std::vector<std::uint64_t> kgram_hashes(std::string_view s, std::size_t k) {
  std::vector<std::uint64_t> out;
  if (k == 0 || s.size() < k) return out;
  std::uint64_t top = 1;  // base^(k-1)
  for (std::size_t i = 1; i < k; ++i) top *= kWinnowingHashBase;
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < k; ++i) h = h * kWinnowingHashBase + static_cast<unsigned char>(s[i]);
  out.push_back(h);
  for (std::size_t i = k; i < s.size(); ++i) {
    h -= top * static_cast<unsigned char>(s[i - k]);
    h = h * kWinnowingHashBase + static_cast<unsigned char>(s[i]);
    out.push_back(h);
  }
  return out;
}

std::vector<std::uint64_t> winnowing_fingerprints(std::string_view text,
                                                  const WinnowingParams& params) {
  const auto hashes = kgram_hashes(winnowing_normalize(text), params.k);
  std::vector<std::uint64_t> selected;
  if (hashes.empty()) return selected;
  const auto w = std::min(std::max<std::size_t>(params.w, 1), hashes.size());

  // Positions with strictly increasing values; the front is the rightmost minimum.
  std::deque<std::size_t> window;
  for (std::size_t i = 0; i < hashes.size(); ++i) {
    while (!window.empty() && hashes[window.back()] >= hashes[i]) window.pop_back();
    window.push_back(i);
    if (window.front() + w <= i) window.pop_front();
    if (i + 1 >= w) selected.push_back(hashes[window.front()]);
  }
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  return selected;
}

double winnowing_similarity(std::string_view x, std::string_view y, const WinnowingParams& params) {
  const auto fx = winnowing_fingerprints(x, params);
  const auto fy = winnowing_fingerprints(y, params);
  if (fx.empty() && fy.empty()) {
    return winnowing_normalize(x) == winnowing_normalize(y) ? 1.0 : 0.0;
  }
  std::size_t common = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fx.size() && j < fy.size()) {
    if (fx[i] == fy[j]) {
      ++common;
      ++i;
      ++j;
    } else if (fx[i] < fy[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const auto unioned = fx.size() + fy.size() - common;
  return static_cast<double>(common) / static_cast<double>(unioned);
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::ScoreUnavailable, "embedding dimensions differ");
  }
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 && nb == 0) return 1.0;
  if (na == 0 || nb == 0) return 0.0;
  const auto c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, 0.0, 1.0);
}

double semantic_similarity(std::string_view x, std::string_view y, EmbeddingProvider& provider) {
  return cosine_similarity(provider.embed(x), provider.embed(y));
}

bool matches_ground_truth(const SimilarityScores& scores, double threshold) {
  for (const auto& s : {scores.es, scores.ws, scores.ss}) {
    if (s && *s >= threshold) return true;
  }
  return false;
}

SimilarityScores score_candidate(std::string_view candidate, std::string_view ground_truth,
                                 EmbeddingProvider* provider, const WinnowingParams& params) {
  SimilarityScores scores;
  scores.es = edit_similarity(candidate, ground_truth);
  scores.ws = winnowing_similarity(candidate, ground_truth, params);
  if (provider) {
    try {
      scores.ss = semantic_similarity(candidate, ground_truth, *provider);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ScoreUnavailable) throw;
    }
  }
  return scores;
}

}  // namespace confgrade
