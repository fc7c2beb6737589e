#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "confgrade/scenario.hpp"
#include "confgrade/text.hpp"

namespace confgrade {

struct ConflictContext {
  Lines pre;
  Lines post;
};

// Up to max_lines of version_m on each side of the block. Other blocks keep
// their marker text.
ConflictContext build_context(std::span<const std::string> m_lines, LineRange block_span,
                              std::size_t max_lines);

// Marker block rebuilt from side texts, for cases without a stored M.
Lines render_conflict_block(const Lines& a_lines, const Lines& b_lines,
                            const std::optional<Lines>& base_lines = std::nullopt);

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::size_t count(std::string_view text) const = 0;
};

// ceil(bytes / 4); errs on the side of overcounting for code.
class ByteEstimateTokenizer : public Tokenizer {
 public:
  std::size_t count(std::string_view text) const override { return (text.size() + 3) / 4; }
};

struct PromptFields {
  std::string language;
  std::string conflict;
  std::string pre_context;
  std::string post_context;
};

// Text with {language}, {conflict}, {pre_context} and {post_context}
// placeholders. "{{" stands for a literal brace; any other brace that does
// not enclose an identifier is copied verbatim.
class PromptTemplate {
 public:
  // Throws Error(Template) on unknown placeholders or a missing {conflict}.
  static PromptTemplate parse(std::string text);
  static PromptTemplate load(const std::filesystem::path& path);
  static PromptTemplate default_template();

  std::string render(const PromptFields& fields) const;
  const std::string& source() const noexcept { return source_; }

 private:
  struct Segment {
    bool placeholder = false;
    std::string text;  // literal text or placeholder name
  };

  std::string source_;
  std::vector<Segment> segments_;
};

struct PromptBundle {
  Language language = Language::C;
  Lines conflict;
  Lines pre_context;
  Lines post_context;
  std::string rendered_prompt;
  std::size_t token_count = 0;
};

std::string assemble_prompt(Language language, const Lines& conflict, const ConflictContext& context,
                            const PromptTemplate& tmpl);

PromptBundle make_bundle(Language language, Lines conflict, ConflictContext context,
                         const PromptTemplate& tmpl, const Tokenizer& tokenizer);

// Drops context lines one at a time, from the longer side (the post side on
// ties; first pre line, last post line), until the prompt fits. Throws
// Error(ConflictTooLarge) if it does not fit even without context.
PromptBundle fit_to_budget(PromptBundle bundle, const PromptTemplate& tmpl,
                           const Tokenizer& tokenizer, std::size_t limit);

}  // namespace confgrade
