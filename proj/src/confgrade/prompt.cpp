#include "confgrade/prompt.hpp"

#include <algorithm>
#include <cctype>

#include "confgrade/errors.hpp"

namespace confgrade {
namespace {

constexpr std::string_view kPlaceholders[] = {"language", "conflict", "pre_context", "post_context"};

constexpr std::string_view kDefaultTemplate = R"(You are resolving a merge conflict in a {language} file.

Work through it step by step:
1. Read the code before and after the conflict to learn what the surrounding code expects.
2. Compare the two sides between the conflict markers and decide what each side changes.
3. Decide whether to keep one side, keep both, or combine them.
4. Write the resolved code.

Reply with the resolved code for the conflicting region only, inside a single fenced code block.
Do not repeat the surrounding context and do not include conflict markers.

Example.
Context before:
def area(width, height):
Conflict:
<<<<<<< a
    return width * height
=======
    # rectangle area
    return height * width
>>>>>>> b
Context after:
(none)
Resolution:
```
    # rectangle area
    return width * height
```

Now resolve this conflict.
Context before:
{pre_context}
Conflict:
{conflict}
Context after:
{post_context}
Resolution:
)";

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string context_text(const Lines& lines) {
  return lines.empty() ? std::string("(none)") : join_lines(lines);
}

}  // namespace

ConflictContext build_context(std::span<const std::string> m_lines, LineRange block_span,
                              std::size_t max_lines) {
  ConflictContext ctx;
  const auto begin = std::min(block_span.begin, m_lines.size());
  const auto end = std::min(block_span.end, m_lines.size());
  const auto pre_start = begin > max_lines ? begin - max_lines : 0;
  const auto post_end = std::min(m_lines.size(), end + max_lines);
  ctx.pre.assign(m_lines.begin() + static_cast<std::ptrdiff_t>(pre_start),
                 m_lines.begin() + static_cast<std::ptrdiff_t>(begin));
  ctx.post.assign(m_lines.begin() + static_cast<std::ptrdiff_t>(end),
                  m_lines.begin() + static_cast<std::ptrdiff_t>(post_end));
  return ctx;
}

Lines render_conflict_block(const Lines& a_lines, const Lines& b_lines,
                            const std::optional<Lines>& base_lines) {
  Lines out{"<<<<<<< a"};
  out.insert(out.end(), a_lines.begin(), a_lines.end());
  if (base_lines) {
    out.emplace_back("||||||| base");
    out.insert(out.end(), base_lines->begin(), base_lines->end());
  }
  out.emplace_back("=======");
  out.insert(out.end(), b_lines.begin(), b_lines.end());
  out.emplace_back(">>>>>>> b");
  return out;
}

PromptTemplate PromptTemplate::parse(std::string text) {
  PromptTemplate t;
  std::string literal;
  bool has_conflict = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '{' && i + 1 < text.size() && text[i + 1] == '{') {
      literal += '{';
      i += 2;
      continue;
    }
    if (c == '{' && i + 1 < text.size() && is_ident_start(text[i + 1])) {
      auto j = i + 1;
      while (j < text.size() && is_ident(text[j])) ++j;
      if (j < text.size() && text[j] == '}') {
        const auto name = text.substr(i + 1, j - i - 1);
        if (std::find(std::begin(kPlaceholders), std::end(kPlaceholders), name) ==
            std::end(kPlaceholders)) {
          throw Error(ErrorKind::Template, "unknown placeholder {" + name + "} in prompt template");
        }
        if (!literal.empty()) t.segments_.push_back({false, std::move(literal)});
        literal.clear();
        has_conflict = has_conflict || name == "conflict";
        t.segments_.push_back({true, name});
        i = j + 1;
        continue;
      }
    }
    literal += c;
    ++i;
  }
  if (!literal.empty()) t.segments_.push_back({false, std::move(literal)});
  if (!has_conflict) throw Error(ErrorKind::Template, "prompt template lacks the {conflict} placeholder");
  t.source_ = std::move(text);
  return t;
}

PromptTemplate PromptTemplate::load(const std::filesystem::path& path) { return parse(read_file(path)); }

PromptTemplate PromptTemplate::default_template() { return parse(std::string(kDefaultTemplate)); }

std::string PromptTemplate::render(const PromptFields& fields) const {
  std::string out;
  for (const auto& seg : segments_) {
    if (!seg.placeholder) {
      out += seg.text;
    } else if (seg.text == "language") {
      out += fields.language;
    } else if (seg.text == "conflict") {
      out += fields.conflict;
    } else if (seg.text == "pre_context") {
      out += fields.pre_context;
    } else {
      out += fields.post_context;
    }
  }
  return out;
}

std::string assemble_prompt(Language language, const Lines& conflict, const ConflictContext& context,
                            const PromptTemplate& tmpl) {
  return tmpl.render(PromptFields{std::string(display_name(language)), join_lines(conflict),
                                  context_text(context.pre), context_text(context.post)});
}

PromptBundle make_bundle(Language language, Lines conflict, ConflictContext context,
                         const PromptTemplate& tmpl, const Tokenizer& tokenizer) {
  PromptBundle b;
  b.language = language;
  b.conflict = std::move(conflict);
  b.pre_context = std::move(context.pre);
  b.post_context = std::move(context.post);
  b.rendered_prompt = assemble_prompt(language, b.conflict, {b.pre_context, b.post_context}, tmpl);
  b.token_count = tokenizer.count(b.rendered_prompt);
  return b;
}

PromptBundle fit_to_budget(PromptBundle bundle, const PromptTemplate& tmpl,
                           const Tokenizer& tokenizer, std::size_t limit) {
  while (bundle.token_count > limit) {
    if (bundle.pre_context.empty() && bundle.post_context.empty()) {
      throw Error(ErrorKind::ConflictTooLarge,
                  "conflict needs " + std::to_string(bundle.token_count) + " tokens, limit is " +
                      std::to_string(limit));
    }
    if (bundle.post_context.size() >= bundle.pre_context.size()) {
      bundle.post_context.pop_back();
    } else {
      bundle.pre_context.erase(bundle.pre_context.begin());
    }
    bundle.rendered_prompt = assemble_prompt(bundle.language, bundle.conflict,
                                             {bundle.pre_context, bundle.post_context}, tmpl);
    bundle.token_count = tokenizer.count(bundle.rendered_prompt);
  }
  return bundle;
}

}  // namespace confgrade
