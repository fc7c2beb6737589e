#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confgrade/scenario.hpp"
#include "confgrade/text.hpp"

struct TSParser;

namespace confgrade {

using NodeId = std::uint32_t;

// A named node of a concrete syntax tree. `kind` and `field` point at static
// strings owned by the grammar.
struct SyntaxNode {
  std::string_view kind;
  std::string_view field;  // field name in the parent, or empty
  LineRange lines;         // lines touched by the node
  std::uint32_t start_byte = 0;
  std::uint32_t end_byte = 0;
  bool error = false;
  bool missing = false;
  std::optional<NodeId> parent;
  std::vector<NodeId> children;  // named children, in order
};

// Named nodes in pre-order (document order); node 0 is the root.
class SyntaxTree {
 public:
  SyntaxTree(Language language, std::string source, std::vector<SyntaxNode> nodes)
      : language_(language), source_(std::move(source)), nodes_(std::move(nodes)) {}

  Language language() const noexcept { return language_; }
  const std::string& source() const noexcept { return source_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId root() const noexcept { return 0; }
  const SyntaxNode& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<SyntaxNode>& nodes() const noexcept { return nodes_; }

  std::string_view text(NodeId id) const;
  std::optional<NodeId> child_by_field(NodeId id, std::string_view field) const;
  bool has_error() const noexcept;

  // Lisp-style dump of kinds and fields, for debugging and tests.
  std::string to_sexp() const;

 private:
  Language language_;
  std::string source_;
  std::vector<SyntaxNode> nodes_;
};

// Owns one tree-sitter parser. Not thread-safe; give each task its own.
class SyntaxParser {
 public:
  explicit SyntaxParser(Language language);
  ~SyntaxParser();

  SyntaxParser(const SyntaxParser&) = delete;
  SyntaxParser& operator=(const SyntaxParser&) = delete;

  Language language() const noexcept { return language_; }
  SyntaxTree parse(std::string source);

 private:
  Language language_;
  TSParser* parser_ = nullptr;
};

inline SyntaxTree parse_to_syntax_tree(std::string text, Language language) {
  SyntaxParser parser(language);
  return parser.parse(std::move(text));
}

}  // namespace confgrade
