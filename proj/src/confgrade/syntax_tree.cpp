#include "confgrade/syntax_tree.hpp"

#include <memory>
#include <tree_sitter/api.h>

#include "confgrade/errors.hpp"

extern "C" {
const TSLanguage* tree_sitter_c(void);
const TSLanguage* tree_sitter_cpp(void);
const TSLanguage* tree_sitter_java(void);
const TSLanguage* tree_sitter_python(void);
}

namespace confgrade {
namespace {

const TSLanguage* grammar_for(Language language) {
  switch (language) {
    case Language::C: return tree_sitter_c();
    case Language::Cpp: return tree_sitter_cpp();
    case Language::Java: return tree_sitter_java();
    case Language::Python: return tree_sitter_python();
  }
  return nullptr;
}

LineRange line_span(TSNode node) {
  const auto start = ts_node_start_point(node);
  const auto end = ts_node_end_point(node);
  if (start.row == end.row && start.column == end.column) return {start.row, start.row};
  // A node ending at column 0 stops at the end of the previous line.
  const std::size_t last = (end.column == 0 && end.row > start.row) ? end.row : end.row + 1;
  return {start.row, last};
}

struct TreeDeleter {
  void operator()(TSTree* tree) const { ts_tree_delete(tree); }
};

}  // namespace

std::string_view SyntaxTree::text(NodeId id) const {
  const auto& n = node(id);
  const auto begin = std::min<std::size_t>(n.start_byte, source_.size());
  const auto end = std::min<std::size_t>(n.end_byte, source_.size());
  return std::string_view(source_).substr(begin, end - begin);
}

std::optional<NodeId> SyntaxTree::child_by_field(NodeId id, std::string_view field) const {
  for (auto child : node(id).children) {
    if (nodes_[child].field == field) return child;
  }
  return std::nullopt;
}

bool SyntaxTree::has_error() const noexcept {
  for (const auto& n : nodes_) {
    if (n.error || n.missing) return true;
  }
  return false;
}

std::string SyntaxTree::to_sexp() const {
  if (nodes_.empty()) return "";
  std::string out;
  struct Frame {
    NodeId id;
    std::size_t next_child;
  };
  std::vector<Frame> stack{{0, 0}};
  out += "(" + std::string(nodes_[0].kind);
  while (!stack.empty()) {
    auto& top = stack.back();
    const auto& n = nodes_[top.id];
    if (top.next_child < n.children.size()) {
      const auto child = n.children[top.next_child++];
      out += " ";
      if (!nodes_[child].field.empty()) out += std::string(nodes_[child].field) + ": ";
      out += "(" + std::string(nodes_[child].kind);
      stack.push_back({child, 0});
    } else {
      out += ")";
      stack.pop_back();
    }
  }
  return out;
}

SyntaxParser::SyntaxParser(Language language) : language_(language), parser_(ts_parser_new()) {
  if (!ts_parser_set_language(parser_, grammar_for(language))) {
    ts_parser_delete(parser_);
    parser_ = nullptr;
    throw Error(ErrorKind::UnsupportedLanguage,
                "no grammar available for " + std::string(display_name(language)));
  }
}

SyntaxParser::~SyntaxParser() {
  if (parser_) ts_parser_delete(parser_);
}

SyntaxTree SyntaxParser::parse(std::string source) {
  std::unique_ptr<TSTree, TreeDeleter> tree(ts_parser_parse_string(
      parser_, nullptr, source.data(), static_cast<std::uint32_t>(source.size())));
  if (!tree) throw Error(ErrorKind::Io, "parser returned no tree");

  std::vector<SyntaxNode> nodes;
  TSTreeCursor cursor = ts_tree_cursor_new(ts_tree_root_node(tree.get()));
  // Pre-order walk over all nodes, recording only named ones. `owners`
  // tracks the nearest named ancestor of each cursor depth.
  std::vector<std::optional<NodeId>> owners;
  std::optional<NodeId> owner;
  for (;;) {
    const TSNode n = ts_tree_cursor_current_node(&cursor);
    std::optional<NodeId> self;
    if (ts_node_is_named(n) || ts_node_is_missing(n)) {
      SyntaxNode out;
      out.kind = ts_node_type(n);
      const char* field = ts_tree_cursor_current_field_name(&cursor);
      if (field) out.field = field;
      out.lines = line_span(n);
      out.start_byte = ts_node_start_byte(n);
      out.end_byte = ts_node_end_byte(n);
      out.error = ts_node_is_error(n);
      out.missing = ts_node_is_missing(n);
      out.parent = owner;
      self = static_cast<NodeId>(nodes.size());
      if (owner) nodes[*owner].children.push_back(*self);
      nodes.push_back(out);
    }
    if (ts_tree_cursor_goto_first_child(&cursor)) {
      owners.push_back(owner);
      if (self) owner = self;
      continue;
    }
    bool advanced = false;
    while (!advanced) {
      if (ts_tree_cursor_goto_next_sibling(&cursor)) {
        advanced = true;
      } else if (ts_tree_cursor_goto_parent(&cursor)) {
        owner = owners.back();
        owners.pop_back();
      } else {
        break;
      }
    }
    if (!advanced) break;
  }
  ts_tree_cursor_delete(&cursor);
  return SyntaxTree(language_, std::move(source), std::move(nodes));
}

}  // namespace confgrade
