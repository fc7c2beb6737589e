#include "confgrade/coloring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>

#include "confgrade/errors.hpp"

namespace confgrade {
namespace {

struct Candidate {
  OpKind kind;
  std::vector<LineRange> segments;
};

bool is_comment_kind(std::string_view kind) {
  return kind == "comment" || kind == "line_comment" || kind == "block_comment";
}

// Named children that are not comments.
std::vector<NodeId> code_children(const SyntaxTree& tree, NodeId id) {
  std::vector<NodeId> out;
  for (auto c : tree.node(id).children) {
    if (!is_comment_kind(tree.node(c).kind)) out.push_back(c);
  }
  return out;
}

std::optional<NodeId> sole_child(const SyntaxTree& tree, NodeId id) {
  const auto kids = code_children(tree, id);
  if (kids.size() != 1) return std::nullopt;
  return kids.front();
}

// Literal contents without quotes and interpolations hold two or more words.
bool is_prose(const SyntaxTree& tree, NodeId id) {
  const auto& n = tree.node(id);
  std::string body(tree.text(id));
  for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
    const auto& c = tree.node(*it);
    if (c.kind != "interpolation") continue;
    const auto b = c.start_byte - n.start_byte;
    const auto e = std::min<std::size_t>(c.end_byte - n.start_byte, body.size());
    if (b < e) body.replace(b, e - b, " ");
  }
  const auto first = body.find_first_of("\"'");
  const auto last = body.find_last_of("\"'");
  if (first == std::string::npos || last <= first) return false;
  std::string_view inner(body.data() + first + 1, last - first - 1);

  int words = 0;
  bool in_token = false;
  bool has_letter = false;
  for (char ch : std::string(inner) + " ") {
    const auto uc = static_cast<unsigned char>(ch);
    if (std::isspace(uc)) {
      if (in_token && has_letter) ++words;
      in_token = has_letter = false;
    } else {
      in_token = true;
      if (std::isalpha(uc)) has_letter = true;
    }
  }
  return words >= 2;
}

bool declares_function(const SyntaxTree& tree, NodeId id) {
  auto cur = tree.child_by_field(id, "declarator");
  while (cur) {
    const auto kind = tree.node(*cur).kind;
    if (kind == "function_declarator") {
      const auto inner = tree.child_by_field(*cur, "declarator");
      return !(inner && tree.node(*inner).kind == "parenthesized_declarator");
    }
    if (kind != "pointer_declarator" && kind != "reference_declarator" &&
        kind != "init_declarator") {
      return false;
    }
    cur = tree.child_by_field(*cur, "declarator");
  }
  return false;
}

void collect_identifiers(const SyntaxTree& tree, NodeId id, std::vector<std::string>& out) {
  const auto& n = tree.node(id);
  if (n.kind == "identifier") {
    out.emplace_back(tree.text(id));
    return;
  }
  if (n.kind == "pattern_list" || n.kind == "tuple_pattern" || n.kind == "list_pattern" ||
      n.kind == "list_splat_pattern") {
    for (auto c : n.children) collect_identifiers(tree, c, out);
  }
}

// Per-tree facts the rules depend on, computed in one pre-order pass.
class NodeAnalyzer {
 public:
  NodeAnalyzer(const SyntaxTree& tree, const LanguageMapping& mapping)
      : tree_(tree), mapping_(mapping) {
    const auto n = tree.size();
    in_function_.assign(n, false);
    scope_.assign(n, 0);
    statement_.assign(n, false);
    first_binding_.assign(n, false);
    own_cut_.resize(n);
    std::vector<std::optional<NodeId>> stmt_parent(n);
    std::map<NodeId, std::set<std::string>> bound;

    for (NodeId i = 0; i < n; ++i) {
      const auto& node = tree.node(i);
      if (node.parent) {
        const auto p = *node.parent;
        const auto pk = tree.node(p).kind;
        if (mapping.functions.contains(pk)) {
          in_function_[i] = true;
          scope_[i] = p;
        } else if (mapping.types.contains(pk)) {
          in_function_[i] = false;
          scope_[i] = p;
        } else {
          in_function_[i] = in_function_[p];
          scope_[i] = scope_[p];
        }
        statement_[i] = mapping.containers.contains(pk) && !node.error && !node.missing &&
                        !is_comment_kind(node.kind);
        stmt_parent[i] = statement_[p] ? std::optional<NodeId>(p) : stmt_parent[p];
        if (statement_[i] && stmt_parent[i]) own_cut_[*stmt_parent[i]].push_back(node.lines);
      }
      if (!in_function_[i] && node.kind == "expression_statement") {
        const auto only = sole_child(tree, i);
        if (only && tree.node(*only).kind == "assignment") {
          std::vector<std::string> names;
          if (auto left = tree.child_by_field(*only, "left")) collect_identifiers(tree, *left, names);
          auto& seen = bound[scope_[i]];
          for (auto& name : names) {
            if (seen.insert(name).second) first_binding_[i] = true;
          }
        }
      }
    }
  }

  std::vector<Candidate> candidates(NodeId id) const {
    std::vector<Candidate> out;
    const auto& node = tree_.node(id);
    if (node.error || node.missing || node.lines.empty()) return out;

    auto push = [&](OpKind kind, std::vector<LineRange> segs) {
      std::erase_if(segs, [](const LineRange& r) { return r.empty(); });
      if (segs.empty()) return;
      for (auto& c : out) {
        if (c.kind == kind) {
          c.segments.insert(c.segments.end(), segs.begin(), segs.end());
          return;
        }
      }
      out.push_back({kind, std::move(segs)});
    };

    if (const auto it = mapping_.nodes.find(node.kind); it != mapping_.nodes.end()) {
      for (const auto& rule : it->second) {
        if (holds(id, rule)) push(rule.op, segments(id, rule));
      }
    }
    if (statement_[id] && in_function_[id]) push(OpKind::FBD, own_lines(id));
    return out;
  }

 private:
  bool holds(NodeId id, const MappingRule& rule) const {
    switch (rule.when) {
      case Condition::Always: return true;
      case Condition::Prose: return is_prose(tree_, id);
      case Condition::StringOnly: {
        const auto only = sole_child(tree_, id);
        if (!only) return false;
        const auto kind = tree_.node(*only).kind;
        return kind == "string" || kind == "concatenated_string";
      }
      case Condition::AnnotatedAssignment: {
        const auto only = sole_child(tree_, id);
        return only && tree_.node(*only).kind == "assignment" &&
               tree_.child_by_field(*only, "type").has_value();
      }
      case Condition::FirstBinding: return first_binding_[id];
      case Condition::HasBody: return tree_.child_by_field(id, rule.body_field).has_value();
      case Condition::FunctionDeclarator: return declares_function(tree_, id);
      case Condition::NotFunctionDeclarator: return !declares_function(tree_, id);
    }
    return false;
  }

  std::vector<LineRange> segments(NodeId id, const MappingRule& rule) const {
    const auto lines = tree_.node(id).lines;
    const LineRange first{lines.begin, lines.begin + 1};
    switch (rule.lines) {
      case LineScope::Whole: return {lines};
      case LineScope::First: return {first};
      case LineScope::Boundary:
        if (lines.size() > 1) return {first, LineRange{lines.end - 1, lines.end}};
        return {first};
      case LineScope::Header: {
        const auto body = tree_.child_by_field(id, rule.body_field);
        if (!body) return {lines};
        // Up to the last non-comment child before the body; comments that
        // the grammar hangs between header and body belong to neither.
        auto end = first.end;
        for (auto child : tree_.node(id).children) {
          if (child == *body) break;
          const auto& c = tree_.node(child);
          if (c.kind.find("comment") == std::string_view::npos) end = std::max(end, c.lines.end);
        }
        end = std::min(end, std::max(tree_.node(*body).lines.begin, first.end));
        return {LineRange{lines.begin, end}};
      }
    }
    return {lines};
  }

  // The statement's lines minus those of statements nested in it.
  std::vector<LineRange> own_lines(NodeId id) const {
    auto cuts = own_cut_[id];
    std::sort(cuts.begin(), cuts.end(),
              [](const LineRange& x, const LineRange& y) { return x.begin < y.begin; });
    std::vector<LineRange> out;
    const auto lines = tree_.node(id).lines;
    auto pos = lines.begin;
    for (const auto& cut : cuts) {
      if (cut.begin > pos) out.push_back({pos, std::min(cut.begin, lines.end)});
      pos = std::max(pos, cut.end);
    }
    if (pos < lines.end) out.push_back({pos, lines.end});
    return out;
  }

  const SyntaxTree& tree_;
  const LanguageMapping& mapping_;
  std::vector<bool> in_function_;
  std::vector<NodeId> scope_;
  std::vector<bool> statement_;
  std::vector<bool> first_binding_;
  std::vector<std::vector<LineRange>> own_cut_;
};

}  // namespace

OpSet map_node_to_operations(const SyntaxTree& tree, NodeId node, const LanguageMapping& mapping) {
  const NodeAnalyzer analyzer(tree, mapping);
  OpSet out;
  for (const auto& c : analyzer.candidates(node)) out.insert(c.kind);
  return out;
}

SideOperations color_side(const SyntaxTree& tree, std::span<const LineRange> conflict_ranges,
                          const LanguageMapping& mapping) {
  SideOperations result;
  result.per_block.resize(conflict_ranges.size());
  const bool any = std::any_of(conflict_ranges.begin(), conflict_ranges.end(),
                               [](const LineRange& r) { return !r.empty(); });
  if (!any || tree.size() == 0) return result;

  const NodeAnalyzer analyzer(tree, mapping);
  for (NodeId id = 0; id < tree.size(); ++id) {
    const auto& node = tree.node(id);
    const bool touches = std::any_of(conflict_ranges.begin(), conflict_ranges.end(),
                                     [&](const LineRange& r) { return r.intersects(node.lines); });
    if (!touches) continue;

    const auto candidates = analyzer.candidates(id);
    if (candidates.empty()) continue;
    OpSet kinds;
    for (const auto& c : candidates) kinds.insert(c.kind);
    const auto winner = prioritize(kinds).kinds().front();
    const auto& chosen = *std::find_if(candidates.begin(), candidates.end(),
                                       [&](const Candidate& c) { return c.kind == winner; });

    for (std::size_t b = 0; b < conflict_ranges.size(); ++b) {
      for (const auto& seg : chosen.segments) {
        if (!seg.intersects(conflict_ranges[b])) continue;
        result.per_block[b].insert(winner);
        result.operations.push_back({winner, node.kind, seg, b});
        break;
      }
    }
  }
  return result;
}

OperationTrace color_conflicts(const VirtualMerge& vm_a, const VirtualMerge& vm_b,
                               SyntaxParser& parser, const MappingTable& mapping) {
  if (vm_a.conflict_ranges.size() != vm_b.conflict_ranges.size()) {
    throw Error(ErrorKind::Consistency, "virtual merges disagree on the number of conflict blocks");
  }
  const auto& table = mapping.for_language(parser.language());
  const auto tree_a = parser.parse(vm_a.text());
  const auto tree_b = parser.parse(vm_b.text());
  auto side_a = color_side(tree_a, vm_a.conflict_ranges, table);
  auto side_b = color_side(tree_b, vm_b.conflict_ranges, table);
  return OperationTrace{std::move(side_a.per_block), std::move(side_b.per_block),
                        std::move(side_a.operations), std::move(side_b.operations)};
}

OperationTrace color_conflicts(const VirtualMerge& vm_a, const VirtualMerge& vm_b,
                               Language language, const MappingTable& mapping) {
  SyntaxParser parser(language);
  return color_conflicts(vm_a, vm_b, parser, mapping);
}

}  // namespace confgrade
