#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "confgrade/mapping.hpp"
#include "confgrade/operations.hpp"
#include "confgrade/syntax_tree.hpp"
#include "confgrade/virtual_merge.hpp"

namespace confgrade {

struct CodeOperation {
  OpKind kind = OpKind::CMT;
  std::string_view node_kind;  // grammar-owned
  LineRange node_span;         // the node lines that touch the block
  std::size_t block_index = 0;

  friend bool operator==(const CodeOperation&, const CodeOperation&) = default;
};

// Per-block operation kinds of both virtual merges. pa.size() == pb.size()
// == number of conflict blocks.
struct OperationTrace {
  std::vector<OpSet> pa;
  std::vector<OpSet> pb;
  std::vector<CodeOperation> ops_a;
  std::vector<CodeOperation> ops_b;

  std::size_t size() const noexcept { return pa.size(); }
};

struct SideOperations {
  std::vector<OpSet> per_block;
  std::vector<CodeOperation> operations;
};

// Operation kinds a node maps to, before prioritization.
OpSet map_node_to_operations(const SyntaxTree& tree, NodeId node, const LanguageMapping& mapping);

SideOperations color_side(const SyntaxTree& tree, std::span<const LineRange> conflict_ranges,
                          const LanguageMapping& mapping);

OperationTrace color_conflicts(const VirtualMerge& vm_a, const VirtualMerge& vm_b,
                               Language language, const MappingTable& mapping);

// Same, reusing a caller-owned parser.
OperationTrace color_conflicts(const VirtualMerge& vm_a, const VirtualMerge& vm_b,
                               SyntaxParser& parser, const MappingTable& mapping);

}  // namespace confgrade
