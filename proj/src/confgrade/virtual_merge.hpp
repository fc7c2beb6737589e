#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "confgrade/text.hpp"

namespace confgrade {

// One `<<<<<<<` ... `=======` ... `>>>>>>>` region of a merged file.
struct ConflictBlock {
  std::size_t index = 0;
  Lines a_lines;
  Lines b_lines;
  std::optional<Lines> base_lines;  // only with diff3-style markers
  LineRange m_span;                 // markers included

  friend bool operator==(const ConflictBlock&, const ConflictBlock&) = default;
};

enum class Side { A, B };

// M with every conflict resolved toward one side. conflict_ranges[i] is where
// block i's side text landed; it is empty when that side's text is empty.
struct VirtualMerge {
  Side side = Side::A;
  Lines lines;
  std::vector<LineRange> conflict_ranges;

  std::string text() const { return to_file_text(lines); }

  friend bool operator==(const VirtualMerge&, const VirtualMerge&) = default;
};

// Throws MalformedConflict on nested, unterminated or stray markers.
std::vector<ConflictBlock> parse_conflict_blocks(std::span<const std::string> m_lines);

VirtualMerge build_side_merged(std::span<const std::string> m_lines,
                               std::span<const ConflictBlock> blocks, Side side);
VirtualMerge build_side_merged(std::span<const std::string> m_lines, Side side);

// Replaces each conflict range with the opposite side's block text.
VirtualMerge swap_side(const VirtualMerge& merged, std::span<const ConflictBlock> blocks);

// The raw marker block of `block` as it appears in M.
Lines conflict_text_lines(std::span<const std::string> m_lines, const ConflictBlock& block);

}  // namespace confgrade
