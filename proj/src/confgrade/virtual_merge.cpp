#include "confgrade/virtual_merge.hpp"

#include <string_view>

#include "confgrade/errors.hpp"

namespace confgrade {
namespace {

enum class Marker { None, Begin, Base, Separator, End };

// Markers are seven characters, optionally followed by a space and a label.
bool has_marker(std::string_view line, char c, bool allow_label) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.size() < 7) return false;
  for (std::size_t i = 0; i < 7; ++i) {
    if (line[i] != c) return false;
  }
  if (line.size() == 7) return true;
  return allow_label && line[7] == ' ';
}

Marker classify(std::string_view line) {
  if (has_marker(line, '<', true)) return Marker::Begin;
  if (has_marker(line, '|', true)) return Marker::Base;
  if (has_marker(line, '=', false)) return Marker::Separator;
  if (has_marker(line, '>', true)) return Marker::End;
  return Marker::None;
}

}  // namespace

std::vector<ConflictBlock> parse_conflict_blocks(std::span<const std::string> m_lines) {
  enum class State { Outside, InA, InBase, InB };
  std::vector<ConflictBlock> blocks;
  State state = State::Outside;
  ConflictBlock current;
  for (std::size_t i = 0; i < m_lines.size(); ++i) {
    const auto& line = m_lines[i];
    const auto marker = classify(line);
    switch (state) {
      case State::Outside:
        if (marker == Marker::Begin) {
          current = ConflictBlock{};
          current.index = blocks.size();
          current.m_span.begin = i;
          state = State::InA;
        } else if (marker == Marker::Base || marker == Marker::End) {
          throw MalformedConflict(i, "marker outside a conflict block");
        }
        // A lone "=======" outside a block is ordinary text (e.g. underlines).
        break;
      case State::InA:
        if (marker == Marker::Begin || marker == Marker::End) {
          throw MalformedConflict(i, "unexpected marker in first side");
        } else if (marker == Marker::Base) {
          current.base_lines.emplace();
          state = State::InBase;
        } else if (marker == Marker::Separator) {
          state = State::InB;
        } else {
          current.a_lines.push_back(line);
        }
        break;
      case State::InBase:
        if (marker == Marker::Begin || marker == Marker::Base || marker == Marker::End) {
          throw MalformedConflict(i, "unexpected marker in base section");
        } else if (marker == Marker::Separator) {
          state = State::InB;
        } else {
          current.base_lines->push_back(line);
        }
        break;
      case State::InB:
        if (marker == Marker::Begin || marker == Marker::Base || marker == Marker::Separator) {
          throw MalformedConflict(i, "unexpected marker in second side");
        } else if (marker == Marker::End) {
          current.m_span.end = i + 1;
          blocks.push_back(std::move(current));
          current = ConflictBlock{};
          state = State::Outside;
        } else {
          current.b_lines.push_back(line);
        }
        break;
    }
  }
  if (state != State::Outside) {
    throw MalformedConflict(current.m_span.begin, "conflict block is not terminated");
  }
  return blocks;
}

VirtualMerge build_side_merged(std::span<const std::string> m_lines,
                               std::span<const ConflictBlock> blocks, Side side) {
  VirtualMerge merged;
  merged.side = side;
  merged.conflict_ranges.reserve(blocks.size());
  std::size_t cursor = 0;
  for (const auto& block : blocks) {
    for (; cursor < block.m_span.begin; ++cursor) merged.lines.push_back(m_lines[cursor]);
    const auto& chosen = side == Side::A ? block.a_lines : block.b_lines;
    LineRange range{merged.lines.size(), merged.lines.size() + chosen.size()};
    merged.lines.insert(merged.lines.end(), chosen.begin(), chosen.end());
    merged.conflict_ranges.push_back(range);
    cursor = block.m_span.end;
  }
  for (; cursor < m_lines.size(); ++cursor) merged.lines.push_back(m_lines[cursor]);
  return merged;
}

VirtualMerge build_side_merged(std::span<const std::string> m_lines, Side side) {
  const auto blocks = parse_conflict_blocks(m_lines);
  return build_side_merged(m_lines, blocks, side);
}

VirtualMerge swap_side(const VirtualMerge& merged, std::span<const ConflictBlock> blocks) {
  if (merged.conflict_ranges.size() != blocks.size()) {
    throw Error(ErrorKind::InvalidArgument, "block count does not match conflict ranges");
  }
  VirtualMerge out;
  out.side = merged.side == Side::A ? Side::B : Side::A;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& range = merged.conflict_ranges[i];
    for (; cursor < range.begin; ++cursor) out.lines.push_back(merged.lines[cursor]);
    const auto& other = out.side == Side::A ? blocks[i].a_lines : blocks[i].b_lines;
    out.conflict_ranges.push_back({out.lines.size(), out.lines.size() + other.size()});
    out.lines.insert(out.lines.end(), other.begin(), other.end());
    cursor = range.end;
  }
  for (; cursor < merged.lines.size(); ++cursor) out.lines.push_back(merged.lines[cursor]);
  return out;
}

Lines conflict_text_lines(std::span<const std::string> m_lines, const ConflictBlock& block) {
  return Lines(m_lines.begin() + static_cast<std::ptrdiff_t>(block.m_span.begin),
               m_lines.begin() + static_cast<std::ptrdiff_t>(block.m_span.end));
}

}  // namespace confgrade
