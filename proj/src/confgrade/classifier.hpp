#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confgrade/coloring.hpp"
#include "confgrade/operations.hpp"

namespace confgrade {

struct GradeLabel {
  bool text = false;
  bool syntax = false;
  bool functional = false;

  bool unclassified() const noexcept { return !text && !syntax && !functional; }
  // Bit 0 text, bit 1 syntax, bit 2 functional.
  unsigned bits() const noexcept { return (text ? 1u : 0u) | (syntax ? 2u : 0u) | (functional ? 4u : 0u); }
  static GradeLabel from_bits(unsigned bits) noexcept {
    return GradeLabel{(bits & 1u) != 0, (bits & 2u) != 0, (bits & 4u) != 0};
  }
  // Every flag of `category` is also set here.
  bool covers(GradeLabel category) const noexcept {
    return (bits() & category.bits()) == category.bits();
  }

  friend bool operator==(const GradeLabel&, const GradeLabel&) = default;
};

inline constexpr std::string_view kUnclassified = "Unclassified";

// The seven named categories, in reporting order.
inline constexpr std::array<std::string_view, 7> kCategoryNames = {"T",   "S",   "F",    "T+S",
                                                                    "T+F", "S+F", "T+S+F"};

// "T", "S+F", ... or "Unclassified".
std::string to_string(GradeLabel label);
std::optional<GradeLabel> parse_grade(std::string_view name);
std::vector<GradeLabel> all_categories();

GradeLabel classify_conflict(OpSet p_a, OpSet p_b) noexcept;
std::vector<GradeLabel> label_scenario(const OperationTrace& trace);

}  // namespace confgrade
