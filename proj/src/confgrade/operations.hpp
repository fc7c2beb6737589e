#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace confgrade {

// Code operations in ascending priority: a later kind overrides an earlier
// one on the same syntax node.
enum class OpKind : std::uint8_t {
  CTD = 0,  // composite type definition
  FBD = 1,  // function body definition
  FPD = 2,  // function prototype definition
  LSO = 3,  // language-specific operation (macros, includes, imports)
  CMT = 4,  // commenting
  VD = 5,   // variable declaration
};

inline constexpr std::array<OpKind, 6> kAllOpKinds = {OpKind::CTD, OpKind::FBD, OpKind::FPD,
                                                      OpKind::LSO, OpKind::CMT, OpKind::VD};

std::string_view to_string(OpKind kind) noexcept;
std::optional<OpKind> parse_op_kind(std::string_view name) noexcept;

// Small set of operation kinds, one bit per kind.
class OpSet {
 public:
  constexpr OpSet() = default;
  constexpr OpSet(std::initializer_list<OpKind> kinds) {
    for (auto k : kinds) insert(k);
  }
  static constexpr OpSet from_bits(std::uint8_t bits) {
    OpSet s;
    s.bits_ = bits & 0x3F;
    return s;
  }

  constexpr void insert(OpKind k) { bits_ |= bit(k); }
  constexpr void erase(OpKind k) { bits_ &= static_cast<std::uint8_t>(~bit(k)); }
  constexpr bool contains(OpKind k) const { return (bits_ & bit(k)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  std::size_t size() const;

  constexpr OpSet operator|(OpSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr OpSet operator&(OpSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr OpSet operator^(OpSet o) const { return from_bits(bits_ ^ o.bits_); }
  constexpr OpSet& operator|=(OpSet o) {
    bits_ |= o.bits_;
    return *this;
  }

  std::vector<OpKind> kinds() const;
  std::vector<std::string> names() const;

  friend constexpr bool operator==(OpSet, OpSet) = default;

 private:
  static constexpr std::uint8_t bit(OpKind k) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k));
  }
  std::uint8_t bits_ = 0;
};

// Keeps only the highest-priority kind present (empty stays empty).
OpSet prioritize(OpSet kinds) noexcept;

}  // namespace confgrade
