#include "confgrade/operations.hpp"

#include <bit>

namespace confgrade {

std::string_view to_string(OpKind kind) noexcept {
  switch (kind) {
    case OpKind::CTD: return "CTD";
    case OpKind::FBD: return "FBD";
    case OpKind::FPD: return "FPD";
    case OpKind::LSO: return "LSO";
    case OpKind::CMT: return "CMT";
    case OpKind::VD: return "VD";
  }
  return "CTD";
}

std::optional<OpKind> parse_op_kind(std::string_view name) noexcept {
  for (auto k : kAllOpKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::size_t OpSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<OpKind> OpSet::kinds() const {
  std::vector<OpKind> out;
  for (auto k : kAllOpKinds) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

std::vector<std::string> OpSet::names() const {
  std::vector<std::string> out;
  for (auto k : kinds()) out.emplace_back(to_string(k));
  return out;
}

OpSet prioritize(OpSet kinds) noexcept {
  if (kinds.empty()) return kinds;
  const auto top = std::bit_width(static_cast<unsigned>(kinds.bits())) - 1;
  return OpSet::from_bits(static_cast<std::uint8_t>(1u << top));
}

}  // namespace confgrade
