#include "confgrade/classifier.hpp"

namespace confgrade {
namespace {

constexpr OpSet kSyntaxKinds{OpKind::CTD, OpKind::FPD, OpKind::LSO, OpKind::VD};

}  // namespace

std::string to_string(GradeLabel label) {
  if (label.unclassified()) return std::string(kUnclassified);
  std::string out;
  auto add = [&](bool flag, const char* part) {
    if (!flag) return;
    if (!out.empty()) out += '+';
    out += part;
  };
  add(label.text, "T");
  add(label.syntax, "S");
  add(label.functional, "F");
  return out;
}

std::optional<GradeLabel> parse_grade(std::string_view name) {
  if (name == kUnclassified) return GradeLabel{};
  for (unsigned bits = 1; bits < 8; ++bits) {
    const auto label = GradeLabel::from_bits(bits);
    if (to_string(label) == name) return label;
  }
  return std::nullopt;
}

std::vector<GradeLabel> all_categories() {
  std::vector<GradeLabel> out;
  for (auto name : kCategoryNames) out.push_back(*parse_grade(name));
  return out;
}

GradeLabel classify_conflict(OpSet p_a, OpSet p_b) noexcept {
  const auto both = p_a | p_b;
  GradeLabel label;
  label.text = both.contains(OpKind::CMT);
  label.functional = both.contains(OpKind::FBD);
  label.syntax = !((p_a & kSyntaxKinds) ^ (p_b & kSyntaxKinds)).empty();
  return label;
}

std::vector<GradeLabel> label_scenario(const OperationTrace& trace) {
  std::vector<GradeLabel> out;
  out.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) out.push_back(classify_conflict(trace.pa[i], trace.pb[i]));
  return out;
}

}  // namespace confgrade
