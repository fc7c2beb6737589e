#include <gtest/gtest.h>

#include "confgrade/errors.hpp"
#include "confgrade/text.hpp"
#include "confgrade/virtual_merge.hpp"

namespace cg = confgrade;

namespace {

const cg::Lines kMerged = {
    "head",
    "<<<<<<< ours",
    "a1",
    "a2",
    "=======",
    "b1",
    ">>>>>>> theirs",
    "middle",
    "<<<<<<< ours",
    "||||||| base",
    "o1",
    "=======",
    "b2",
    ">>>>>>> theirs",
    "tail",
};

}  // namespace

TEST(Text, SplitAndJoin) {
  EXPECT_EQ(cg::split_lines("a\nb\n"), (cg::Lines{"a", "b"}));
  EXPECT_EQ(cg::split_lines("a\nb"), (cg::Lines{"a", "b"}));
  EXPECT_TRUE(cg::split_lines("").empty());
  EXPECT_EQ(cg::split_lines("\n"), (cg::Lines{""}));
  const cg::Lines l{"x", "y"};
  EXPECT_EQ(cg::join_lines(l), "x\ny");
  EXPECT_EQ(cg::to_file_text(l), "x\ny\n");
}

TEST(Text, Utf8Validation) {
  EXPECT_TRUE(cg::is_valid_utf8("caf\xC3\xA9"));
  EXPECT_FALSE(cg::is_valid_utf8("\xC3"));
  EXPECT_FALSE(cg::is_valid_utf8("\xFF\xFE"));
}

TEST(Text, RangeIntersection) {
  EXPECT_TRUE((cg::LineRange{1, 3}).intersects({2, 5}));
  EXPECT_FALSE((cg::LineRange{1, 3}).intersects({3, 5}));
  EXPECT_FALSE((cg::LineRange{2, 2}).intersects({0, 10}));
}

TEST(VirtualMerge, ParsesBlocks) {
  const auto blocks = cg::parse_conflict_blocks(kMerged);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].a_lines, (cg::Lines{"a1", "a2"}));
  EXPECT_EQ(blocks[0].b_lines, (cg::Lines{"b1"}));
  EXPECT_FALSE(blocks[0].base_lines.has_value());
  EXPECT_EQ(blocks[0].m_span, (cg::LineRange{1, 7}));
  EXPECT_TRUE(blocks[1].a_lines.empty());
  ASSERT_TRUE(blocks[1].base_lines.has_value());
  EXPECT_EQ(*blocks[1].base_lines, (cg::Lines{"o1"}));
  EXPECT_EQ(blocks[1].index, 1u);
}

TEST(VirtualMerge, SideAAndRanges) {
  const auto vm = cg::build_side_merged(kMerged, cg::Side::A);
  EXPECT_EQ(vm.lines, (cg::Lines{"head", "a1", "a2", "middle", "tail"}));
  ASSERT_EQ(vm.conflict_ranges.size(), 2u);
  EXPECT_EQ(vm.conflict_ranges[0], (cg::LineRange{1, 3}));
  EXPECT_TRUE(vm.conflict_ranges[1].empty());
  EXPECT_EQ(vm.conflict_ranges[1].begin, 4u);
}

TEST(VirtualMerge, SideB) {
  const auto vm = cg::build_side_merged(kMerged, cg::Side::B);
  EXPECT_EQ(vm.lines, (cg::Lines{"head", "b1", "middle", "b2", "tail"}));
  EXPECT_EQ(vm.conflict_ranges[0], (cg::LineRange{1, 2}));
  EXPECT_EQ(vm.conflict_ranges[1], (cg::LineRange{3, 4}));
}

TEST(VirtualMerge, SwapIsInvolution) {
  const auto blocks = cg::parse_conflict_blocks(kMerged);
  const auto a = cg::build_side_merged(kMerged, blocks, cg::Side::A);
  const auto b = cg::build_side_merged(kMerged, blocks, cg::Side::B);
  EXPECT_EQ(cg::swap_side(a, blocks), b);
  EXPECT_EQ(cg::swap_side(cg::swap_side(a, blocks), blocks), a);
}

TEST(VirtualMerge, NoConflictsIsIdentity) {
  const cg::Lines plain{"x", "y"};
  const auto vm = cg::build_side_merged(plain, cg::Side::A);
  EXPECT_EQ(vm.lines, plain);
  EXPECT_TRUE(vm.conflict_ranges.empty());
}

TEST(VirtualMerge, ConflictTextLines) {
  const auto blocks = cg::parse_conflict_blocks(kMerged);
  const auto text = cg::conflict_text_lines(kMerged, blocks[0]);
  EXPECT_EQ(text.size(), 6u);
  EXPECT_EQ(text.front(), "<<<<<<< ours");
  EXPECT_EQ(text.back(), ">>>>>>> theirs");
}

TEST(VirtualMerge, MalformedMarkers) {
  EXPECT_THROW(cg::parse_conflict_blocks(cg::Lines{"<<<<<<< a", "x", "======="}), cg::MalformedConflict);
  EXPECT_THROW(cg::parse_conflict_blocks(cg::Lines{"x", ">>>>>>> b"}), cg::MalformedConflict);
  EXPECT_THROW(cg::parse_conflict_blocks(
                   cg::Lines{"<<<<<<< a", "<<<<<<< a", "=======", ">>>>>>> b", "=======", ">>>>>>> b"}),
               cg::MalformedConflict);
  try {
    cg::parse_conflict_blocks(cg::Lines{"ok", ">>>>>>> b", "x"});
    FAIL();
  } catch (const cg::MalformedConflict& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(VirtualMerge, LoneSeparatorOutsideBlockIsText) {
  EXPECT_TRUE(cg::parse_conflict_blocks(cg::Lines{"Title", "=======", "body"}).empty());
}
