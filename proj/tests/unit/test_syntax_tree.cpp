#include <gtest/gtest.h>

#include "confgrade/syntax_tree.hpp"

namespace cg = confgrade;

TEST(SyntaxTree, PythonFunction) {
  const auto tree = cg::parse_to_syntax_tree("def f(x):\n    return x\n", cg::Language::Python);
  EXPECT_FALSE(tree.has_error());
  EXPECT_EQ(tree.node(tree.root()).kind, "module");
  const auto& fn = tree.node(tree.node(0).children.at(0));
  EXPECT_EQ(fn.kind, "function_definition");
  EXPECT_EQ(fn.lines, (cg::LineRange{0, 2}));
  const auto body = tree.child_by_field(tree.node(0).children.at(0), "body");
  ASSERT_TRUE(body.has_value());
  EXPECT_EQ(tree.node(*body).kind, "block");
  EXPECT_EQ(tree.text(*body), "return x");
}

TEST(SyntaxTree, PreOrderParents) {
  const auto tree = cg::parse_to_syntax_tree("int main(void) { return 0; }\n", cg::Language::C);
  for (cg::NodeId id = 1; id < tree.size(); ++id) {
    ASSERT_TRUE(tree.node(id).parent.has_value());
    EXPECT_LT(*tree.node(id).parent, id);
  }
}

TEST(SyntaxTree, EachLanguageParses) {
  EXPECT_FALSE(cg::parse_to_syntax_tree("class A { void f() {} }\n", cg::Language::Java).has_error());
  EXPECT_FALSE(cg::parse_to_syntax_tree("namespace n { struct S {}; }\n", cg::Language::Cpp).has_error());
  EXPECT_FALSE(cg::parse_to_syntax_tree("#include <x.h>\n", cg::Language::C).has_error());
}

TEST(SyntaxTree, ErrorsAreFlagged) {
  EXPECT_TRUE(cg::parse_to_syntax_tree("def (:\n", cg::Language::Python).has_error());
}

TEST(SyntaxTree, SexpMentionsKinds) {
  const auto tree = cg::parse_to_syntax_tree("x = 1\n", cg::Language::Python);
  EXPECT_NE(tree.to_sexp().find("assignment"), std::string::npos);
}

TEST(Languages, FromPath) {
  EXPECT_EQ(cg::language_from_path("a/b.py"), cg::Language::Python);
  EXPECT_EQ(cg::language_from_path("x.h"), cg::Language::C);
  EXPECT_EQ(cg::language_from_path("x.hpp"), cg::Language::Cpp);
  EXPECT_EQ(cg::language_from_path("X.java"), cg::Language::Java);
  EXPECT_FALSE(cg::language_from_path("README.md").has_value());
  EXPECT_EQ(cg::parse_language("cpp"), cg::Language::Cpp);
  EXPECT_EQ(cg::display_name(cg::Language::Cpp), "C++");
}
