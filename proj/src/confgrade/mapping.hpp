#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "confgrade/operations.hpp"
#include "confgrade/scenario.hpp"

namespace confgrade {

// Which lines of a node an operation covers.
enum class LineScope {
  Whole,     // every line of the node
  Header,    // lines before the node's body field (at least the first line)
  First,     // the first line only
  Boundary,  // the first and the last line
};

// Guards that must hold for a rule to fire.
enum class Condition {
  Always,
  Prose,                  // literal text holds at least two words
  StringOnly,             // statement consisting of one string literal
  AnnotatedAssignment,    // statement wrapping an assignment with a type annotation
  FirstBinding,           // assignment outside functions introducing a new name in its scope
  HasBody,                // node has its body field
  FunctionDeclarator,     // declaration whose declarator declares a function
  NotFunctionDeclarator,  // any other declaration
};

struct MappingRule {
  OpKind op = OpKind::CMT;
  LineScope lines = LineScope::Whole;
  Condition when = Condition::Always;
  std::string body_field = "body";

  friend bool operator==(const MappingRule&, const MappingRule&) = default;
};

// Node-kind inventory of one grammar.
struct LanguageMapping {
  std::map<std::string, std::vector<MappingRule>, std::less<>> nodes;
  // Kinds whose named children are statements.
  std::set<std::string, std::less<>> containers;
  // Function-like kinds and the field holding their body.
  std::map<std::string, std::string, std::less<>> functions;
  // Kinds that open a type scope (statements directly inside are not function bodies).
  std::set<std::string, std::less<>> types;

  friend bool operator==(const LanguageMapping&, const LanguageMapping&) = default;
};

class MappingTable {
 public:
  // The shipped inventory for C, C++, Java and Python.
  static MappingTable defaults();

  // Languages present in the document replace the defaults; others keep them.
  static MappingTable from_json_text(std::string_view json_text);
  static MappingTable load(const std::filesystem::path& path);

  std::string to_json_text() const;

  const LanguageMapping& for_language(Language language) const;
  LanguageMapping& for_language(Language language);

  friend bool operator==(const MappingTable&, const MappingTable&) = default;

 private:
  std::map<Language, LanguageMapping> languages_;
};

std::string_view to_string(LineScope scope) noexcept;
std::string_view to_string(Condition condition) noexcept;

}  // namespace confgrade
