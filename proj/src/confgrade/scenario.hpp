#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace confgrade {

enum class Language { C, Cpp, Java, Python };

inline constexpr Language kAllLanguages[] = {Language::C, Language::Cpp, Language::Java,
                                             Language::Python};

// "c", "cpp", "java", "python"
std::string_view to_string(Language language) noexcept;
// "C", "C++", "Java", "Python"
std::string_view display_name(Language language) noexcept;
std::optional<Language> parse_language(std::string_view name) noexcept;

// .c/.h -> C; .cc/.cpp/.cxx/.hpp/.hh -> Cpp; .java -> Java; .py -> Python.
std::optional<Language> language_from_path(std::string_view path) noexcept;

// One conflicted file of one historical merge: the base O, the two parents
// A and B, the replayed merge M (with conflict markers) and the committed
// resolution R.
struct MergeScenario {
  std::string repo_id;
  std::string merge_commit;
  std::string parent_a;
  std::string parent_b;
  std::string base;
  std::string file_path;
  Language language = Language::C;
  std::string version_o;
  std::string version_a;
  std::string version_b;
  std::string version_m;
  std::optional<std::string> version_r;

  std::string id() const { return repo_id + "@" + merge_commit + ":" + file_path; }

  friend bool operator==(const MergeScenario&, const MergeScenario&) = default;
};

}  // namespace confgrade
