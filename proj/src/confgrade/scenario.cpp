#include "confgrade/scenario.hpp"

namespace confgrade {

std::string_view to_string(Language language) noexcept {
  switch (language) {
    case Language::C: return "c";
    case Language::Cpp: return "cpp";
    case Language::Java: return "java";
    case Language::Python: return "python";
  }
  return "c";
}

std::string_view display_name(Language language) noexcept {
  switch (language) {
    case Language::C: return "C";
    case Language::Cpp: return "C++";
    case Language::Java: return "Java";
    case Language::Python: return "Python";
  }
  return "C";
}

std::optional<Language> parse_language(std::string_view name) noexcept {
  if (name == "c" || name == "C") return Language::C;
  if (name == "cpp" || name == "c++" || name == "C++" || name == "Cpp") return Language::Cpp;
  if (name == "java" || name == "Java") return Language::Java;
  if (name == "python" || name == "py" || name == "Python") return Language::Python;
  return std::nullopt;
}

std::optional<Language> language_from_path(std::string_view path) noexcept {
  const auto slash = path.find_last_of('/');
  const auto base = slash == std::string_view::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  if (dot == std::string_view::npos || dot == 0) return std::nullopt;
  const auto ext = base.substr(dot + 1);
  if (ext == "c" || ext == "h") return Language::C;
  if (ext == "cc" || ext == "cpp" || ext == "cxx" || ext == "hpp" || ext == "hh") {
    return Language::Cpp;
  }
  if (ext == "java") return Language::Java;
  if (ext == "py") return Language::Python;
  return std::nullopt;
}

}  // namespace confgrade
