#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace confgrade {

// Half-open range of 0-based line indices.
struct LineRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool empty() const noexcept { return end <= begin; }
  bool contains(std::size_t line) const noexcept { return line >= begin && line < end; }
  // Empty ranges intersect nothing.
  bool intersects(const LineRange& other) const noexcept {
    return !empty() && !other.empty() && begin < other.end && other.begin < end;
  }

  friend bool operator==(const LineRange&, const LineRange&) = default;
};

using Lines = std::vector<std::string>;

// "a\nb\n" and "a\nb" both give {"a", "b"}; "" gives {}.
Lines split_lines(std::string_view text);

// Lines separated by '\n', no trailing newline.
std::string join_lines(std::span<const std::string> lines);

// Every line terminated by '\n'.
std::string to_file_text(std::span<const std::string> lines);

bool is_valid_utf8(std::string_view text) noexcept;

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace confgrade
