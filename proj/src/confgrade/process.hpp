#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <vector>

namespace confgrade {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs argv[0] (looked up on PATH) to completion and captures both streams.
ProcessResult run_process(const std::vector<std::string>& argv);

// A child with pipes on stdin and stdout, for request/response tools such as
// `git cat-file --batch`. stderr is discarded.
class ChildProcess {
 public:
  explicit ChildProcess(const std::vector<std::string>& argv);
  ~ChildProcess();

  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  void write(std::string_view data);
  std::string read_line();
  std::string read_exact(std::size_t count);

 private:
  bool fill();

  pid_t pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  std::string buffer_;
  std::size_t pos_ = 0;
};

}  // namespace confgrade
