#include "confgrade/process.hpp"

#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include "confgrade/errors.hpp"

extern char** environ;

namespace confgrade {
namespace {

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (::pipe2(fds, O_CLOEXEC) != 0) throw Error(ErrorKind::Io, "pipe() failed");
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fds[0] >= 0) ::close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) ::close(fds[1]);
    fds[1] = -1;
  }
};

std::vector<char*> make_argv(const std::vector<std::string>& argv) {
  std::vector<char*> out;
  out.reserve(argv.size() + 1);
  for (const auto& a : argv) out.push_back(const_cast<char*>(a.c_str()));
  out.push_back(nullptr);
  return out;
}

pid_t spawn(const std::vector<std::string>& argv, posix_spawn_file_actions_t* actions) {
  if (argv.empty()) throw Error(ErrorKind::InvalidArgument, "empty command line");
  auto cargv = make_argv(argv);
  pid_t pid = -1;
  const int rc = ::posix_spawnp(&pid, cargv[0], actions, nullptr, cargv.data(), environ);
  if (rc != 0) {
    throw Error(ErrorKind::Io, "cannot start " + argv[0] + ": " + std::strerror(rc));
  }
  return pid;
}

int wait_exit(pid_t pid) {
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) return -1;
  }
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv) {
  Pipe out;
  Pipe err;
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, 0, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_adddup2(&actions, out.fds[1], 1);
  posix_spawn_file_actions_adddup2(&actions, err.fds[1], 2);
  pid_t pid = -1;
  try {
    pid = spawn(argv, &actions);
  } catch (...) {
    posix_spawn_file_actions_destroy(&actions);
    throw;
  }
  posix_spawn_file_actions_destroy(&actions);
  out.close_write();
  err.close_write();

  ProcessResult result;
  pollfd fds[2] = {{out.fds[0], POLLIN, 0}, {err.fds[0], POLLIN, 0}};
  std::string* sinks[2] = {&result.out, &result.err};
  int open_count = 2;
  char buf[65536];
  while (open_count > 0) {
    if (::poll(fds, 2, -1) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      const auto n = ::read(fds[i].fd, buf, sizeof buf);
      if (n > 0) {
        sinks[i]->append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        fds[i].fd = -1;
        --open_count;
      }
    }
  }
  result.exit_code = wait_exit(pid);
  return result;
}

ChildProcess::ChildProcess(const std::vector<std::string>& argv) {
  int sv[2] = {-1, -1};
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0) {
    throw Error(ErrorKind::Io, "socketpair() failed");
  }
  Pipe in;
  in.close_read();
  in.close_write();
  in.fds[0] = sv[0];
  in.fds[1] = sv[1];
  Pipe out;
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in.fds[0], 0);
  posix_spawn_file_actions_adddup2(&actions, out.fds[1], 1);
  posix_spawn_file_actions_addopen(&actions, 2, "/dev/null", O_WRONLY, 0);
  try {
    pid_ = spawn(argv, &actions);
  } catch (...) {
    posix_spawn_file_actions_destroy(&actions);
    throw;
  }
  posix_spawn_file_actions_destroy(&actions);
  in_fd_ = in.fds[1];
  in.fds[1] = -1;
  out_fd_ = out.fds[0];
  out.fds[0] = -1;
}

ChildProcess::~ChildProcess() {
  if (in_fd_ >= 0) ::close(in_fd_);
  if (out_fd_ >= 0) ::close(out_fd_);
  if (pid_ > 0) wait_exit(pid_);
}

void ChildProcess::write(std::string_view data) {
  while (!data.empty()) {
    // MSG_NOSIGNAL: a dead child surfaces as an error instead of SIGPIPE.
    const auto n = ::send(in_fd_, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorKind::Io, "child process closed its input");
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

bool ChildProcess::fill() {
  if (pos_ > 0 && (pos_ == buffer_.size() || pos_ > (1u << 20))) {
    buffer_.erase(0, pos_);
    pos_ = 0;
  }
  char buf[65536];
  for (;;) {
    const auto n = ::read(out_fd_, buf, sizeof buf);
    if (n > 0) {
      buffer_.append(buf, static_cast<std::size_t>(n));
      return true;
    }
    if (n == 0) return false;
    if (errno != EINTR) return false;
  }
}

std::string ChildProcess::read_line() {
  for (;;) {
    const auto nl = buffer_.find('\n', pos_);
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(pos_, nl - pos_);
      pos_ = nl + 1;
      return line;
    }
    if (!fill()) throw Error(ErrorKind::Io, "child process ended unexpectedly");
  }
}

std::string ChildProcess::read_exact(std::size_t count) {
  while (buffer_.size() - pos_ < count) {
    if (!fill()) throw Error(ErrorKind::Io, "child process ended unexpectedly");
  }
  std::string data = buffer_.substr(pos_, count);
  pos_ += count;
  return data;
}

}  // namespace confgrade
