// Builds the fixture repository used by the tests at the given path.

#include <cstdio>
#include <exception>

#include "fixture_repo.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: make_fixture_repo <dir>\n");
    return 2;
  }
  try {
    confgrade::testing::build_fixture_repo(argv[1]);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "make_fixture_repo: %s\n", e.what());
    return 1;
  }
  return 0;
}
