// Prints one line per criterion; exit status 1 when any selected one fails.
#include <cstdio>
#include <cstring>
#include <cstdlib>

#include "fibcat/classify.hpp"

int main(int argc, char** argv) {
  int first = 1, last = 9;
  for (int i = 1; i < argc; ++i)
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) first = last = std::atoi(argv[++i]);
  if (first < 1 || last > 9) {
    std::fprintf(stderr, "usage: acceptance [--criterion 1..9]\n");
    return 2;
  }
  bool ok = true;
  for (int n = first; n <= last; ++n) {
    auto c = fibcat::run_suite_check(n);
    ok &= c.pass;
    std::printf("AC%d %s %s (%.0f ms, limit %.0f ms): %s\n", n, c.pass ? "PASS" : "FAIL", c.key.c_str(), c.ms,
                c.limitMs, c.detail.c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
