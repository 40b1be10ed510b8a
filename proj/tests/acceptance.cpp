// Acceptance matrix: `acceptance N` runs criterion N, `acceptance` runs all.
// One PASS/FAIL line per criterion; the full report follows a failure.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "dspace/suite.hpp"

using namespace dspace;

namespace {

// Pads to a width in code points so non-ASCII titles line up.
std::string pad(const std::string& s, std::size_t width) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return s + std::string(n < width ? width - n : 0, ' ');
}

bool run(int id) {
  const auto& c = suite::criterion(id);
  Report r;
  try {
    r = suite::run_criterion(id);
  } catch (const std::exception& e) {
    std::printf("FAIL criterion %2d  %s  exception: %s\n", id, pad(c.title, 36).c_str(), e.what());
    return false;
  }
  std::printf("%s criterion %2d  %s  %7.3f s (bound %g s)%s\n", r.ok() ? "PASS" : "FAIL", id, pad(c.title, 36).c_str(),
              r.seconds, c.limit_seconds, r.ok() && r.has_bounded() ? "  [verified up to bound]" : "");
  if (!r.ok() || std::getenv("ACCEPTANCE_VERBOSE")) std::cout << r.to_text();
  return r.ok();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::fprintf(stderr, "usage: acceptance [criterion]\n");
    return 2;
  }
  if (argc == 2) {
    int id = std::atoi(argv[1]);
    if (id < 1 || id > static_cast<int>(suite::criteria().size())) {
      std::fprintf(stderr, "acceptance: no criterion '%s'\n", argv[1]);
      return 2;
    }
    return run(id) ? 0 : 1;
  }
  bool ok = true;
  for (const auto& c : suite::criteria()) ok = run(c.id) && ok;
  return ok ? 0 : 1;
}
