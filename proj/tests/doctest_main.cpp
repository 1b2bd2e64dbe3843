// Test driver shared by the unit tests. Every kernel Theorem created while the
// tests run is recorded and audited against random finite models afterwards.
#define DOCTEST_CONFIG_IMPLEMENT
#include <cstdio>

#include "doctest.h"
#include "soundness_audit.hpp"

int main(int argc, char** argv) {
  spa::testing::start_audit();
  doctest::Context context(argc, argv);
  int rc = context.run();
  if (context.shouldExit()) return rc;

  auto audit = spa::testing::finish_audit();
  std::printf("soundness audit: %zu conclusions x %zu interpretations, %zu failures (%.1f s)\n",
              audit.conclusions, audit.interpretations, audit.failures, audit.seconds);
  for (const auto& s : audit.samples) std::printf("  unsound: %s\n", s.c_str());
  if (rc != 0) return rc;
  return audit.failures == 0 ? 0 : 1;
}
