// Acceptance suite: one line per criterion, exit status 0 only when all pass.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "decimals/c_api.h"

int main(int argc, char** argv) {
  uint64_t seed = 20261016;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (int id = 1; id <= dec_selftest_count(); ++id) {
    dec_report* r = nullptr;
    dec_status s = dec_selftest(id, seed, &r);
    if (s != DEC_OK) {
      std::printf("criterion %d: FAIL  error: %s: %s\n", id, dec_status_name(s), dec_last_error());
      ++failed;
      continue;
    }
    std::string result = dec_report_get(r, 0, "result");
    if (result != "PASS") ++failed;
    std::printf("criterion %d: %s  %s [%ss] %s\n", id, result.c_str(), dec_report_get(r, 0, "name"),
                dec_report_get(r, 0, "seconds"), dec_report_get(r, 0, "detail"));
    std::fflush(stdout);
    dec_report_free(r);
  }
  std::printf("%d of %d criteria passed\n", dec_selftest_count() - failed, dec_selftest_count());
  return failed ? 1 : 0;
}
