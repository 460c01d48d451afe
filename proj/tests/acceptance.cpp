#include <cstdio>
#include <cstdlib>
#include <string>

#include "mms/claims.hpp"

// Runs every acceptance claim at full settings and prints one line per claim.
// A claim passes only if its check holds within its runtime budget.
int main(int argc, char** argv) {
  mms::ClaimOptions opts;
  if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (int id : mms::claim_ids()) {
    const mms::ClaimResult r = mms::run_claim(id, opts);
    const bool ok = r.pass && r.within_budget();
    const char* tag = ok ? "PASS" : r.inconclusive ? "INCONCLUSIVE" : "FAIL";
    std::printf("%-12s claim %2d  %-40s %9.3f s / %6.0f s budget\n", tag, r.id, r.title.c_str(), r.seconds,
                r.budget_seconds);
    if (!ok) {
      ++failed;
      std::printf("             computed %s\n", r.computed.dump().c_str());
      std::printf("             expected %s\n", r.expected.c_str());
      if (!r.detail.empty()) std::printf("             detail   %s\n", r.detail.c_str());
      if (r.pass && !r.within_budget()) std::printf("             over runtime budget\n");
    }
  }
  std::printf("%d of %zu claims passed\n", static_cast<int>(mms::claim_ids().size()) - failed, mms::claim_ids().size());
  return failed == 0 ? 0 : 1;
}
