#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace mms {

/// One acceptance claim: what was computed, what it is held against, and
/// whether it passed within its runtime budget.
struct ClaimResult {
  int id = 0;
  std::string title;
  std::string statement;
  std::string expected;
  nlohmann::json computed;
  bool pass = false;
  /// A numerical routine failed or a sampled verdict stayed undecided.
  bool inconclusive = false;
  bool uses_sampling = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;

  bool within_budget() const { return seconds <= budget_seconds; }
  /// Timings are left out unless asked for, so reports stay reproducible.
  nlohmann::json to_json(bool timings = false) const;
};

struct ClaimOptions {
  /// Skip the sampled claims.
  bool quick = false;
  std::uint64_t seed = 20240611;
  /// Initial Monte Carlo sample count for the sampled checks.
  std::uint64_t samples = 1 << 18;
};

/// Ids of the claims, 1..13.
std::vector<int> claim_ids();
bool claim_uses_sampling(int id);
ClaimResult run_claim(int id, const ClaimOptions& opts = {});
/// All claims in id order; sampled ones are skipped when `quick`.
std::vector<ClaimResult> run_claims(const ClaimOptions& opts = {});

}  // namespace mms
