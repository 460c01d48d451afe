#include <cmath>
#include <limits>

#include <doctest.h>

#include "mms/claims.hpp"
#include "mms/report.hpp"

using namespace mms;

TEST_CASE("non-finite numbers survive JSON") {
  CHECK(number_to_json(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(number_to_json(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(number_to_json(std::nan("")) == "nan");
  CHECK(number_to_json(1.5) == 1.5);
}

TEST_CASE("bound reports carry direction and seed") {
  BoundReport b{"C", 2.0, 0.0, "enumeration", Direction::upper, 42};
  const auto j = b.to_json();
  CHECK(j["direction"] == "upper");
  CHECK(j["seed"] == 42);
  b.seed.reset();
  CHECK(b.to_json()["seed"].is_null());
}

TEST_CASE("claim reports omit timings unless asked") {
  const ClaimResult r = run_claim(13);
  CHECK(r.pass);
  CHECK_FALSE(r.inconclusive);
  CHECK_FALSE(r.to_json().contains("seconds"));
  CHECK(r.to_json(true).contains("seconds"));
  CHECK(r.to_json() == run_claim(13).to_json());
}

TEST_CASE("claim registry") {
  CHECK(claim_ids().size() == 13);
  CHECK(claim_uses_sampling(8));
  CHECK_FALSE(claim_uses_sampling(1));
  CHECK_THROWS_AS(run_claim(99), std::out_of_range);
  for (int id : claim_ids()) CHECK(claim_uses_sampling(id) == (id == 8));
}
