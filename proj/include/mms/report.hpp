#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace mms {

inline constexpr std::string_view kVersion = "0.3.0";

/// Which side of the true quantity a reported number sits on.
enum class Direction { exact, lower, upper, estimate };

/// Whether a geometric predicate was decided over the full point universe or
/// only over a finite witness sample (which may under-report).
enum class Provenance { exact, sampled };

std::string_view to_string(Direction d);
std::string_view to_string(Provenance p);

/// A named numeric quantity with the method that produced it.
struct BoundReport {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;
  std::string method;
  Direction direction = Direction::estimate;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const;
};

/// JSON cannot carry inf/nan; encode them as strings so reports stay lossless.
nlohmann::json number_to_json(double v);

}  // namespace mms
