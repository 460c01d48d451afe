#include "mms/report.hpp"

#include <cmath>

namespace mms {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::exact: return "exact";
    case Direction::lower: return "lower";
    case Direction::upper: return "upper";
    case Direction::estimate: return "estimate";
  }
  return "estimate";
}

std::string_view to_string(Provenance p) {
  return p == Provenance::exact ? "exact" : "sampled";
}

nlohmann::json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json BoundReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["value"] = number_to_json(value);
  j["std_error"] = number_to_json(std_error);
  j["method"] = method;
  j["direction"] = std::string(to_string(direction));
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return j;
}

}  // namespace mms
