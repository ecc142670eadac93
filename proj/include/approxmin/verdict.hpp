#pragma once

#include "approxmin/ext_real.hpp"
#include "approxmin/types.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace approxmin {

/// Universal claims are only ever checked on finite sample sets, so a pass
/// is reported as holding on the sample; a failure carries a witness.
enum class Status { kHoldsOnSample, kFails, kVacuous };

const char* to_string(Status s);
Status status_from_string(const std::string& s);

struct Witness {
  Point point;
  /// Named values re-deriving the violated inequality at `point`.
  std::vector<std::pair<std::string, ExtReal>> values;

  ExtReal value(const std::string& name) const;
};

struct Verdict {
  Status status = Status::kVacuous;
  std::optional<Witness> witness;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double tolerance = 0.0;
  std::string note;
  std::vector<std::pair<std::string, double>> details;

  bool holds() const { return status == Status::kHoldsOnSample; }
  bool fails() const { return status == Status::kFails; }
};

}  // namespace approxmin
