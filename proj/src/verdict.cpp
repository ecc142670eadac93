#include "approxmin/verdict.hpp"

#include "approxmin/error.hpp"

namespace approxmin {

const char* to_string(Status s) {
  switch (s) {
    case Status::kHoldsOnSample: return "holds-on-sample";
    case Status::kFails: return "fails";
    case Status::kVacuous: return "vacuous";
  }
  return "?";
}

Status status_from_string(const std::string& s) {
  if (s == "holds-on-sample") return Status::kHoldsOnSample;
  if (s == "fails") return Status::kFails;
  if (s == "vacuous") return Status::kVacuous;
  throw Error("unknown status '" + s + "'");
}

ExtReal Witness::value(const std::string& name) const {
  for (const auto& [k, v] : values)
    if (k == name) return v;
  throw Error("witness has no value '" + name + "'");
}

}  // namespace approxmin
