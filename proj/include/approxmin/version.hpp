#pragma once

namespace approxmin {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace approxmin
