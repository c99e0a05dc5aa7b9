#pragma once

namespace recur {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace recur
