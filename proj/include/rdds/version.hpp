#pragma once

namespace rdds {

inline constexpr const char* kToolName = "rdds-eval";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace rdds
