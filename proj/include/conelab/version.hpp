#pragma once

namespace conelab {

inline constexpr const char* kToolName = "conelab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace conelab
