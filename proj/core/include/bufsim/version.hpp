#pragma once

namespace bufsim {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "bufsim";

}  // namespace bufsim
