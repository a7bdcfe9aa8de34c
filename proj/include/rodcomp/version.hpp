#pragma once

namespace rodcomp {

inline constexpr const char* kToolName = "rodcomp";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace rodcomp
