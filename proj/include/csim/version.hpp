#pragma once

namespace csim {

inline constexpr const char* kToolName = "cachesim";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace csim
