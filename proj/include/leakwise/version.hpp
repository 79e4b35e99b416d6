#pragma once

namespace leakwise {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace leakwise
