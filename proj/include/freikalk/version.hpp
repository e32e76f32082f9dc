#pragma once

namespace freikalk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace freikalk
