#pragma once

namespace covq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace covq
