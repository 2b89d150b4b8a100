#pragma once

namespace gsforge {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gsforge
