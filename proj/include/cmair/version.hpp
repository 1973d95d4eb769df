#pragma once

namespace cmair {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cmair
