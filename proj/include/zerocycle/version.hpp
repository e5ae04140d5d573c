#pragma once

namespace zerocycle {

inline constexpr const char* tool_name = "zerocycle";
inline constexpr const char* tool_version = "0.1.0";

}  // namespace zerocycle
