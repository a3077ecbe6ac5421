#pragma once

namespace papr {

inline constexpr const char* project_name = "paprbound";
inline constexpr const char* project_version = "0.1.0";

}  // namespace papr
