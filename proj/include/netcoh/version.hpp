#pragma once

namespace netcoh {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace netcoh
