#pragma once

namespace bragg {

inline constexpr const char* version = "1.0.0";

} // namespace bragg
