#pragma once

namespace cfl {

inline constexpr const char* version = "0.1.0";

} // namespace cfl
