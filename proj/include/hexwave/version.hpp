#pragma once

namespace hexwave {
inline constexpr const char* version = "0.1.0";
}  // namespace hexwave
