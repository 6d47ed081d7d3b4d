#pragma once

namespace hubnet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hubnet
