#pragma once

namespace cvlink {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cvlink
