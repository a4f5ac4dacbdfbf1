#pragma once

namespace catcode {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace catcode
