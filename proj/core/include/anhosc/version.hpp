#pragma once

namespace anhosc {
inline constexpr const char* kVersion = "0.1.0";
}
