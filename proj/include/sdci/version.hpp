#pragma once

namespace sdci {
inline constexpr const char* kVersion = "1.0.0";
}
