#pragma once

namespace rdi {
inline constexpr const char* kVersion = "1.0.0";
}
