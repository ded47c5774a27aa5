#pragma once

namespace fracperim {
inline constexpr const char* kVersion = "0.1.0";
}
