#pragma once

namespace mqg {

inline constexpr const char* kVersion = "0.1.0";

} // namespace mqg
