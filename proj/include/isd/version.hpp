#pragma once

namespace isd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace isd
