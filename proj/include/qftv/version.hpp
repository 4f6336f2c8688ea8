#pragma once

namespace qftv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qftv
