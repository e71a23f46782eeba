#pragma once

namespace tca {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tca
