#pragma once

namespace opjensen {

inline constexpr const char* kVersion = "opjensen 0.1.0";

}  // namespace opjensen
