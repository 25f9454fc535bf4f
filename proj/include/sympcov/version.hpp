#pragma once

namespace sympcov {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "sympcov";

}  // namespace sympcov
