#pragma once

#include <string_view>

namespace hypernorm {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kToolName = "hypernorm";

}  // namespace hypernorm
