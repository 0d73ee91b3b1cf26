#pragma once

namespace ergraph {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ergraph
