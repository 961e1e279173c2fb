#pragma once

namespace briberynet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace briberynet
