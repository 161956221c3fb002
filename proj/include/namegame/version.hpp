#pragma once

namespace namegame {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace namegame
