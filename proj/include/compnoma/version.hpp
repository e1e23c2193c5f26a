#pragma once

namespace compnoma {

inline constexpr const char* kVersion = "1.0.0";

}
