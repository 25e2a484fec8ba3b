// version.hpp
#pragma once

namespace emh {
inline constexpr const char* kVersion = "0.1.0";
}
