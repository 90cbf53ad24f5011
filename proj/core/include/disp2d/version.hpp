#pragma once

namespace disp2d {

inline constexpr const char* toolkit_version = "0.1.0";

}
