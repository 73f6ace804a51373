#pragma once

namespace mrz {
inline constexpr const char* kVersion = "0.3.0";
}
