#pragma once

namespace kawahara {

inline constexpr const char* kToolkitVersion = "1.0.0";

}  // namespace kawahara
