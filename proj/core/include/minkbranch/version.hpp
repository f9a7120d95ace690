#pragma once

namespace minkbranch {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace minkbranch
