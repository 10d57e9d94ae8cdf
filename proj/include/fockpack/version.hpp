#pragma once

namespace fockpack {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fockpack
