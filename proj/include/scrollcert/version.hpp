#pragma once

namespace scrollcert {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace scrollcert
