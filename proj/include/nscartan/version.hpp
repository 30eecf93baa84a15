#pragma once

namespace nscartan {

// Bumping this invalidates cached per-prime results.
inline constexpr const char* code_version = "0.3.1";

} // namespace nscartan
