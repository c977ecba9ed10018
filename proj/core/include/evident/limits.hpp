#pragma once

#include <cstddef>

namespace evident {

/// Exhaustive routines enumerate 2^m index sets; beyond the cap they refuse
/// with SizeLimit instead of grinding. EVIDENT_MAX_M overrides the default,
/// clamped to the hard cap.
inline constexpr std::size_t kDefaultEnumerationCap = 24;
inline constexpr std::size_t kHardEnumerationCap = 30;

std::size_t enumeration_cap();

/// Throws SizeLimit when m exceeds enumeration_cap().
void require_enumerable(std::size_t m);

}  // namespace evident
