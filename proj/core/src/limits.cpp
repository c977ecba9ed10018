#include "evident/limits.hpp"

#include <cstdlib>
#include <string>

#include "evident/errors.hpp"

namespace evident {

std::size_t enumeration_cap() {
  const char* env = std::getenv("EVIDENT_MAX_M");
  if (env == nullptr || *env == '\0') return kDefaultEnumerationCap;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return kDefaultEnumerationCap;
  std::size_t cap = static_cast<std::size_t>(v);
  return cap > kHardEnumerationCap ? kHardEnumerationCap : cap;
}

void require_enumerable(std::size_t m) {
  std::size_t cap = enumeration_cap();
  if (m > cap) {
    throw SizeLimit("enumeration over " + std::to_string(m) + " sets exceeds the cap of " +
                    std::to_string(cap) + " (2^m subsets); raise EVIDENT_MAX_M or use the "
                    "Monte-Carlo estimator");
  }
}

}  // namespace evident
