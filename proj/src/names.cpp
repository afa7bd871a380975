#include "lfhh/names.hpp"

namespace lfhh {

Name fresh_name(const Name& base, const NameSet& avoid) {
  if (avoid.find(base) == avoid.end()) return base;
  for (int i = 1;; ++i) {
    Name candidate = base + std::to_string(i);
    if (avoid.find(candidate) == avoid.end()) return candidate;
  }
}

}  // namespace lfhh
