#pragma once

#include <set>
#include <string>

namespace lfhh {

// Identifiers. Freshness works by appending a numeric suffix; identity is
// the rendered text.
using Name = std::string;
using NameSet = std::set<Name>;

// Smallest variant of `base` (base, base1, base2, ...) not in `avoid`.
Name fresh_name(const Name& base, const NameSet& avoid);

}  // namespace lfhh
