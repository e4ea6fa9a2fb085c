#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace atomkit {

/// Ordinal below omega^k written as a tuple of naturals, compared
/// lexicographically.
struct RankValue {
  std::vector<std::size_t> components;

  auto operator<=>(const RankValue&) const = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(components[i]);
    }
    return s + ")";
  }
};

}  // namespace atomkit
