#pragma once

// Brute-force references shared by unit and acceptance tests.

#include <algorithm>
#include <vector>

#include "toricfol/polynomial.hpp"

namespace toricfol::brute {

/// Dimension of V(monomials) in affine n-space: n minus the size of a
/// smallest variable set meeting every support; -1 for the unit ideal.
inline int hitting_set_dimension(std::size_t n, const std::vector<Exponents>& gens) {
  for (const auto& g : gens)
    if (std::all_of(g.begin(), g.end(), [](std::uint32_t e) { return e == 0; })) return -1;
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      bool hits = std::all_of(gens.begin(), gens.end(), [&](const Exponents& g) {
        for (std::size_t i = 0; i < n; ++i)
          if (g[i] && pick[i]) return true;
        return false;
      });
      if (hits) return static_cast<int>(n - size);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return -1;
}

}  // namespace toricfol::brute
