#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "flatspec/bieberbach.hpp"

namespace flatspec {

/// Parameter space of diagonal-holonomy groups: rotation parts are diagonal
/// sign matrices, translation parts have entries in (1/d) Z with d the
/// translation denominator, and the lattice is diagonal with entries drawn
/// from lattice_scales.
struct DiagonalFamily {
  int n = 3;
  int min_holonomy = 1;
  int max_holonomy = 4;  // 1, 2 or 4
  std::vector<Rational> lattice_scales{Rational(1)};
  int translation_denominator = 2;
  /// Guard on the number of generator sets examined.
  std::size_t max_candidates = 200'000;
};

class FamilyTooLarge : public Error {
 public:
  using Error::Error;
};

/// Valid (free) groups of the family, duplicates removed, in a deterministic
/// order: lattice, then number of generators, then generator index.
/// Stops after max_results members.
std::vector<BieberbachGroup> enumerate_diagonal_family(const DiagonalFamily& family,
                                                       std::size_t max_results = std::numeric_limits<std::size_t>::max());

}  // namespace flatspec
