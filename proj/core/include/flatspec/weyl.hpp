#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace flatspec {

struct WeightMultiplicity {
  std::vector<int> weight;
  std::int64_t multiplicity;
};

/// Weights of the SO(n) irreducible with the given dominant highest weight,
/// with multiplicities. Computed once per (n, highest) by exact division of
/// the alternating sum over the Weyl group (types B_m / D_m) by the product
/// of (x^{a/2} - x^{-a/2}) over positive roots. Thread-safe memoized.
const std::vector<WeightMultiplicity>& so_weight_multiset(int n, const std::vector<int>& highest);

/// Weyl dimension formula for SO(n).
std::int64_t weyl_dimension(int n, const std::vector<int>& highest);

/// Character of the SO(n) irreducible at the maximal-torus element with
/// rotation angles theta_1..theta_m (radians).
double so_character(int n, const std::vector<int>& highest, std::span<const double> angles);

/// Number of memoized weight multisets (for diagnostics and benchmarks).
std::size_t weight_cache_size();

struct CachedMultiset {
  int n;
  std::vector<int> highest;
  std::vector<WeightMultiplicity> weights;
};

/// Copy of the memo, for persisting between runs.
std::vector<CachedMultiset> weight_cache_snapshot();
/// Inserts an entry unless one is already present.
void seed_weight_cache(CachedMultiset entry);
void clear_weight_cache();

}  // namespace flatspec
