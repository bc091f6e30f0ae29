#pragma once

#include <vector>

#include "flatspec/linalg.hpp"

namespace flatspec {

struct LatticePoint {
  IntVector coeffs;
  Rational norm;  // x^T gram x
};

/// All integer vectors x with x^T gram x <= bound, sorted by (norm, coeffs).
///
/// Fincke-Pohst over Q: gram is written as sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
/// and each coordinate is scanned over a floating box widened by one on both
/// sides; every partial sum is then checked exactly, so nothing on the cutoff
/// sphere is missed. Throws if more than max_points vectors qualify.
std::vector<LatticePoint> enumerate_short_vectors(const RatMatrix& gram, const Rational& bound,
                                                  std::size_t max_points = 5'000'000);

}  // namespace flatspec
