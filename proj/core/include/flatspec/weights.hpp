#pragma once

#include <compare>
#include <string>
#include <vector>

#include "flatspec/rational.hpp"

namespace flatspec {

/// Whether a weight parameterizes SO(2m+1) (Odd) or SO(2m) (Even).
enum class Parity { Odd, Even };

inline Parity parity_of(int n) { return n % 2 == 1 ? Parity::Odd : Parity::Even; }
inline int rank_of(int n) { return n / 2; }
inline int group_dimension(int rank, Parity parity) { return 2 * rank + (parity == Parity::Odd ? 1 : 0); }

class WeightError : public Error {
 public:
  using Error::Error;
};

/// Dominant integral weight (a_1, ..., a_m) of SO(n), n = 2m or 2m+1.
///
/// Odd parity requires a_1 >= ... >= a_m >= 0; even parity requires
/// a_1 >= ... >= a_{m-1} >= |a_m|. Instances are always valid.
class Weight {
 public:
  /// Checks the dominance chain; the error names the first violated inequality.
  static Weight validate(std::vector<int> coords, int rank, Parity parity);

  static Weight zero(int rank, Parity parity) { return Weight(std::vector<int>(static_cast<std::size_t>(rank), 0), parity); }

  int rank() const { return static_cast<int>(coords_.size()); }
  Parity parity() const { return parity_; }
  int group_n() const { return group_dimension(rank(), parity_); }
  const std::vector<int>& coords() const { return coords_; }
  int operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  int last() const { return coords_.empty() ? 0 : coords_.back(); }

  /// Sum of coordinates.
  int size() const;
  bool is_zero() const;

  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  Weight(std::vector<int> coords, Parity parity) : coords_(std::move(coords)), parity_(parity) {}

  std::vector<int> coords_;
  Parity parity_;
};

/// Negates the last coordinate (even parity only).
Weight bar(const Weight& w);

/// mu1 < mu2 in the sense c_1-b_1 >= c_2-b_2 >= ... >= c_m-b_m >= 0.
/// The condition admits mu1 == mu2; see strictly_less.
bool less(const Weight& mu1, const Weight& mu2);
bool strictly_less(const Weight& mu1, const Weight& mu2);

/// Index (1-based) of the last nonzero coordinate; 0 for the zero weight.
int ell(const Weight& w);

/// Total order used to drive the reconstruction induction: by ell, then by
/// |b_ell|, then lexicographic on |coords|, nonnegative last coordinate first.
/// Any weight componentwise below another (same sign pattern) precedes it.
std::strong_ordering processing_order(const Weight& a, const Weight& b);

struct ProcessingOrderLess {
  bool operator()(const Weight& a, const Weight& b) const { return processing_order(a, b) < 0; }
};

/// All dominant weights with a_1 <= bound, in processing order.
std::vector<Weight> enumerate_weights(int rank, Parity parity, int bound);

/// "(2,1,-1)" style rendering.
std::string to_string(const Weight& w);

}  // namespace flatspec
