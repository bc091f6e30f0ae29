#include "flatspec/weights.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace flatspec {

namespace {

std::string coord_name(const char* letter, int i) { return std::string(letter) + std::to_string(i + 1); }

}  // namespace

Weight Weight::validate(std::vector<int> coords, int rank, Parity parity) {
  if (rank < 0) throw WeightError("negative rank");
  if (static_cast<int>(coords.size()) != rank)
    throw WeightError("weight has " + std::to_string(coords.size()) + " coordinates, expected " +
                      std::to_string(rank));
  for (int i = 0; i + 1 < rank; ++i) {
    const bool last_pair = i + 2 == rank;
    if (parity == Parity::Even && last_pair) {
      if (coords[i] < std::abs(coords[i + 1]))
        throw WeightError("not dominant: " + coord_name("a", i) + " < |" + coord_name("a", i + 1) + "| (" +
                          std::to_string(coords[i]) + " < " + std::to_string(std::abs(coords[i + 1])) + ")");
    } else if (coords[i] < coords[i + 1]) {
      throw WeightError("not dominant: " + coord_name("a", i) + " < " + coord_name("a", i + 1) + " (" +
                        std::to_string(coords[i]) + " < " + std::to_string(coords[i + 1]) + ")");
    }
  }
  if (rank > 0 && coords.back() < 0) {
    // SO(2): a single coordinate of any sign is dominant.
    const bool allowed = parity == Parity::Even;
    if (!allowed)
      throw WeightError("not dominant: " + coord_name("a", rank - 1) + " < 0 (" + std::to_string(coords.back()) + ")");
  }
  return Weight(std::move(coords), parity);
}

int Weight::size() const { return std::accumulate(coords_.begin(), coords_.end(), 0); }

bool Weight::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](int c) { return c == 0; });
}

Weight bar(const Weight& w) {
  if (w.parity() != Parity::Even) throw WeightError("bar is only defined for SO(2m) weights");
  std::vector<int> c = w.coords();
  if (!c.empty()) c.back() = -c.back();
  return Weight::validate(std::move(c), w.rank(), w.parity());
}

bool less(const Weight& mu1, const Weight& mu2) {
  if (mu1.rank() != mu2.rank() || mu1.parity() != mu2.parity())
    throw WeightError("less: weights of different groups");
  if (mu1.last() < 0 || mu2.last() < 0) throw WeightError("less: negative last coordinate");
  const int m = mu1.rank();
  for (int i = 0; i < m; ++i) {
    const int diff = mu2[i] - mu1[i];
    const int next = i + 1 < m ? mu2[i + 1] - mu1[i + 1] : 0;
    if (diff < next) return false;
  }
  return m == 0 || mu2[m - 1] - mu1[m - 1] >= 0;
}

bool strictly_less(const Weight& mu1, const Weight& mu2) { return less(mu1, mu2) && !(mu1 == mu2); }

int ell(const Weight& w) {
  for (int i = w.rank(); i > 0; --i)
    if (w[i - 1] != 0) return i;
  return 0;
}

std::strong_ordering processing_order(const Weight& a, const Weight& b) {
  if (auto c = ell(a) <=> ell(b); c != 0) return c;
  const int p = ell(a);
  if (p > 0)
    if (auto c = std::abs(a[p - 1]) <=> std::abs(b[p - 1]); c != 0) return c;
  const int m = std::min(a.rank(), b.rank());
  for (int i = 0; i < m; ++i)
    if (auto c = std::abs(a[i]) <=> std::abs(b[i]); c != 0) return c;
  if (auto c = (a.last() < 0) <=> (b.last() < 0); c != 0) return c;
  return a.rank() <=> b.rank();
}

std::vector<Weight> enumerate_weights(int rank, Parity parity, int bound) {
  std::vector<Weight> out;
  if (bound < 0) throw WeightError("negative enumeration bound");
  std::vector<int> c(static_cast<std::size_t>(rank), 0);
  // Nonincreasing tuples with entries in [0, bound], generated recursively.
  auto rec = [&](auto&& self, int i, int cap) -> void {
    if (i == rank) {
      out.push_back(Weight::validate(c, rank, parity));
      if (parity == Parity::Even && rank > 0 && c.back() > 0) {
        std::vector<int> neg = c;
        neg.back() = -neg.back();
        out.push_back(Weight::validate(std::move(neg), rank, parity));
      }
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      c[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, bound);
  std::sort(out.begin(), out.end(), ProcessingOrderLess{});
  return out;
}

std::string to_string(const Weight& w) {
  std::string s = "(";
  for (int i = 0; i < w.rank(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

}  // namespace flatspec
