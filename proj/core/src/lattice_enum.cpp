#include "flatspec/lattice_enum.hpp"

#include <algorithm>
#include <cmath>

namespace flatspec {

std::vector<LatticePoint> enumerate_short_vectors(const RatMatrix& gram, const Rational& bound,
                                                  std::size_t max_points) {
  const int n = gram.rows();
  if (n != gram.cols()) throw Error("Gram matrix must be square");
  if (bound < 0) return {};
  std::vector<LatticePoint> out;
  if (n == 0) {
    out.push_back({{}, 0});
    return out;
  }

  // q(i,i) = diagonal weights, q(i,j) (j > i) = coupling coefficients.
  RatMatrix q = gram;
  for (int i = 0; i < n; ++i) {
    if (q(i, i) <= 0) throw Error("Gram matrix is not positive definite");
    for (int j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (int k = i + 1; k < n; ++k)
      for (int l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }

  IntVector x(static_cast<std::size_t>(n), 0);
  std::vector<Rational> used(static_cast<std::size_t>(n + 1), 0);  // exact partial sums from the top

  auto rec = [&](auto&& self, int i) -> void {
    const Rational remaining = bound - used[static_cast<std::size_t>(i + 1)];
    Rational center = 0;
    for (int j = i + 1; j < n; ++j)
      if (x[j] != 0) center -= q(i, j) * Rational(static_cast<long>(x[j]));
    const double radius = std::sqrt(std::max(0.0, Rational(remaining / q(i, i)).get_d()));
    const double c = center.get_d();
    const long lo = static_cast<long>(std::floor(c - radius)) - 1;
    const long hi = static_cast<long>(std::ceil(c + radius)) + 1;
    for (long v = lo; v <= hi; ++v) {
      const Rational offset = Rational(v) - center;
      const Rational term = q(i, i) * offset * offset;
      if (term > remaining) continue;
      x[static_cast<std::size_t>(i)] = v;
      used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(i + 1)] + term;
      if (i == 0) {
        if (out.size() >= max_points) throw Error("lattice enumeration exceeded its point budget");
        out.push_back({x, used[0]});
      } else {
        self(self, i - 1);
      }
    }
    x[static_cast<std::size_t>(i)] = 0;
  };
  rec(rec, n - 1);

  for (auto& p : out) p.norm.canonicalize();
  std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.coeffs < b.coeffs;
  });
  return out;
}

}  // namespace flatspec
