#pragma once

// Reference computations used only by the tests. They deliberately avoid
// the library's own algorithms: characters come from the determinantal
// formula for orthogonal characters in the complete symmetric functions of
// the eigenvalues, lattice counts from a plain box scan.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <algorithm>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "flatspec/bieberbach.hpp"
#include "flatspec/orthogonal_dual.hpp"

namespace oracle {

using cd = std::complex<double>;

inline std::vector<cd> eigenvalues(const flatspec::OrthogonalClass& cls) {
  std::vector<cd> x;
  for (int i = 0; i < cls.plus_ones; ++i) x.emplace_back(1.0, 0.0);
  for (int i = 0; i < cls.minus_ones; ++i) x.emplace_back(-1.0, 0.0);
  for (double t : cls.pair_angles) {
    x.push_back(std::polar(1.0, t));
    x.push_back(std::polar(1.0, -t));
  }
  return x;
}

// h_0..h_kmax of the given variables.
inline std::vector<cd> complete_symmetric(const std::vector<cd>& x, int kmax) {
  std::vector<cd> h(static_cast<std::size_t>(kmax + 1), cd(0));
  h[0] = 1;
  for (const cd& xi : x)
    for (int k = 1; k <= kmax; ++k) h[static_cast<std::size_t>(k)] += xi * h[static_cast<std::size_t>(k - 1)];
  return h;
}

// Character of the O(n) irreducible [lambda] (partition with at most n/2
// parts): det( h_{l_i - i + j} - h_{l_i - i - j} ), 1 <= i, j <= len.
inline cd partition_character(const std::vector<int>& lambda, const std::vector<cd>& x) {
  int len = 0;
  for (int v : lambda)
    if (v > 0) ++len;
  if (len == 0) return 1;
  const int kmax = lambda.front() + len + 1;
  const auto h = complete_symmetric(x, kmax);
  auto hk = [&](int k) { return k < 0 ? cd(0) : h[static_cast<std::size_t>(k)]; };
  Eigen::MatrixXcd m(len, len);
  for (int i = 1; i <= len; ++i)
    for (int j = 1; j <= len; ++j) {
      const int li = lambda[static_cast<std::size_t>(i - 1)];
      m(i - 1, j - 1) = hk(li - i + j) - hk(li - i - j);
    }
  return m.determinant();
}

// tau_{Lambda,delta} as [Lambda] (x) det^e. n odd: (-1)^e = delta (-1)^{|Lambda|};
// n even with a_m = 0: (-1)^e = delta * (1 under A, (-1)^{|Lambda|} under B);
// n even with a_m > 0: [Lambda] itself.
inline double character(const flatspec::OIrrep& tau, const flatspec::OrthogonalClass& cls,
                        flatspec::Convention convention) {
  const auto& lambda = tau.highest().coords();
  const int size = tau.highest().size();
  const cd value = partition_character(lambda, eigenvalues(cls));
  int twist = 1;
  if (tau.delta() != 0) {
    int sign = tau.delta();
    if (tau.n() % 2 == 1 || convention == flatspec::Convention::B) sign *= size % 2 == 0 ? 1 : -1;
    twist = sign;
  }
  const double det_factor = twist == 1 ? 1.0 : static_cast<double>(cls.det());
  return det_factor * value.real();
}

inline flatspec::OrthogonalClass random_class(int n, int det, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.05, std::numbers::pi - 0.05);
  std::uniform_int_distribution<int> coin(0, 3);
  flatspec::OrthogonalClass c;
  int left = n;
  if (det == -1) {
    c.minus_ones = 1;
    --left;
  }
  while (left >= 2) {
    switch (coin(rng)) {
      case 0: c.plus_ones += 2; break;
      case 1: c.minus_ones += 2; break;
      default: c.pair_angles.push_back(angle(rng));
    }
    left -= 2;
  }
  c.plus_ones += left;
  std::sort(c.pair_angles.begin(), c.pair_angles.end());
  return c;
}

// #{k in Z^n : k^T Q k = nu} for nu <= nu_max by scanning a box whose
// radius comes from the smallest eigenvalue of Q.
inline std::map<flatspec::Rational, std::int64_t> box_counts(const flatspec::RatMatrix& q,
                                                             const flatspec::Rational& nu_max) {
  const int n = q.rows();
  Eigen::MatrixXd qd(n, n);
  flatspec::Integer den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      qd(i, j) = q(i, j).get_d();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q(i, j).get_den_mpz_t());
    }
  const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(qd).eigenvalues().minCoeff();
  const long radius = static_cast<long>(std::ceil(std::sqrt(nu_max.get_d() / lmin))) + 1;
  std::vector<std::vector<long>> qi(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      flatspec::Rational scaled = q(i, j) * den;
      qi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = scaled.get_num().get_si();
    }
  const long limit = flatspec::floor(flatspec::Rational(nu_max * den)).get_si();
  std::map<flatspec::Rational, std::int64_t> out;
  std::vector<long> k(static_cast<std::size_t>(n), -radius);
  while (true) {
    long v = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v += k[static_cast<std::size_t>(i)] * qi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
    if (v <= limit) {
      flatspec::Rational nu(v, 1);
      nu /= den;
      if (nu <= nu_max) ++out[nu];
    }
    int i = 0;
    while (i < n && ++k[static_cast<std::size_t>(i)] > radius) k[static_cast<std::size_t>(i++)] = -radius;
    if (i == n) break;
  }
  return out;
}

// Rational orthogonal matrix via the Cayley transform of a random skew matrix.
inline flatspec::RatMatrix random_rational_orthogonal(int n, std::mt19937_64& rng, bool reflect) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 4);
  flatspec::RatMatrix s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      s(i, j) = flatspec::Rational(num(rng), den(rng));
      s(i, j).canonicalize();
      s(j, i) = -s(i, j);
    }
  const auto id = flatspec::RatMatrix::identity(n);
  flatspec::RatMatrix plus = id, minus = id;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      plus(i, j) += s(i, j);
      minus(i, j) -= s(i, j);
    }
  flatspec::RatMatrix q = minus * flatspec::inverse(plus);
  if (reflect)
    for (int j = 0; j < n; ++j) q(0, j) = -q(0, j);
  return q;
}

}  // namespace oracle
