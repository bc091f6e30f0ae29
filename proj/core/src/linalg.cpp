#include "flatspec/linalg.hpp"

#include <utility>

namespace flatspec {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Rational(static_cast<long>(m(i, j)));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (auto x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const Rational& x = m(i, j);
      if (x.get_den() != 1) throw Error("matrix entry " + to_string(x) + " is not an integer");
      if (!x.get_num().fits_slong_p()) throw Error("matrix entry out of range");
      r(i, j) = x.get_num().get_si();
    }
  return r;
}

bool is_identity(const IntMatrix& m) { return m == IntMatrix::identity(m.rows()); }

Rational determinant(RatMatrix m) {
  const int n = m.rows();
  if (n != m.cols()) throw Error("determinant of a non-square matrix");
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (m(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) / m(c, c);
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& m) {
  const int n = m.rows();
  if (n != m.cols()) throw Error("inverse of a non-square matrix");
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (a(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw Error("singular matrix");
    if (pivot != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(c, j));
        std::swap(inv(pivot, j), inv(c, j));
      }
    Rational p = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rational f = a(r, c);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatVector solve(const RatMatrix& m, const RatVector& rhs) { return inverse(m).apply(rhs); }

std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  const int rows = a.rows();
  const int cols = a.cols();
  // Column operations on [a; I]; columns whose top part vanishes span the kernel.
  std::vector<std::vector<Integer>> col(static_cast<std::size_t>(cols),
                                        std::vector<Integer>(static_cast<std::size_t>(rows + cols)));
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) col[j][i] = static_cast<long>(a(i, j));
    col[j][rows + j] = 1;
  }
  auto axpy = [&](int dst, const Integer& f, int src) {
    for (std::size_t k = 0; k < col[dst].size(); ++k) col[dst][k] -= f * col[src][k];
  };

  int next = 0;
  for (int i = 0; i < rows && next < cols; ++i) {
    // Euclid across columns next..cols-1 on row i.
    for (;;) {
      int best = -1;
      for (int j = next; j < cols; ++j)
        if (col[j][i] != 0 && (best < 0 || abs(col[j][i]) < abs(col[best][i]))) best = j;
      if (best < 0) break;
      bool done = true;
      for (int j = next; j < cols; ++j) {
        if (j == best || col[j][i] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), col[j][i].get_mpz_t(), col[best][i].get_mpz_t());
        axpy(j, q, best);
        if (col[j][i] != 0) done = false;
      }
      if (done) {
        std::swap(col[next], col[best]);
        ++next;
        break;
      }
    }
  }

  std::vector<IntVector> basis;
  for (int j = next; j < cols; ++j) {
    IntVector v(static_cast<std::size_t>(cols));
    for (int k = 0; k < cols; ++k) {
      const Integer& x = col[j][rows + k];
      if (!x.fits_slong_p()) throw Error("integer kernel entry out of range");
      v[k] = x.get_si();
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IntVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += Rational(static_cast<long>(a[i])) * b[i];
  return s;
}

RatVector reduce_mod_one(const RatVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(fractional_part(x));
  return r;
}

int matrix_order(const IntMatrix& m, int max_order) {
  IntMatrix p = m;
  for (int k = 1; k <= max_order; ++k) {
    if (is_identity(p)) return k;
    p = p * m;
  }
  return 0;
}

}  // namespace flatspec
