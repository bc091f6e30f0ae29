#include "flatspec/weyl.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "flatspec/rational.hpp"

namespace flatspec {

namespace {

using Exponent = std::vector<int>;  // doubled exponents
using Polynomial = std::map<Exponent, std::int64_t>;

struct RootSystem {
  int rank = 0;
  bool type_b = false;
  Exponent rho;                    // doubled
  std::vector<Exponent> positive;  // roots, integer coordinates
};

RootSystem root_system(int n) {
  RootSystem rs;
  rs.rank = n / 2;
  rs.type_b = n % 2 == 1;
  const int m = rs.rank;
  rs.rho.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) rs.rho[i] = rs.type_b ? 2 * (m - 1 - i) + 1 : 2 * (m - 1 - i);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Exponent minus(static_cast<std::size_t>(m), 0), plus(static_cast<std::size_t>(m), 0);
      minus[i] = 1;
      minus[j] = -1;
      plus[i] = 1;
      plus[j] = 1;
      rs.positive.push_back(minus);
      rs.positive.push_back(plus);
    }
  if (rs.type_b)
    for (int i = 0; i < m; ++i) {
      Exponent e(static_cast<std::size_t>(m), 0);
      e[i] = 1;
      rs.positive.push_back(e);
    }
  return rs;
}

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

Polynomial weyl_numerator(const RootSystem& rs, const Exponent& shifted) {
  const int m = rs.rank;
  Polynomial p;
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const int psign = permutation_sign(perm);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      const int flips = std::popcount(mask);
      if (!rs.type_b && flips % 2 != 0) continue;
      int sign = psign;
      if (rs.type_b && flips % 2 != 0) sign = -sign;
      Exponent e(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        int v = shifted[perm[i]];
        e[i] = (mask >> i) & 1u ? -v : v;
      }
      auto& c = p[e];
      c += sign;
      if (c == 0) p.erase(e);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

long pairing(const Exponent& e, const Exponent& a) {
  long s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += static_cast<long>(e[i]) * a[i];
  return s;
}

// Exact division of p by (x^alpha - x^-alpha), exponents doubled.
Polynomial divide_by_root(const Polynomial& p, const Exponent& alpha) {
  using Key = std::pair<long, Exponent>;
  std::map<Key, std::int64_t> rest;
  long lowest = 0;
  bool first = true;
  for (const auto& [e, c] : p) {
    const long h = pairing(e, alpha);
    rest.emplace(Key{h, e}, c);
    lowest = first ? h : std::min(lowest, h);
    first = false;
  }
  const long step = 2 * pairing(alpha, alpha);
  Polynomial q;
  while (!rest.empty()) {
    auto top = std::prev(rest.end());
    const auto [h, e] = top->first;
    const std::int64_t c = top->second;
    rest.erase(top);
    Exponent shifted = e;
    for (std::size_t i = 0; i < e.size(); ++i) shifted[i] -= alpha[i];
    q[shifted] += c;
    Exponent lower = shifted;
    for (std::size_t i = 0; i < e.size(); ++i) lower[i] -= alpha[i];
    if (h - step < lowest) throw Error("Weyl numerator is not divisible by the denominator");
    auto& slot = rest[Key{h - step, lower}];
    slot += c;
    if (slot == 0) rest.erase(Key{h - step, lower});
  }
  std::erase_if(q, [](const auto& kv) { return kv.second == 0; });
  return q;
}

std::vector<WeightMultiplicity> compute_multiset(int n, const std::vector<int>& highest) {
  const RootSystem rs = root_system(n);
  if (static_cast<int>(highest.size()) != rs.rank) throw Error("highest weight has the wrong rank");
  Exponent shifted(static_cast<std::size_t>(rs.rank));
  for (int i = 0; i < rs.rank; ++i) shifted[i] = 2 * highest[i] + rs.rho[i];
  Polynomial p = weyl_numerator(rs, shifted);
  for (const auto& alpha : rs.positive) p = divide_by_root(p, alpha);
  std::vector<WeightMultiplicity> out;
  out.reserve(p.size());
  for (const auto& [e, c] : p) {
    std::vector<int> w(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] % 2 != 0) throw Error("non-integral weight in SO(n) character");
      w[i] = e[i] / 2;
    }
    if (c < 0) throw Error("negative weight multiplicity");
    out.push_back({std::move(w), c});
  }
  return out;
}

std::mutex cache_mutex;
std::map<std::pair<int, std::vector<int>>, std::vector<WeightMultiplicity>>& cache() {
  static std::map<std::pair<int, std::vector<int>>, std::vector<WeightMultiplicity>> c;
  return c;
}

}  // namespace

const std::vector<WeightMultiplicity>& so_weight_multiset(int n, const std::vector<int>& highest) {
  auto key = std::make_pair(n, highest);
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache().find(key); it != cache().end()) return it->second;
  }
  auto computed = compute_multiset(n, highest);
  std::lock_guard lock(cache_mutex);
  return cache().emplace(std::move(key), std::move(computed)).first->second;
}

std::int64_t weyl_dimension(int n, const std::vector<int>& highest) {
  const RootSystem rs = root_system(n);
  if (static_cast<int>(highest.size()) != rs.rank) throw Error("highest weight has the wrong rank");
  Exponent shifted(static_cast<std::size_t>(rs.rank));
  for (int i = 0; i < rs.rank; ++i) shifted[i] = 2 * highest[i] + rs.rho[i];
  Integer num = 1, den = 1;
  for (const auto& alpha : rs.positive) {
    num *= pairing(shifted, alpha);
    den *= pairing(rs.rho, alpha);
  }
  Integer q = num / den;
  if (q * den != num || q <= 0) throw Error("Weyl dimension formula did not yield a positive integer");
  return q.get_si();
}

double so_character(int n, const std::vector<int>& highest, std::span<const double> angles) {
  const auto& weights = so_weight_multiset(n, highest);
  if (angles.size() != highest.size()) throw Error("torus element has the wrong rank");
  long double sum = 0;
  for (const auto& wm : weights) {
    long double phase = 0;
    for (std::size_t i = 0; i < angles.size(); ++i) phase += static_cast<long double>(wm.weight[i]) * angles[i];
    sum += static_cast<long double>(wm.multiplicity) * std::cos(phase);
  }
  return static_cast<double>(sum);
}

std::size_t weight_cache_size() {
  std::lock_guard lock(cache_mutex);
  return cache().size();
}

std::vector<CachedMultiset> weight_cache_snapshot() {
  std::lock_guard lock(cache_mutex);
  std::vector<CachedMultiset> out;
  for (const auto& [key, weights] : cache()) out.push_back({key.first, key.second, weights});
  return out;
}

void seed_weight_cache(CachedMultiset entry) {
  std::lock_guard lock(cache_mutex);
  cache().try_emplace({entry.n, std::move(entry.highest)}, std::move(entry.weights));
}

void clear_weight_cache() {
  std::lock_guard lock(cache_mutex);
  cache().clear();
}

}  // namespace flatspec
