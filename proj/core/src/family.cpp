#include "flatspec/family.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace flatspec {

namespace {

struct Candidate {
  int mask;
  AffineElement element;
};

std::vector<Candidate> generator_pool(int n, int den) {
  std::vector<Candidate> pool;
  std::int64_t combos = 1;
  for (int i = 0; i < n; ++i) combos *= den;
  for (int mask = 1; mask < (1 << n); ++mask) {
    IntMatrix b(n, n);
    for (int i = 0; i < n; ++i) b(i, i) = (mask >> i) & 1 ? -1 : 1;
    for (std::int64_t t = 0; t < combos; ++t) {
      RatVector a(static_cast<std::size_t>(n));
      std::int64_t rest = t;
      for (int i = 0; i < n; ++i) {
        a[static_cast<std::size_t>(i)] = Rational(static_cast<long>(rest % den), den);
        a[static_cast<std::size_t>(i)].canonicalize();
        rest /= den;
      }
      pool.push_back({mask, {b, std::move(a)}});
    }
  }
  return pool;
}

// For a diagonal sign matrix, x -> Bx + a has a fixed point modulo Z^n iff
// a is integral on every +1 coordinate.
bool diagonal_free(const AffineElement& e) {
  for (int i = 0; i < e.rotation.rows(); ++i)
    if (e.rotation(i, i) == 1 && e.translation[static_cast<std::size_t>(i)] != 0) return true;
  return false;
}

std::string element_label(const AffineElement& e) {
  std::string s;
  for (int i = 0; i < e.rotation.rows(); ++i) s += e.rotation(i, i) > 0 ? '+' : '-';
  s += '@';
  for (std::size_t i = 0; i < e.translation.size(); ++i) {
    if (i) s += ',';
    s += to_string(e.translation[i]);
  }
  return s;
}

std::string group_label(const std::vector<Rational>& scales, const std::vector<AffineElement>& gens) {
  std::string s = "diag:";
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (i) s += ',';
    s += to_string(scales[i]);
  }
  for (const auto& g : gens) s += ";" + element_label(g);
  return s;
}

using Key = std::pair<std::vector<Rational>, std::vector<std::pair<IntMatrix, RatVector>>>;

Key key_of(const std::vector<Rational>& scales, const BieberbachGroup& g) {
  std::vector<std::pair<IntMatrix, RatVector>> els;
  for (const auto& e : g.elements()) els.emplace_back(e.rotation, e.translation);
  std::sort(els.begin(), els.end());
  return {scales, std::move(els)};
}

}  // namespace

std::vector<BieberbachGroup> enumerate_diagonal_family(const DiagonalFamily& family, std::size_t max_results) {
  const int n = family.n;
  if (n < 1 || n > 6) throw Error("diagonal family: dimension must be between 1 and 6");
  if (family.translation_denominator < 1) throw Error("diagonal family: translation denominator must be positive");
  if (family.lattice_scales.empty()) throw Error("diagonal family: no lattice scales");
  for (const auto& s : family.lattice_scales)
    if (s <= 0) throw Error("diagonal family: lattice scales must be positive");

  const auto pool = generator_pool(n, family.translation_denominator);
  std::vector<BieberbachGroup> out;
  std::set<Key> seen;
  std::size_t examined = 0;

  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  const std::size_t k = family.lattice_scales.size();
  for (bool more = true; more;) {
    std::vector<Rational> scales;
    RatMatrix basis(n, n);
    for (int i = 0; i < n; ++i) {
      scales.push_back(family.lattice_scales[digits[static_cast<std::size_t>(i)]]);
      basis(i, i) = scales.back();
    }

    auto consider = [&](const std::vector<AffineElement>& gens) {
      if (++examined > family.max_candidates)
        throw FamilyTooLarge("diagonal family exceeds " + std::to_string(family.max_candidates) + " candidates");
      try {
        auto g = BieberbachGroup::from_generators(group_label(scales, gens), basis, gens);
        const auto order = static_cast<int>(g.holonomy_order());
        if (order > family.max_holonomy || order < family.min_holonomy) return false;
        if (!validate(g).valid()) return false;
        if (!seen.insert(key_of(scales, g)).second) return false;
        out.push_back(std::move(g));
        return out.size() >= max_results;
      } catch (const GroupError&) {
        return false;
      }
    };

    if (family.min_holonomy <= 1 && consider({})) return out;
    // Every non-identity element of a free group is fixed-point free, so
    // generators and their product can be screened before closing.
    if (family.max_holonomy >= 2 && family.min_holonomy <= 2)
      for (const auto& c : pool)
        if (diagonal_free(c.element) && consider({c.element})) return out;
    if (family.max_holonomy >= 4)
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!diagonal_free(pool[i].element)) continue;
        for (std::size_t j = i + 1; j < pool.size(); ++j)
          if (pool[i].mask != pool[j].mask && diagonal_free(pool[j].element) &&
              diagonal_free(compose(pool[i].element, pool[j].element)) &&
              consider({pool[i].element, pool[j].element}))
            return out;
      }

    more = false;
    for (int i = n - 1; i >= 0; --i) {
      if (++digits[static_cast<std::size_t>(i)] < k) {
        more = true;
        break;
      }
      digits[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

}  // namespace flatspec
