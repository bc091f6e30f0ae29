#include <gtest/gtest.h>

#include <random>
#include <set>

#include "flatspec/bieberbach.hpp"
#include "oracles.hpp"

using namespace flatspec;

namespace {

AffineElement elem(IntMatrix b, RatVector a) { return {std::move(b), std::move(a)}; }

const IntMatrix kFlip{{1, 0}, {0, -1}};

}  // namespace

TEST(Bieberbach, KleinBottleIsValid) {
  const auto g = BieberbachGroup::from_generators("k", RatMatrix::identity(2), {elem(kFlip, {Rational(1, 2), 0})});
  EXPECT_EQ(g.holonomy_order(), 2u);
  EXPECT_TRUE(validate(g).valid());
  EXPECT_FALSE(has_fixed_point(g.elements()[1]));
}

TEST(Bieberbach, ReflectionHasAFixedPoint) {
  const auto g = BieberbachGroup::from_generators("r", RatMatrix::identity(2), {elem(kFlip, {0, 0})});
  const auto report = validate(g);
  EXPECT_TRUE(report.has(ViolationKind::NonFree));
  EXPECT_FALSE(report.valid());
  // Translation only along the flipped direction is still a reflection.
  EXPECT_TRUE(has_fixed_point(elem(kFlip, {0, Rational(1, 2)})));
}

TEST(Bieberbach, ToriAreValid) {
  for (const auto& name : {"torus-Z2", "torus-rect2", "torus-skew2", "torus-Z3", "torus-Z4", "torus-rect4", "torus-skew4"}) {
    const auto g = find_preset(name);
    EXPECT_TRUE(g.is_torus()) << name;
    EXPECT_TRUE(validate(g).valid()) << name;
  }
}

TEST(Bieberbach, IrrationalRotationIsNotCrystallographic) {
  const RatMatrix rot{{Rational(3, 5), Rational(-4, 5)}, {Rational(4, 5), Rational(3, 5)}};
  try {
    lattice_rotation(RatMatrix::identity(2), rot);
    FAIL();
  } catch (const GroupError& e) {
    EXPECT_EQ(e.kind(), ViolationKind::NonCrystallographic);
  }
  // A shear is integral but not an isometry of the square lattice.
  const BieberbachGroup shear("s", RatMatrix::identity(2),
                              {elem(IntMatrix::identity(2), {0, 0}), elem(IntMatrix{{1, 1}, {0, 1}}, {0, 0})});
  EXPECT_TRUE(validate(shear).has(ViolationKind::NonCrystallographic));
}

TEST(Bieberbach, ThirdTranslationIsNotAGroup) {
  const BieberbachGroup g("x", RatMatrix::identity(2),
                          {elem(IntMatrix::identity(2), {0, 0}), elem(kFlip, {Rational(1, 3), 0})});
  EXPECT_TRUE(validate(g).has(ViolationKind::NonGroup));
  try {
    BieberbachGroup::from_generators("x", RatMatrix::identity(2), {elem(kFlip, {Rational(1, 3), 0})});
    FAIL();
  } catch (const GroupError& e) {
    EXPECT_EQ(e.kind(), ViolationKind::NonGroup);
  }
}

TEST(Bieberbach, MalformedInput) {
  EXPECT_THROW(BieberbachGroup::from_generators("m", RatMatrix{{1, 2}, {2, 4}}, {}), GroupError);
  EXPECT_THROW(BieberbachGroup::from_generators("m", RatMatrix::identity(2), {elem(IntMatrix::identity(3), {0, 0, 0})}),
               GroupError);
}

TEST(Bieberbach, DualLattice) {
  const RatMatrix p{{2, 0}, {0, Rational(1, 2)}};
  EXPECT_EQ(dual_lattice(p), (RatMatrix{{Rational(1, 2), 0}, {0, 2}}));
  // P^T P* = I for a skew basis too.
  const RatMatrix s{{1, Rational(1, 2)}, {0, 1}};
  EXPECT_EQ(s.transpose() * dual_lattice(s), RatMatrix::identity(2));
}

TEST(Bieberbach, PresetsAreValidAndComplete) {
  const auto all = presets();
  std::set<std::string> names;
  for (const auto& g : all) {
    names.insert(g.name());
    const auto report = validate(g);
    EXPECT_TRUE(report.valid()) << g.name() << ": " << (report.valid() ? "" : report.violations.front().detail);
  }
  EXPECT_EQ(names.size(), all.size());
  EXPECT_EQ(find_preset("klein-bottle").holonomy_order(), 2u);
  EXPECT_EQ(find_preset("dicosm").holonomy_order(), 2u);
  EXPECT_EQ(find_preset("amphicosm").holonomy_order(), 2u);
  EXPECT_EQ(find_preset("hantzsche-wendt").holonomy_order(), 4u);
  EXPECT_EQ(find_preset("diag4-z2").holonomy_order(), 2u);
  EXPECT_EQ(find_preset("diag4-z2xz2").holonomy_order(), 4u);
  EXPECT_EQ(find_preset("diag4-z2xz2").n(), 4);
  EXPECT_THROW(find_preset("no-such-group"), Error);
}

TEST(Bieberbach, ConjugationAndBasisChangePreserveValidity) {
  std::mt19937_64 rng(17);
  for (const auto& g : presets()) {
    for (bool reflect : {false, true}) {
      const auto q = oracle::random_rational_orthogonal(g.n(), rng, reflect);
      RatVector t(static_cast<std::size_t>(g.n()));
      for (auto& x : t) x = Rational(static_cast<long>(rng() % 7), 5);
      const auto c = conjugate(g, q, t);
      EXPECT_TRUE(validate(c).valid()) << g.name();
      EXPECT_EQ(c.holonomy_order(), g.holonomy_order());
      EXPECT_EQ(c.gram(), g.gram());
    }
    IntMatrix u = IntMatrix::identity(g.n());
    if (g.n() >= 2) {
      u(0, 1) = 2;
      u(1, 0) = 1;  // det = 1 - 2 = -1
    }
    const auto c = change_basis(g, u);
    EXPECT_TRUE(validate(c).valid()) << g.name();
    EXPECT_EQ(c.basis(), g.basis() * to_rational(u));
  }
  EXPECT_THROW(change_basis(find_preset("torus-Z2"), IntMatrix{{2, 0}, {0, 1}}), Error);
}

TEST(Bieberbach, ComposeReducesTranslations) {
  const AffineElement g = elem(kFlip, {Rational(1, 2), 0});
  const AffineElement gg = compose(g, g);
  EXPECT_EQ(gg.rotation, IntMatrix::identity(2));
  EXPECT_EQ(gg.translation, (RatVector{0, 0}));
  EXPECT_EQ(rotated_translation(kFlip, affine_translation(kFlip, {Rational(1, 3), Rational(1, 5)})),
            (RatVector{Rational(1, 3), Rational(1, 5)}));
}
