#pragma once

#include <string>
#include <vector>

#include "flatspec/linalg.hpp"

namespace flatspec {

enum class ViolationKind {
  Malformed,           // shapes, singular basis, identity missing
  NonCrystallographic, // B does not preserve the lattice, or is not orthogonal
  NonGroup,            // closure fails
  NonFree,             // some element has a fixed point
};

std::string to_string(ViolationKind kind);

/// Raised when group data cannot even be put into normal form.
class GroupError : public Error {
 public:
  GroupError(ViolationKind kind, const std::string& what) : Error(what), kind_(kind) {}
  ViolationKind kind() const { return kind_; }

 private:
  ViolationKind kind_;
};

/// Affine map x -> B x + a in lattice coordinates (lattice = Z^n).
/// B is an integer matrix; a is kept reduced into [0,1)^n.
struct AffineElement {
  IntMatrix rotation;
  RatVector translation;

  friend bool operator==(const AffineElement&, const AffineElement&) = default;
};

/// Coset representatives are given as g = B L_b (translate by b, then rotate),
/// so the affine translation is a = B b. This is the only place the two
/// conventions meet.
RatVector affine_translation(const IntMatrix& rotation, const RatVector& b);
RatVector rotated_translation(const IntMatrix& rotation, const RatVector& a);  // inverse: b = B^{-1} a

AffineElement compose(const AffineElement& g, const AffineElement& h);  // g after h, translation reduced

/// Bieberbach group data: a rational lattice basis (columns, ambient
/// coordinates) and one coset representative per point-group element,
/// identity first. Construction normalizes but does not validate; see validate().
class BieberbachGroup {
 public:
  BieberbachGroup(std::string name, RatMatrix basis, std::vector<AffineElement> elements);

  /// Closes the generators into the full coset list modulo the lattice.
  /// Throws if closure exceeds max_elements or two elements share a
  /// rotation but differ in translation (the lattice would not be the full
  /// translation subgroup).
  static BieberbachGroup from_generators(std::string name, RatMatrix basis, const std::vector<AffineElement>& generators,
                                         std::size_t max_elements = 1024);

  const std::string& name() const { return name_; }
  int n() const { return basis_.rows(); }
  const RatMatrix& basis() const { return basis_; }
  /// basis^T basis.
  const RatMatrix& gram() const { return gram_; }
  const std::vector<AffineElement>& elements() const { return elements_; }
  std::size_t holonomy_order() const { return elements_.size(); }
  bool is_torus() const;

  BieberbachGroup renamed(std::string name) const;

 private:
  std::string name_;
  RatMatrix basis_;
  RatMatrix gram_;
  std::vector<AffineElement> elements_;
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

ValidationReport validate(const BieberbachGroup& group);

/// True when x -> B x + a + lambda has a fixed point for some lambda in Z^n,
/// i.e. a lies in Z^n + (I - B) Q^n. Exact.
bool has_fixed_point(const AffineElement& element);

/// Basis of the dual lattice { u : <u, lambda> in Z }: inverse transpose.
RatMatrix dual_lattice(const RatMatrix& basis);
RatMatrix dual_lattice(const BieberbachGroup& group);

/// Rotation part given in ambient coordinates, expressed in the lattice
/// basis. Throws GroupError(NonCrystallographic) if it does not preserve
/// the lattice.
IntMatrix lattice_rotation(const RatMatrix& basis, const RatMatrix& ambient_rotation);
RatVector lattice_translation(const RatMatrix& basis, const RatVector& ambient_translation);

/// Conjugates by the isometry x -> Q x + t (Q rational orthogonal, t ambient).
BieberbachGroup conjugate(const BieberbachGroup& group, const RatMatrix& q, const RatVector& t);

/// Same group described in the lattice basis basis * U (U unimodular).
BieberbachGroup change_basis(const BieberbachGroup& group, const IntMatrix& unimodular);

/// Built-in corpus; every entry passes validate().
std::vector<BieberbachGroup> presets();
BieberbachGroup find_preset(const std::string& name);

}  // namespace flatspec
