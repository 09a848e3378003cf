#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quiverkit/matrix.hpp"
#include "quiverkit/quiver.hpp"

namespace quiverkit {

class AssocAlgebra;
using AlgebraPtr = std::shared_ptr<const AssocAlgebra>;

/// Attached to algebras that come from a quiver presentation: the basis is
/// the set of surviving path classes.
struct PresentedInfo {
  Presentation presentation;
  std::vector<Path> basis_paths;
  std::vector<int> basis_source;             // per basis element
  std::vector<int> basis_target;
  std::vector<std::size_t> vertex_idempotent;  // vertex -> basis index of e_v
};

/// Finite-dimensional unital associative algebra in structure-constant form.
/// All data is immutable after construction.
class AssocAlgebra {
 public:
  AssocAlgebra(FieldPtr field, std::size_t dim,
               std::vector<std::vector<Vec>> structure_constants, Vec unit, std::string origin);

  const FieldPtr& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Vec& unit() const { return unit_; }
  const std::string& origin() const { return origin_; }
  /// c_{ij} = b_i * b_j expressed in the basis.
  const Vec& product(std::size_t i, std::size_t j) const { return sc_[i][j]; }

  const std::optional<std::vector<Vec>>& radical_basis() const { return radical_basis_; }
  void set_radical_basis(std::vector<Vec> basis) { radical_basis_ = std::move(basis); }
  const std::optional<PresentedInfo>& presented() const { return presented_; }
  void set_presented(PresentedInfo info) { presented_ = std::move(info); }

  Vec multiply(const Vec& x, const Vec& y) const;
  Vec mult_basis_left(std::size_t i, const Vec& y) const;   // b_i * y
  Vec mult_basis_right(const Vec& x, std::size_t j) const;  // x * b_j
  Matrix left_mult(const Vec& x) const;   // y -> x*y
  Matrix right_mult(const Vec& x) const;  // y -> y*x
  bool is_unit_vec(const Vec& x) const { return x == unit_; }

  /// Verifies associativity on all basis triples, the unit law, and (when a
  /// radical basis is designated) that it spans a nilpotent two-sided ideal.
  /// Throws invalid_argument on violation.
  void validate() const;

  /// Nilpotency degree of the designated radical: least m with rad^m = 0.
  unsigned radical_length() const;

  /// e_v A e_w component data for presented algebras.
  std::vector<std::size_t> basis_with_source(int v) const;
  std::vector<std::size_t> basis_with_target(int v) const;

 private:
  FieldPtr field_;
  std::size_t dim_;
  std::vector<std::vector<Vec>> sc_;  // sc_[i][j] = coordinates of b_i b_j
  Vec unit_;
  std::string origin_;
  std::optional<std::vector<Vec>> radical_basis_;
  std::optional<PresentedInfo> presented_;
};

// --- presentation-side operations (quiver module surface) ---

struct AdmissibleInfo {
  unsigned radical_length;               // least m with all length-m paths in I
  std::vector<std::size_t> survivors;    // surviving path count per length 1..m-1
};

/// Checks that every relation combines paths of length >= 2 and that the
/// arrow ideal is nilpotent in kQ/I within the presentation's cap, by
/// exhaustive degreewise linear reduction. Throws NotAdmissible otherwise.
AdmissibleInfo admissible_check(const Presentation& p);

/// Realizes kQ/I as structure constants. Basis: residue classes of paths
/// surviving reduction; unit = sum of trivial paths; designated radical =
/// basis paths of length >= 1.
AlgebraPtr path_basis_algebra(const Presentation& p);

// --- structure-constant operations ---

/// Jacobson radical in characteristic 0 via the trace form of the regular
/// representation. Throws PositiveCharacteristic over F_p.
std::vector<Vec> radical_via_trace(const AssocAlgebra& a);

/// Radical basis: designated if present, else the trace-form computation.
std::vector<Vec> radical_of(const AssocAlgebra& a);

struct Intertwiner {
  std::size_t from, to;  // basis indices into the idempotent list
  Vec x, y;              // x in e_to A e_from, y in e_from A e_to; xy = e_to, yx = e_from
};

struct IdempotentDecomposition {
  std::vector<Vec> idempotents;                 // pairwise orthogonal, summing to 1
  std::vector<std::vector<std::size_t>> iso_classes;
  std::vector<Intertwiner> certificates;        // one per non-representative member
};

/// Complete set of primitive orthogonal idempotents, lifted from a/rad along
/// the nilpotent radical via e -> 3e^2 - 2e^3. The semisimple quotient must
/// split over the field; candidate elements for the matrix-unit splitting are
/// swept deterministically, then drawn from a seeded generator.
IdempotentDecomposition lift_idempotents(const AssocAlgebra& a, std::uint64_t seed = 0);

struct BlockDecomposition {
  std::vector<Vec> central_idempotents;
  std::vector<AlgebraPtr> blocks;
  std::vector<std::vector<Vec>> block_bases;  // basis of each block inside a
};

/// Primitive idempotents of the center; each yields a block algebra with
/// induced structure constants and propagated radical.
BlockDecomposition block_decomposition(const AssocAlgebra& a, std::uint64_t seed = 0);

struct BasicReduction {
  AlgebraPtr basic;
  std::vector<std::size_t> multiplicities;  // per iso class
  std::vector<Vec> corner_basis;            // basis of eAe inside a
  IdempotentDecomposition source_idempotents;
  std::vector<std::size_t> chosen;          // representative idempotent per class
};

/// Morita-basic reduction eAe for e the sum of one idempotent per iso class.
BasicReduction basic_reduction(const AssocAlgebra& a, std::uint64_t seed = 0);

/// Recovers a quiver presentation of a split basic algebra: vertices are the
/// primitive idempotents, arrow counts dim e_j (rad/rad^2) e_i, and relations
/// a generating set of ker(kQ -> A) found degreewise up to degree_cap
/// (default: the radical length). Throws CapTooSmall when the quotient of the
/// returned presentation does not match dim A.
Presentation gabriel_quiver(const AlgebraPtr& basic, unsigned degree_cap = 0, std::uint64_t seed = 0);

enum class Side { left, right };

/// Finite-dimensional module given by its action matrices on a chosen basis.
struct ModuleRep {
  AlgebraPtr algebra;
  Side side = Side::left;
  std::size_t dim = 0;
  std::vector<Matrix> action;  // per algebra basis element (column convention)

  /// Left: act[a]*x, unital homomorphism. Right: x*a as act[a]*x with
  /// act[ab] = act[b]*act[a] (anti-homomorphism).
  void validate() const;
  Vec act(std::size_t basis_index, const Vec& x) const { return action[basis_index].apply(x); }
  Matrix act_vec(const Vec& a) const;
};

ModuleRep regular_module(const AlgebraPtr& a, Side side);
ModuleRep simple_module(const AlgebraPtr& a, int vertex, Side side);       // presented basic
ModuleRep projective_module(const AlgebraPtr& a, int vertex, Side side);   // P_v = Ae_v / e_vA
/// Submodule on a subspace basis (must be action-stable).
ModuleRep submodule(const ModuleRep& m, const std::vector<Vec>& subspace_basis);

struct ProjectivityReport {
  bool projective;
  std::vector<std::size_t> multiplicities;  // per idempotent, when projective
  std::vector<std::size_t> top_multiplicities;
};

/// Projectivity over a basic algebra with known idempotents, via projective
/// covers: top(m) determines the candidate cover P; m is projective iff
/// dim P = dim m.
ProjectivityReport is_projective(const ModuleRep& m, const IdempotentDecomposition& idem);
ProjectivityReport is_projective(const ModuleRep& m);

/// The same algebra with scalars coerced into a number field K (structure
/// constants are rational). Realizes A (x)_k K as a K-algebra.
AlgebraPtr extend_scalars_algebra(const AlgebraPtr& a, const FieldPtr& ext);

/// Center of the algebra as a subspace basis.
std::vector<Vec> center_basis(const AssocAlgebra& a);

/// A deterministic JSON-friendly integer tag for arrow-multiplicity matrices.
std::vector<std::vector<std::size_t>> arrow_multiplicity_matrix(const Presentation& p);

}  // namespace quiverkit
