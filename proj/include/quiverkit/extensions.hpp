#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quiverkit/algebra.hpp"
#include "quiverkit/gentle.hpp"

namespace quiverkit {

/// Finite group acting on an algebra by unital automorphisms.
struct GroupAction {
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> table;  // table[i][j] = index of g_i g_j
  std::size_t identity = 0;
  std::vector<Matrix> matrices;  // column convention, one per element

  /// Checks the group axioms of the table, that matrices are invertible
  /// unital algebra automorphisms, and that they respect the table.
  void validate(const AssocAlgebra& a) const;
};

/// Builds the action matrix of a vertex/arrow permutation on a presented
/// algebra (basis paths map to products of permuted arrow classes). A
/// permutation that fails to preserve the relation ideal produces a
/// non-invertible or non-multiplicative matrix and is rejected by validate().
Matrix permutation_action_matrix(const AlgebraPtr& a, const std::vector<int>& vertex_perm,
                                 const std::vector<int>& arrow_perm);

/// A validated unital algebra map phi: A -> B in basis coordinates
/// (columns are images of A's basis).
struct ExtensionMorphism {
  AlgebraPtr source;
  AlgebraPtr target;
  Matrix map;  // dim B x dim A
  std::string kind;  // identity | quotient | baseChange | skewGroup | manual

  FieldPtr ext_field;                               // baseChange
  bool etale_flag = false;                          // baseChange with reducible (squarefree) f
  bool group_order_invertible = true;               // skewGroup
  std::optional<GroupAction> action;                // skewGroup
  std::optional<Presentation> target_presentation;  // quotient

  Vec apply(const Vec& a) const { return map.apply(a); }
  void validate() const;
};

/// A -> A (x)_k K for a squarefree monic integer polynomial defining K.
/// K need not be a field: reducible squarefree f gives an etale extension,
/// accepted and flagged. Throws InseparablePolynomial when gcd(f,f') != 1.
ExtensionMorphism base_change(const AlgebraPtr& a, const FieldPtr& ext);

/// A -> AG with (a (x) g)(b (x) h) = a g(b) (x) gh. When |G| is not
/// invertible in the field a flag records it and no radical is designated.
ExtensionMorphism skew_group_algebra(const AlgebraPtr& a, GroupAction g);

/// A = kQ/I -> B = kQ/(I + extra), the canonical surjection on path bases.
ExtensionMorphism quotient_extension(const Presentation& p, const std::vector<Relation>& extra);

ExtensionMorphism identity_extension(const AlgebraPtr& a);

/// A-bimodule retraction pi: B -> A with pi(phi(a) b) = a pi(b),
/// pi(b phi(a)) = pi(b) a and pi o phi = id, found by exact linear solving.
/// Absent iff the linear system is unsolvable. The returned certificate
/// re-verifies exactly before being returned.
std::optional<Matrix> split_witness(const ExtensionMorphism& phi);

/// B (x)_A B as an explicit quotient of B (x)_k B.
struct TensorSquare {
  AlgebraPtr b;
  RowSpan relation_span;                 // span of {b phi(a) (x) b' - b (x) phi(a) b'}
  std::vector<std::size_t> rep_coords;   // flat (i * dimB + j) indices of the class basis

  std::size_t dim() const { return rep_coords.size(); }
  Vec project_flat(const Vec& tensor) const;
  Vec project_pair(const Vec& x, const Vec& y) const;  // class of x (x) y
  Vec lift(const Vec& cls) const;                      // canonical representative
  Vec mult_map(const Vec& cls) const;                  // mu(b (x) b') = b b'
  Vec left_action(std::size_t b_index, const Vec& cls) const;
  Vec right_action(std::size_t b_index, const Vec& cls) const;
};

TensorSquare tensor_square(const ExtensionMorphism& phi);

/// Separability idempotent e in B (x)_A B with mu(e) = 1 and b e = e b for
/// all b, found by exact linear solving and re-verified. Absent iff the
/// system is unsolvable.
std::optional<Vec> separability_idempotent(const ExtensionMorphism& phi, TensorSquare* space_out = nullptr);

/// B as a right and as a left A-module along phi.
std::pair<ModuleRep, ModuleRep> restriction_modules(const ExtensionMorphism& phi);

struct WitnessReport {
  std::optional<Matrix> split_retraction;
  std::optional<Vec> separability;  // coordinates in the tensor-square class basis
  std::size_t tensor_square_dim = 0;
  ProjectivityReport right_projective;
  ProjectivityReport left_projective;
};

WitnessReport witness_report(const ExtensionMorphism& phi, std::uint64_t seed = 0);

/// Per-block structural verdict of the extension target: block decomposition,
/// basic reduction, Gabriel-quiver recovery, classification.
struct BlockVerdict {
  std::size_t dimension = 0;
  Presentation recovered;
  Classification classification;
};

struct TargetClassification {
  std::vector<BlockVerdict> blocks;
  bool via_extension_field = false;  // base-change target classified over K
  std::string note;
};

TargetClassification classify_extension_target(const ExtensionMorphism& phi, std::uint64_t seed = 0);

enum class ExperimentMode { theorem41, prop51, prop53 };
enum class Tri { yes, no, unknown };
const char* tri_name(Tri t);

struct ImplicationOutcome {
  std::string name;
  std::string status;  // holds | vacuous | inconclusive | violated
  std::string detail;
};

struct ExperimentReport {
  ExperimentMode mode;
  std::string verdict;  // CONSISTENT | INCONCLUSIVE | VIOLATION
  bool split_present = false;
  bool separable_present = false;
  bool right_projective = false;
  bool left_projective = false;
  Tri source_derived_discrete = Tri::unknown;
  Tri target_derived_discrete = Tri::unknown;
  Tri source_piecewise_hereditary = Tri::unknown;
  Tri target_piecewise_hereditary = Tri::unknown;
  Tri source_clock_presentation = Tri::unknown;
  Tri target_clock_presentation = Tri::unknown;
  Classification source_classification;
  TargetClassification target;
  std::vector<ImplicationOutcome> implications;
};

/// Gathers witnesses, projectivity flags, and per-block verdicts, then checks
/// the mode's implication(s) on definite inputs. CONSISTENT when every
/// implication holds or is vacuous, INCONCLUSIVE when an Unknown blocks the
/// evaluation, VIOLATION when definite verdicts contradict the implication.
ExperimentReport run_consistency_experiment(const ExtensionMorphism& phi, ExperimentMode mode,
                                            std::uint64_t seed = 0);

}  // namespace quiverkit
