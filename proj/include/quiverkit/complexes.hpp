#pragma once

#include <cstdint>
#include <map>

#include "quiverkit/extensions.hpp"

namespace quiverkit {

/// Finitely supported integer-indexed vector of naturals.
using DimVector = std::map<int, std::size_t>;

/// Bounded complex of vertex-indexed projectives P_v = Ae_v over a presented
/// basic algebra. Differentials are matrices of algebra elements: the entry
/// from row-summand P_v in degree i to column-summand P_w in degree i+1 lies
/// in e_v A e_w and acts by right multiplication, so d^2 = 0 is the literal
/// matrix product of consecutive differentials.
struct ProjComplex {
  AlgebraPtr algebra;
  int lo = 0;
  std::vector<std::vector<int>> terms;                // per degree: summand vertices
  std::vector<std::vector<std::vector<Vec>>> diffs;   // diffs[i][row][col], size terms[i] x terms[i+1]

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool is_zero_complex() const;
  /// Sandwich conditions and d^2 = 0, exactly. Throws on violation.
  void validate() const;
  /// Drops empty boundary degrees.
  ProjComplex normalized() const;
};

ProjComplex zero_complex(const AlgebraPtr& a);
/// Stalk complex: P_v concentrated in one degree.
ProjComplex stalk_complex(const AlgebraPtr& a, int vertex, int degree);

DimVector cohomology_dim_vector(const ProjComplex& c);
DimVector component_dim_vector(const ProjComplex& c);

/// True iff every differential entry lies in the radical (no trivial-path
/// coefficient on vertex-matching entries).
bool is_homotopically_minimal(const ProjComplex& c);

/// Homotopy-equivalent complex with all differential entries in the radical,
/// by repeated cancellation of unit entries (Gaussian elimination on a
/// contractible two-term summand).
ProjComplex minimize(const ProjComplex& c);

/// Keeps degrees >= t.
ProjComplex brutal_truncate(const ProjComplex& c, int t);

/// Complex of finite-dimensional modules with k-linear differentials.
struct ModuleComplex {
  int lo = 0;
  std::vector<ModuleRep> terms;
  std::vector<Matrix> diffs;  // diffs[i]: dim(terms[i+1]) x dim(terms[i])

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  void validate() const;
};

DimVector cohomology_dim_vector(const ModuleComplex& c);

/// Good truncation at degree t: degrees above t unchanged, the degree-t term
/// replaced by X^t / im d^{t-1}; cohomology in degrees >= t preserved, below
/// t zero.
ModuleComplex good_truncate(const ModuleComplex& c, int t);

ModuleComplex stalk_module_complex(ModuleRep m, int degree);

/// Minimal projective resolution of a left module to the given depth,
/// supported on [-depth, 0]; homotopically minimal by construction
/// (each step is a projective cover of the previous kernel).
ProjComplex minimal_proj_resolution(const ModuleRep& m, unsigned depth);

/// The Lemma-style bound: with M = max_v dim P_v and r = max support of n,
/// m_i = (n_i + m_{i+1}) * M computed downward from m_{r+1} = 0. Every
/// homotopically minimal bounded-above complex with cohomology dimension
/// vector n satisfies dim P^i <= m_i.
DimVector lemma_bound(const AssocAlgebra& a, const DimVector& n, int t);

/// Termwise B tensor_A - along an extension morphism whose target transports
/// to a presented algebra: identity, quotient, base change (irreducible f),
/// and trivial-action skew group extensions. Throws DictionaryUnavailable
/// otherwise.
ProjComplex extend_scalars_complex(const ProjComplex& c, const ExtensionMorphism& phi);

enum class IsoAnswer { yes, no, not_shown };
const char* iso_answer_name(IsoAnswer a);

/// Chain isomorphism test. Exhaustive (exact yes/no) over F_p within the
/// budget; over characteristic-0 fields a seeded randomized search in the
/// chain-map solution space gives yes or not_shown (one-sided).
IsoAnswer chain_isomorphic(const ProjComplex& x, const ProjComplex& y, std::uint64_t seed,
                           std::uint64_t budget);

/// Module isomorphism test with the same semantics.
IsoAnswer modules_isomorphic(const ModuleRep& x, const ModuleRep& y, std::uint64_t seed,
                             std::uint64_t budget);

struct SampleResult {
  std::size_t iso_class_count = 0;
  std::vector<ProjComplex> representatives;
  std::size_t candidates_with_d2_zero = 0;
};

/// Enumerates all complexes over a fixed F_p fixture with the given component
/// dimension vector (differential entries restricted to the radical when
/// radical_only), keeps those with d^2 = 0, and partitions them by chain
/// isomorphism, exhaustively. Deterministic for a fixed enumeration order.
/// Throws InfiniteFieldUnsupported over Q and BudgetExceeded when the search
/// space exceeds the budget.
SampleResult finiteness_sampler(const AlgebraPtr& a, const DimVector& cdim, bool radical_only,
                                std::uint64_t budget = 1u << 22);

struct RoundtripReport {
  IsoAnswer truncations_equivalent = IsoAnswer::not_shown;
  IsoAnswer modules_iso = IsoAnswer::not_shown;
  bool counterexample = false;  // truncations equivalent but modules not isomorphic
};

/// Desk-scale check of the truncation lemma: resolves both modules to depth
/// |t|+2, brutally truncates at t, tests homotopy equivalence (minimal
/// complexes: chain isomorphism) and independently tests module isomorphism.
/// Requires t < 0 (modules sit in degree 0). Throws DepthInsufficient
/// otherwise.
RoundtripReport lemma_iso_roundtrip(const ModuleRep& x, const ModuleRep& y, int t,
                                    std::uint64_t seed = 0, std::uint64_t budget = 1u << 22);

}  // namespace quiverkit
