#pragma once

// Seeded generators shared by the unit and acceptance suites: random scalars,
// random bounded complexes with d^2 = 0 (direct sums of stalks and two-term
// pieces, conjugated by unitriangular changes of basis).

#include <random>

#include "quiverkit/complexes.hpp"

namespace quiverkit::testing {

inline Scalar random_nonzero_scalar(const FieldPtr& f, std::mt19937_64& rng) {
  while (true) {
    long v = static_cast<long>(rng() % 7) - 3;
    if (f->kind() == FieldKind::prime) v = static_cast<long>(rng() % static_cast<unsigned long>(f->modulus()));
    Scalar s = Scalar::from_int(f, v);
    if (!s.is_zero()) return s;
  }
}

inline Vec random_element_of(const AssocAlgebra& a, int target, int source, bool radical_only,
                             std::mt19937_64& rng) {
  const auto& info = *a.presented();
  Vec out = vec_zero(a.field(), a.dim());
  for (std::size_t bi = 0; bi < a.dim(); ++bi) {
    if (info.basis_target[bi] != target || info.basis_source[bi] != source) continue;
    if (radical_only && info.basis_paths[bi].is_trivial()) continue;
    long c = static_cast<long>(rng() % 5) - 2;
    if (c) out = vec_add(out, vec_scale(vec_unit(a.field(), a.dim(), bi), Scalar::from_int(a.field(), c)));
  }
  return out;
}

inline std::vector<std::vector<Vec>> entry_mat_mul(const AssocAlgebra& a,
                                                   const std::vector<std::vector<Vec>>& x,
                                                   const std::vector<std::vector<Vec>>& y) {
  std::size_t rows = x.size(), mid = y.size(), cols = mid ? y[0].size() : 0;
  std::vector<std::vector<Vec>> out(rows, std::vector<Vec>(cols, vec_zero(a.field(), a.dim())));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t s = 0; s < mid; ++s) {
      if (vec_is_zero(x[r][s])) continue;
      for (std::size_t c = 0; c < cols; ++c)
        if (!vec_is_zero(y[s][c])) out[r][c] = vec_add(out[r][c], a.multiply(x[r][s], y[s][c]));
    }
  return out;
}

/// Random bounded complex with exact d^2 = 0 over a presented algebra.
inline ProjComplex random_complex(const AlgebraPtr& a, std::mt19937_64& rng) {
  const auto& info = *a->presented();
  const FieldPtr& f = a->field();
  const int nv = static_cast<int>(info.presentation.quiver.vertices.size());
  int lo = -static_cast<int>(rng() % 2);
  int len = 2 + static_cast<int>(rng() % 2);

  ProjComplex c{a, lo, {}, {}};
  c.terms.assign(static_cast<std::size_t>(len), {});
  // Stalk pieces.
  int stalks = 1 + static_cast<int>(rng() % 2);
  for (int s = 0; s < stalks; ++s)
    c.terms[rng() % c.terms.size()].push_back(static_cast<int>(rng() % static_cast<unsigned>(nv)));
  // Two-term pieces with an arbitrary (possibly unit, possibly zero) entry.
  struct Piece {
    std::size_t deg;
    std::size_t row, col;
    Vec entry;
  };
  std::vector<Piece> pieces;
  int two_terms = 1 + static_cast<int>(rng() % 3);
  for (int s = 0; s < two_terms; ++s) {
    std::size_t deg = rng() % (c.terms.size() - 1);
    int v = static_cast<int>(rng() % static_cast<unsigned>(nv));
    int w = static_cast<int>(rng() % static_cast<unsigned>(nv));
    c.terms[deg].push_back(v);
    c.terms[deg + 1].push_back(w);
    pieces.push_back(Piece{deg, c.terms[deg].size() - 1, c.terms[deg + 1].size() - 1,
                           random_element_of(*a, v, w, false, rng)});
  }
  for (std::size_t i = 0; i + 1 < c.terms.size(); ++i)
    c.diffs.push_back(std::vector<std::vector<Vec>>(
        c.terms[i].size(), std::vector<Vec>(c.terms[i + 1].size(), vec_zero(f, a->dim()))));
  for (const auto& piece : pieces) c.diffs[piece.deg][piece.row][piece.col] = piece.entry;

  // Conjugate by unitriangular automorphisms U_i = 1 + N (N radical-entried,
  // strictly upper in summand order): Gamma_i -> U_i^{-1} Gamma_i U_{i+1}.
  std::vector<std::vector<std::vector<Vec>>> U, Uinv;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    std::size_t n = c.terms[i].size();
    std::vector<std::vector<Vec>> u(n, std::vector<Vec>(n, vec_zero(f, a->dim())));
    for (std::size_t r = 0; r < n; ++r)
      u[r][r] = vec_unit(f, a->dim(),
                         info.vertex_idempotent[static_cast<std::size_t>(c.terms[i][r])]);
    std::vector<std::vector<Vec>> nmat = u;
    for (auto& row : nmat)
      for (auto& e : row) e = vec_zero(f, a->dim());
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = r + 1; s < n; ++s)
        nmat[r][s] = random_element_of(*a, c.terms[i][r], c.terms[i][s], true, rng);
    // u = 1 + N; inverse = 1 - N + N^2 - ...
    std::vector<std::vector<Vec>> uin = u, power = nmat;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) u[r][s] = vec_add(u[r][s], nmat[r][s]);
    int sign = -1;
    for (std::size_t k = 0; k < n; ++k) {
      bool nonzero = false;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          if (!vec_is_zero(power[r][s])) nonzero = true;
      if (!nonzero) break;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          uin[r][s] = sign > 0 ? vec_add(uin[r][s], power[r][s]) : vec_sub(uin[r][s], power[r][s]);
      power = entry_mat_mul(*a, power, nmat);
      sign = -sign;
    }
    U.push_back(std::move(u));
    Uinv.push_back(std::move(uin));
  }
  for (std::size_t i = 0; i < c.diffs.size(); ++i)
    c.diffs[i] = entry_mat_mul(*a, Uinv[i], entry_mat_mul(*a, c.diffs[i], U[i + 1]));
  c.validate();
  return c;
}

}  // namespace quiverkit::testing
