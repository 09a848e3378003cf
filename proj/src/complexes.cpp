#include "quiverkit/complexes.hpp"

#include <algorithm>
#include <random>

namespace quiverkit {

namespace {

// k-basis layout of a direct sum of vertex projectives Ae_v.
struct DegreeLayout {
  std::vector<int> vertices;
  std::vector<std::size_t> offset;
  std::vector<std::vector<std::size_t>> basis;  // per summand: algebra basis indices with source v
  std::size_t dim = 0;
};

DegreeLayout layout_for(const AssocAlgebra& a, const std::vector<int>& vertices) {
  DegreeLayout lay;
  lay.vertices = vertices;
  for (int v : vertices) {
    lay.offset.push_back(lay.dim);
    lay.basis.push_back(a.basis_with_source(v));
    lay.dim += lay.basis.back().size();
  }
  return lay;
}

// The k-linear matrix of an algebra-entry differential block.
Matrix k_matrix(const AssocAlgebra& a, const DegreeLayout& from, const DegreeLayout& to,
                const std::vector<std::vector<Vec>>& entries) {
  Matrix m(a.field(), to.dim, from.dim);
  for (std::size_t r = 0; r < from.vertices.size(); ++r) {
    for (std::size_t c = 0; c < to.vertices.size(); ++c) {
      const Vec& gamma = entries[r][c];
      if (vec_is_zero(gamma)) continue;
      for (std::size_t pb = 0; pb < from.basis[r].size(); ++pb) {
        Vec img = a.mult_basis_left(from.basis[r][pb], gamma);  // x * gamma with x a basis path
        for (std::size_t qb = 0; qb < to.basis[c].size(); ++qb) {
          const Scalar& coeff = img[to.basis[c][qb]];
          if (!coeff.is_zero()) m.at(to.offset[c] + qb, from.offset[r] + pb) += coeff;
        }
      }
    }
  }
  return m;
}

std::vector<std::vector<Vec>> entry_product(const AssocAlgebra& a,
                                            const std::vector<std::vector<Vec>>& x,
                                            const std::vector<std::vector<Vec>>& y,
                                            std::size_t rows, std::size_t mid, std::size_t cols) {
  std::vector<std::vector<Vec>> out(rows, std::vector<Vec>(cols, vec_zero(a.field(), a.dim())));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t s = 0; s < mid; ++s) {
      if (vec_is_zero(x[r][s])) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (vec_is_zero(y[s][c])) continue;
        out[r][c] = vec_add(out[r][c], a.multiply(x[r][s], y[s][c]));
      }
    }
  return out;
}

const PresentedInfo& presented_info(const AssocAlgebra& a) {
  if (!a.presented()) fail(errc::invalid_argument, "complexes require a presented basic algebra");
  return *a.presented();
}

}  // namespace

bool ProjComplex::is_zero_complex() const {
  for (const auto& t : terms)
    if (!t.empty()) return false;
  return true;
}

void ProjComplex::validate() const {
  const AssocAlgebra& A = *algebra;
  const auto& info = presented_info(A);
  if (diffs.size() + 1 != terms.size() && !(terms.empty() && diffs.empty()))
    fail(errc::dimension_mismatch, "complex: differential count mismatch");
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i].size() != terms[i].size())
      fail(errc::dimension_mismatch, "complex: differential row count mismatch");
    for (std::size_t r = 0; r < diffs[i].size(); ++r) {
      if (diffs[i][r].size() != terms[i + 1].size())
        fail(errc::dimension_mismatch, "complex: differential column count mismatch");
      for (std::size_t c = 0; c < diffs[i][r].size(); ++c) {
        const Vec& e = diffs[i][r][c];
        Vec ev = vec_unit(A.field(), A.dim(),
                          info.vertex_idempotent[static_cast<std::size_t>(terms[i][r])]);
        Vec ew = vec_unit(A.field(), A.dim(),
                          info.vertex_idempotent[static_cast<std::size_t>(terms[i + 1][c])]);
        if (A.multiply(ev, A.multiply(e, ew)) != e)
          fail(errc::invalid_argument, "complex: entry not sandwiched by its summand idempotents");
      }
    }
  }
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
    auto prod = entry_product(A, diffs[i], diffs[i + 1], terms[i].size(), terms[i + 1].size(),
                              terms[i + 2].size());
    for (const auto& row : prod)
      for (const auto& e : row)
        if (!vec_is_zero(e)) fail(errc::invalid_argument, "complex: d^2 != 0");
  }
}

ProjComplex ProjComplex::normalized() const {
  ProjComplex c = *this;
  while (!c.terms.empty() && c.terms.front().empty()) {
    c.terms.erase(c.terms.begin());
    if (!c.diffs.empty()) c.diffs.erase(c.diffs.begin());
    ++c.lo;
  }
  while (!c.terms.empty() && c.terms.back().empty()) {
    c.terms.pop_back();
    if (!c.diffs.empty()) c.diffs.pop_back();
  }
  if (c.terms.empty()) {
    c.lo = 0;
    c.diffs.clear();
  }
  return c;
}

ProjComplex zero_complex(const AlgebraPtr& a) { return ProjComplex{a, 0, {}, {}}; }

ProjComplex stalk_complex(const AlgebraPtr& a, int vertex, int degree) {
  ProjComplex c{a, degree, {{vertex}}, {}};
  return c;
}

DimVector component_dim_vector(const ProjComplex& c) {
  DimVector out;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    std::size_t d = 0;
    for (int v : c.terms[i]) d += c.algebra->basis_with_source(v).size();
    if (d) out[c.lo + static_cast<int>(i)] = d;
  }
  return out;
}

DimVector cohomology_dim_vector(const ProjComplex& c) {
  const AssocAlgebra& A = *c.algebra;
  std::vector<DegreeLayout> lays;
  lays.reserve(c.terms.size());
  for (const auto& t : c.terms) lays.push_back(layout_for(A, t));
  std::vector<std::size_t> ranks(c.diffs.size(), 0);
  for (std::size_t i = 0; i < c.diffs.size(); ++i)
    ranks[i] = k_matrix(A, lays[i], lays[i + 1], c.diffs[i]).rank();
  DimVector out;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    std::size_t dim = lays[i].dim;
    std::size_t out_rank = i < c.diffs.size() ? ranks[i] : 0;
    std::size_t in_rank = i > 0 ? ranks[i - 1] : 0;
    std::size_t h = dim - out_rank - in_rank;
    if (h) out[c.lo + static_cast<int>(i)] = h;
  }
  return out;
}

bool is_homotopically_minimal(const ProjComplex& c) {
  const auto& info = presented_info(*c.algebra);
  for (std::size_t i = 0; i < c.diffs.size(); ++i)
    for (std::size_t r = 0; r < c.diffs[i].size(); ++r)
      for (std::size_t c2 = 0; c2 < c.diffs[i][r].size(); ++c2) {
        if (c.terms[i][r] != c.terms[i + 1][c2]) continue;
        std::size_t triv = info.vertex_idempotent[static_cast<std::size_t>(c.terms[i][r])];
        if (!c.diffs[i][r][c2][triv].is_zero()) return false;
      }
  return true;
}

ProjComplex minimize(const ProjComplex& input) {
  const AssocAlgebra& A = *input.algebra;
  const auto& info = presented_info(A);
  ProjComplex c = input;
  while (true) {
    // Locate a unit entry.
    bool found = false;
    std::size_t fi = 0, fr = 0, fc = 0;
    for (std::size_t i = 0; i < c.diffs.size() && !found; ++i)
      for (std::size_t r = 0; r < c.diffs[i].size() && !found; ++r)
        for (std::size_t col = 0; col < c.diffs[i][r].size() && !found; ++col) {
          if (c.terms[i][r] != c.terms[i + 1][col]) continue;
          std::size_t triv = info.vertex_idempotent[static_cast<std::size_t>(c.terms[i][r])];
          if (!c.diffs[i][r][col][triv].is_zero()) {
            found = true;
            fi = i;
            fr = r;
            fc = col;
          }
        }
    if (!found) break;

    int v = c.terms[fi][fr];
    Vec ev = vec_unit(A.field(), A.dim(), info.vertex_idempotent[static_cast<std::size_t>(v)]);
    const Vec gamma = c.diffs[fi][fr][fc];
    // Invert gamma inside e_v A e_v by a linear solve.
    std::vector<std::size_t> corner;
    for (std::size_t bi = 0; bi < A.dim(); ++bi)
      if (info.basis_source[bi] == v && info.basis_target[bi] == v) corner.push_back(bi);
    Matrix sys(A.field(), A.dim(), corner.size());
    for (std::size_t s = 0; s < corner.size(); ++s) {
      Vec col = A.mult_basis_right(gamma, corner[s]);  // gamma * basis_s
      for (std::size_t rr = 0; rr < A.dim(); ++rr) sys.at(rr, s) = col[rr];
    }
    auto sol = solve_linear(sys, ev);
    if (!sol) fail(errc::invalid_argument, "minimize: unit entry not invertible (corner solve failed)");
    Vec ginv = vec_zero(A.field(), A.dim());
    for (std::size_t s = 0; s < corner.size(); ++s)
      if (!sol->particular[s].is_zero())
        ginv = vec_add(ginv, vec_scale(vec_unit(A.field(), A.dim(), corner[s]), sol->particular[s]));
    if (A.multiply(gamma, ginv) != ev || A.multiply(ginv, gamma) != ev)
      fail(errc::invalid_argument, "minimize: inverse re-verification failed");

    // Gaussian cancellation of the contractible summand (fr at degree fi,
    // fc at degree fi+1). New middle differential: delta - alpha g^{-1} beta.
    std::vector<std::vector<Vec>> nd;
    for (std::size_t r = 0; r < c.diffs[fi].size(); ++r) {
      if (r == fr) continue;
      std::vector<Vec> row;
      for (std::size_t col = 0; col < c.diffs[fi][r].size(); ++col) {
        if (col == fc) continue;
        Vec corr = A.multiply(A.multiply(c.diffs[fi][r][fc], ginv), c.diffs[fi][fr][col]);
        row.push_back(vec_sub(c.diffs[fi][r][col], corr));
      }
      nd.push_back(std::move(row));
    }
    c.diffs[fi] = std::move(nd);
    // Incoming differential: drop the column into the cancelled row-summand.
    if (fi > 0) {
      for (auto& row : c.diffs[fi - 1]) row.erase(row.begin() + static_cast<long>(fr));
    }
    // Outgoing differential: drop the row from the cancelled column-summand.
    if (fi + 1 < c.diffs.size()) {
      c.diffs[fi + 1].erase(c.diffs[fi + 1].begin() + static_cast<long>(fc));
    }
    c.terms[fi].erase(c.terms[fi].begin() + static_cast<long>(fr));
    c.terms[fi + 1].erase(c.terms[fi + 1].begin() + static_cast<long>(fc));
  }
  return c.normalized();
}

ProjComplex brutal_truncate(const ProjComplex& c, int t) {
  if (t <= c.lo) return c;
  if (t > c.hi()) return zero_complex(c.algebra);
  std::size_t drop = static_cast<std::size_t>(t - c.lo);
  ProjComplex out{c.algebra, t, {}, {}};
  out.terms.assign(c.terms.begin() + static_cast<long>(drop), c.terms.end());
  if (drop < c.diffs.size())
    out.diffs.assign(c.diffs.begin() + static_cast<long>(drop), c.diffs.end());
  return out.normalized();
}

void ModuleComplex::validate() const {
  if (terms.empty()) return;
  if (diffs.size() + 1 != terms.size())
    fail(errc::dimension_mismatch, "module complex: differential count mismatch");
  const AssocAlgebra& A = *terms[0].algebra;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i].rows() != terms[i + 1].dim || diffs[i].cols() != terms[i].dim)
      fail(errc::dimension_mismatch, "module complex: differential shape");
    for (std::size_t bi = 0; bi < A.dim(); ++bi) {
      Matrix lhs = diffs[i] * terms[i].action[bi];
      Matrix rhs = terms[i + 1].action[bi] * diffs[i];
      if (!(lhs == rhs)) fail(errc::invalid_argument, "module complex: differential is not a module map");
    }
  }
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
    if (!(diffs[i + 1] * diffs[i]).is_zero()) fail(errc::invalid_argument, "module complex: d^2 != 0");
}

DimVector cohomology_dim_vector(const ModuleComplex& c) {
  DimVector out;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    std::size_t out_rank = i < c.diffs.size() ? c.diffs[i].rank() : 0;
    std::size_t in_rank = i > 0 ? c.diffs[i - 1].rank() : 0;
    std::size_t h = c.terms[i].dim - out_rank - in_rank;
    if (h) out[c.lo + static_cast<int>(i)] = h;
  }
  return out;
}

ModuleComplex stalk_module_complex(ModuleRep m, int degree) {
  ModuleComplex c;
  c.lo = degree;
  c.terms.push_back(std::move(m));
  return c;
}

ModuleComplex good_truncate(const ModuleComplex& c, int t) {
  if (t <= c.lo) return c;
  ModuleComplex out;
  out.lo = t;
  if (t > c.hi()) return out;
  std::size_t ti = static_cast<std::size_t>(t - c.lo);
  const ModuleRep& xt = c.terms[ti];
  const FieldPtr& f = xt.algebra->field();

  // Quotient X^t / im d^{t-1}.
  RowSpan image(f, xt.dim);
  if (ti > 0)
    for (std::size_t j = 0; j < c.terms[ti - 1].dim; ++j)
      image.add(c.diffs[ti - 1].apply(vec_unit(f, c.terms[ti - 1].dim, j)));
  std::vector<std::size_t> reps;
  for (std::size_t j = 0; j < xt.dim; ++j)
    if (std::find(image.pivots().begin(), image.pivots().end(), j) == image.pivots().end())
      reps.push_back(j);
  auto project = [&](const Vec& x) {
    Vec red = image.reduce(x);
    Vec out_v = vec_zero(f, reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) out_v[i] = red[reps[i]];
    return out_v;
  };

  ModuleRep head{xt.algebra, Side::left, reps.size(), {}};
  for (std::size_t bi = 0; bi < xt.algebra->dim(); ++bi) {
    Matrix act(f, reps.size(), reps.size());
    for (std::size_t cidx = 0; cidx < reps.size(); ++cidx) {
      Vec img = project(xt.action[bi].apply(vec_unit(f, xt.dim, reps[cidx])));
      for (std::size_t r = 0; r < reps.size(); ++r) act.at(r, cidx) = img[r];
    }
    head.action.push_back(std::move(act));
  }
  out.terms.push_back(std::move(head));

  if (ti < c.diffs.size()) {
    // Induced map X^t/im -> X^{t+1} on class representatives.
    Matrix d(f, c.terms[ti + 1].dim, reps.size());
    for (std::size_t cidx = 0; cidx < reps.size(); ++cidx) {
      Vec img = c.diffs[ti].apply(vec_unit(f, xt.dim, reps[cidx]));
      for (std::size_t r = 0; r < c.terms[ti + 1].dim; ++r) d.at(r, cidx) = img[r];
    }
    out.diffs.push_back(std::move(d));
    for (std::size_t i = ti + 1; i < c.terms.size(); ++i) {
      out.terms.push_back(c.terms[i]);
      if (i < c.diffs.size()) out.diffs.push_back(c.diffs[i]);
    }
  }
  return out;
}

ProjComplex minimal_proj_resolution(const ModuleRep& m, unsigned depth) {
  if (m.side != Side::left) fail(errc::invalid_argument, "resolutions act on left modules");
  const AlgebraPtr& A = m.algebra;
  const auto& info = presented_info(*A);
  const FieldPtr& f = A->field();
  auto rad = radical_of(*A);

  std::vector<std::vector<int>> rev_terms;                 // degree 0, -1, -2, ...
  std::vector<std::vector<std::vector<Vec>>> rev_diffs;    // map P^{-s-1} -> P^{-s}

  ModuleRep cur = m;
  std::vector<Vec> cur_in_prev;  // kernel basis inside the previous cover (its k-coords)
  DegreeLayout prev_layout;

  for (unsigned s = 0; s <= depth; ++s) {
    if (cur.dim == 0) break;
    // Generators of top(cur): per vertex, e_v cur beyond e_v rad cur.
    std::vector<int> vertices;
    std::vector<Vec> gens;
    for (std::size_t v = 0; v < info.presentation.quiver.vertices.size(); ++v) {
      Vec ev = vec_unit(f, A->dim(), info.vertex_idempotent[v]);
      Matrix acte = cur.act_vec(ev);
      RowSpan span(f, cur.dim);
      for (const auto& r : rad) {
        Matrix lower = acte * cur.act_vec(r);
        for (std::size_t j = 0; j < cur.dim; ++j) span.add(lower.apply(vec_unit(f, cur.dim, j)));
      }
      for (std::size_t j = 0; j < cur.dim; ++j) {
        Vec cand = acte.apply(vec_unit(f, cur.dim, j));
        if (span.add(cand)) {
          vertices.push_back(static_cast<int>(v));
          gens.push_back(cand);
        }
      }
    }

    DegreeLayout lay = layout_for(*A, vertices);
    // Differential entries to the previous cover.
    if (s > 0) {
      std::vector<std::vector<Vec>> entries(
          vertices.size(), std::vector<Vec>(prev_layout.vertices.size(), vec_zero(f, A->dim())));
      for (std::size_t g = 0; g < gens.size(); ++g) {
        // Generator as a vector in the previous cover's coordinates.
        Vec inprev = vec_zero(f, prev_layout.dim);
        for (std::size_t kk = 0; kk < cur_in_prev.size(); ++kk)
          if (!gens[g][kk].is_zero()) inprev = vec_add(inprev, vec_scale(cur_in_prev[kk], gens[g][kk]));
        for (std::size_t rsum = 0; rsum < prev_layout.vertices.size(); ++rsum) {
          Vec x = vec_zero(f, A->dim());
          for (std::size_t pb = 0; pb < prev_layout.basis[rsum].size(); ++pb) {
            const Scalar& co = inprev[prev_layout.offset[rsum] + pb];
            if (!co.is_zero())
              x = vec_add(x, vec_scale(vec_unit(f, A->dim(), prev_layout.basis[rsum][pb]), co));
          }
          entries[g][rsum] = std::move(x);
        }
      }
      rev_diffs.push_back(std::move(entries));
    }
    rev_terms.push_back(vertices);
    if (s == depth) break;

    // Cover matrix and its kernel.
    Matrix cover(f, cur.dim, lay.dim);
    for (std::size_t r = 0; r < vertices.size(); ++r)
      for (std::size_t pb = 0; pb < lay.basis[r].size(); ++pb) {
        Vec img = cur.act_vec(vec_unit(f, A->dim(), lay.basis[r][pb])).apply(gens[r]);
        for (std::size_t row = 0; row < cur.dim; ++row) cover.at(row, lay.offset[r] + pb) = img[row];
      }
    auto kern = kernel_basis(cover);

    // The cover as a module, and the kernel as a submodule.
    ModuleRep cover_rep{A, Side::left, lay.dim, {}};
    for (std::size_t bi = 0; bi < A->dim(); ++bi) {
      Matrix act(f, lay.dim, lay.dim);
      for (std::size_t r = 0; r < vertices.size(); ++r)
        for (std::size_t pb = 0; pb < lay.basis[r].size(); ++pb) {
          Vec img = A->mult_basis_left(bi, vec_unit(f, A->dim(), lay.basis[r][pb]));
          for (std::size_t qb = 0; qb < lay.basis[r].size(); ++qb)
            act.at(lay.offset[r] + qb, lay.offset[r] + pb) = img[lay.basis[r][qb]];
        }
      cover_rep.action.push_back(std::move(act));
    }
    if (kern.empty()) {
      prev_layout = lay;
      cur = ModuleRep{A, Side::left, 0, {}};
      cur_in_prev.clear();
      break;
    }
    RowSpan kspan(f, lay.dim);
    for (const auto& kv : kern) kspan.add(kv);
    std::vector<Vec> kbasis = kspan.rows();
    ModuleRep next{A, Side::left, kbasis.size(), {}};
    for (std::size_t bi = 0; bi < A->dim(); ++bi) {
      Matrix act(f, kbasis.size(), kbasis.size());
      for (std::size_t cidx = 0; cidx < kbasis.size(); ++cidx) {
        Vec img = cover_rep.action[bi].apply(kbasis[cidx]);
        auto coords = kspan.coordinates(img);
        if (!coords) fail(errc::invalid_argument, "resolution kernel is not action-stable");
        for (std::size_t r = 0; r < kbasis.size(); ++r) act.at(r, cidx) = (*coords)[r];
      }
      next.action.push_back(std::move(act));
    }
    prev_layout = lay;
    cur = std::move(next);
    cur_in_prev = std::move(kbasis);
  }

  ProjComplex out{A, -static_cast<int>(rev_terms.size()) + 1, {}, {}};
  out.terms.assign(rev_terms.rbegin(), rev_terms.rend());
  out.diffs.assign(rev_diffs.rbegin(), rev_diffs.rend());
  return out.normalized();
}

DimVector lemma_bound(const AssocAlgebra& a, const DimVector& n, int t) {
  DimVector out;
  if (n.empty()) return out;
  int r = n.rbegin()->first;
  if (t > r) fail(errc::invalid_argument, "lemma_bound expects t <= max support of n");
  std::size_t M = 0;
  const auto& info = presented_info(a);
  for (std::size_t v = 0; v < info.presentation.quiver.vertices.size(); ++v)
    M = std::max(M, a.basis_with_source(static_cast<int>(v)).size());
  std::size_t next = 0;
  for (int i = r; i >= t; --i) {
    auto it = n.find(i);
    std::size_t ni = it == n.end() ? 0 : it->second;
    std::size_t mi = (ni + next) * M;
    out[i] = mi;
    next = mi;
  }
  return out;
}

namespace {

// Basis index of a length-<=1 path class (trivial or arrow).
std::size_t arrow_basis_index(const PresentedInfo& info, int arrow) {
  for (std::size_t bi = 0; bi < info.basis_paths.size(); ++bi)
    if (info.basis_paths[bi].length() == 1 && info.basis_paths[bi].arrows[0] == arrow) return bi;
  fail(errc::invalid_argument, "arrow class not found");
}

}  // namespace

ProjComplex extend_scalars_complex(const ProjComplex& c, const ExtensionMorphism& phi) {
  if (c.algebra.get() != phi.source.get())
    fail(errc::dictionary_unavailable, "complex is not over the extension source");

  if (phi.kind == "identity") return c;

  if (phi.kind == "quotient") {
    ProjComplex out{phi.target, c.lo, c.terms, {}};
    for (const auto& d : c.diffs) {
      std::vector<std::vector<Vec>> nd;
      for (const auto& row : d) {
        std::vector<Vec> nrow;
        for (const auto& e : row) nrow.push_back(phi.apply(e));
        nd.push_back(std::move(nrow));
      }
      out.diffs.push_back(std::move(nd));
    }
    out.validate();
    return out;
  }

  if (phi.kind == "baseChange") {
    if (phi.etale_flag)
      fail(errc::dictionary_unavailable, "etale base change target is not a presented algebra");
    auto bk = extend_scalars_algebra(phi.source, phi.ext_field);
    ProjComplex out{bk, c.lo, c.terms, {}};
    auto coerce = [&](const Vec& v) {
      Vec nv;
      nv.reserve(v.size());
      for (const auto& s : v) nv.push_back(Scalar::from_rat(bk->field(), s.rat()));
      return nv;
    };
    for (const auto& d : c.diffs) {
      std::vector<std::vector<Vec>> nd;
      for (const auto& row : d) {
        std::vector<Vec> nrow;
        for (const auto& e : row) nrow.push_back(coerce(e));
        nd.push_back(std::move(nrow));
      }
      out.diffs.push_back(std::move(nd));
    }
    out.validate();
    return out;
  }

  if (phi.kind == "skewGroup") {
    // Trivial Z/2 action with invertible order: B = A x A, the complex doubles.
    bool trivial = phi.action && phi.action->elements.size() == 2 && phi.group_order_invertible;
    if (trivial)
      for (const auto& mtx : phi.action->matrices)
        if (!(mtx == Matrix::identity(c.algebra->field(), c.algebra->dim()))) trivial = false;
    if (!trivial)
      fail(errc::dictionary_unavailable,
           "skew-group transport implemented for trivial Z/2 actions only");
    const auto& info = presented_info(*c.algebra);
    const Presentation& p = info.presentation;
    Presentation doubled;
    doubled.field = p.field;
    doubled.nilpotency_cap = p.nilpotency_cap;
    const std::size_t nv = p.quiver.vertices.size();
    for (const char* suffix : {"_p", "_m"}) {
      for (const auto& v : p.quiver.vertices) doubled.quiver.vertices.push_back(v + suffix);
    }
    const std::size_t na = p.quiver.arrows.size();
    for (std::size_t copy = 0; copy < 2; ++copy) {
      const char* suffix = copy == 0 ? "_p" : "_m";
      for (const auto& a : p.quiver.arrows)
        doubled.quiver.arrows.push_back(Arrow{a.label + suffix,
                                              a.source + static_cast<int>(copy * nv),
                                              a.target + static_cast<int>(copy * nv)});
      for (const auto& rel : p.relations) {
        Relation nr;
        for (const auto& [coeff, path] : rel.terms) {
          Path np;
          np.base_vertex = path.base_vertex + static_cast<int>(copy * nv);
          for (int ai : path.arrows) np.arrows.push_back(ai + static_cast<int>(copy * na));
          nr.terms.emplace_back(coeff, std::move(np));
        }
        doubled.relations.push_back(std::move(nr));
      }
    }
    auto b2 = path_basis_algebra(doubled);
    const auto& binfo = *b2->presented();
    // A-basis -> doubled-basis per copy.
    auto map_elem = [&](const Vec& e, std::size_t copy) {
      Vec out_v = vec_zero(b2->field(), b2->dim());
      for (std::size_t bi = 0; bi < e.size(); ++bi) {
        if (e[bi].is_zero()) continue;
        const Path& path = info.basis_paths[bi];
        if (path.is_trivial()) {
          out_v[binfo.vertex_idempotent[static_cast<std::size_t>(path.base_vertex) + copy * nv]] += e[bi];
          continue;
        }
        Vec img = vec_unit(b2->field(), b2->dim(),
                           binfo.vertex_idempotent[static_cast<std::size_t>(path.source(p.quiver)) + copy * nv]);
        for (int ai : path.arrows)
          img = b2->multiply(
              vec_unit(b2->field(), b2->dim(),
                       arrow_basis_index(binfo, ai + static_cast<int>(copy * na))),
              img);
        out_v = vec_add(out_v, vec_scale(img, e[bi]));
      }
      return out_v;
    };

    ProjComplex out{b2, c.lo, {}, {}};
    for (const auto& t : c.terms) {
      std::vector<int> nt;
      for (int v : t) nt.push_back(v);
      for (int v : t) nt.push_back(v + static_cast<int>(nv));
      out.terms.push_back(std::move(nt));
    }
    for (std::size_t i = 0; i < c.diffs.size(); ++i) {
      std::size_t rows = c.terms[i].size(), cols = c.terms[i + 1].size();
      std::vector<std::vector<Vec>> nd(2 * rows, std::vector<Vec>(2 * cols, vec_zero(b2->field(), b2->dim())));
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t cc = 0; cc < cols; ++cc) {
          nd[r][cc] = map_elem(c.diffs[i][r][cc], 0);
          nd[rows + r][cols + cc] = map_elem(c.diffs[i][r][cc], 1);
        }
      out.diffs.push_back(std::move(nd));
    }
    out.validate();
    return out;
  }

  fail(errc::dictionary_unavailable, "no projective dictionary for extension kind '" + phi.kind + "'");
}

const char* iso_answer_name(IsoAnswer a) {
  switch (a) {
    case IsoAnswer::yes: return "yes";
    case IsoAnswer::no: return "no";
    case IsoAnswer::not_shown: return "not_shown";
  }
  return "?";
}

namespace {

// Unknown layout of the chain-map space between aligned complexes.
struct ChainMapSpace {
  struct Slot {
    int degree_index_x;  // index into x.terms
    std::size_t row, col;
    std::vector<std::size_t> basis;  // algebra basis indices spanning e_v A e_w
  };
  std::vector<Slot> slots;
  std::vector<std::size_t> slot_offset;
  std::size_t total = 0;
  std::vector<Vec> kernel;  // basis of the solution space
};

// Solves f_i Gamma^Y_i = Gamma^X_i f_{i+1} for chain maps f: X -> Y.
// Requires aligned supports (same lo and term count after normalization).
ChainMapSpace chain_map_space(const ProjComplex& x, const ProjComplex& y) {
  const AssocAlgebra& A = *x.algebra;
  const auto& info = presented_info(A);
  const FieldPtr& f = A.field();
  ChainMapSpace sp;
  // The slot f_i[r][c] is a map P_{vX_r} -> P_{vY_c}: an element of
  // e_{vX_r} A e_{vY_c}, i.e. basis paths with target vX_r and source vY_c.
  for (std::size_t i = 0; i < x.terms.size(); ++i)
    for (std::size_t r = 0; r < x.terms[i].size(); ++r)
      for (std::size_t c = 0; c < y.terms[i].size(); ++c) {
        ChainMapSpace::Slot slot{static_cast<int>(i), r, c, {}};
        for (std::size_t bi = 0; bi < A.dim(); ++bi)
          if (info.basis_target[bi] == x.terms[i][r] && info.basis_source[bi] == y.terms[i][c])
            slot.basis.push_back(bi);
        sp.slot_offset.push_back(sp.total);
        sp.total += slot.basis.size();
        sp.slots.push_back(std::move(slot));
      }

  auto slot_at = [&](std::size_t i, std::size_t r, std::size_t c) -> std::size_t {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < sp.slots.size(); ++k)
      if (sp.slots[k].degree_index_x == static_cast<int>(i) && sp.slots[k].row == r && sp.slots[k].col == c)
        idx = k;
    return idx;
  };

  // Assemble the homogeneous system explicitly.
  std::vector<Vec> sys_rows;
  for (std::size_t deg = 0; deg + 1 < x.terms.size(); ++deg) {
    for (std::size_t r = 0; r < x.terms[deg].size(); ++r)
      for (std::size_t c2 = 0; c2 < y.terms[deg + 1].size(); ++c2) {
        // One algebra-vector equation -> A.dim() scalar rows.
        std::vector<Vec> scalar_rows(A.dim(), vec_zero(f, sp.total));
        for (std::size_t s = 0; s < y.terms[deg].size(); ++s) {
          std::size_t k = slot_at(deg, r, s);
          const auto& slot = sp.slots[k];
          const Vec& gy = y.diffs[deg][s][c2];
          for (std::size_t b = 0; b < slot.basis.size(); ++b) {
            Vec prod = A.multiply(vec_unit(f, A.dim(), slot.basis[b]), gy);
            for (std::size_t coord = 0; coord < A.dim(); ++coord)
              if (!prod[coord].is_zero()) scalar_rows[coord][sp.slot_offset[k] + b] += prod[coord];
          }
        }
        for (std::size_t t = 0; t < x.terms[deg + 1].size(); ++t) {
          std::size_t k = slot_at(deg + 1, t, c2);
          const auto& slot = sp.slots[k];
          const Vec& gx = x.diffs[deg][r][t];
          for (std::size_t b = 0; b < slot.basis.size(); ++b) {
            Vec prod = A.multiply(gx, vec_unit(f, A.dim(), slot.basis[b]));
            for (std::size_t coord = 0; coord < A.dim(); ++coord)
              if (!prod[coord].is_zero()) scalar_rows[coord][sp.slot_offset[k] + b] -= prod[coord];
          }
        }
        for (auto& row : scalar_rows)
          if (!vec_is_zero(row)) sys_rows.push_back(std::move(row));
      }
  }
  if (sp.total == 0) {
    sp.kernel.clear();
    return sp;
  }
  Matrix sys = Matrix::from_rows(f, sys_rows, sp.total);
  sp.kernel = kernel_basis(sys);
  return sp;
}

// Realize a chain-map coefficient vector as per-degree k-matrices and test
// degreewise invertibility.
bool chain_map_invertible(const ProjComplex& x, const ProjComplex& y, const ChainMapSpace& sp,
                          const Vec& coeffs) {
  const AssocAlgebra& A = *x.algebra;
  const FieldPtr& f = A.field();
  for (std::size_t i = 0; i < x.terms.size(); ++i) {
    DegreeLayout lx = layout_for(A, x.terms[i]);
    DegreeLayout ly = layout_for(A, y.terms[i]);
    if (lx.dim != ly.dim) return false;
    std::vector<std::vector<Vec>> entries(x.terms[i].size(),
                                          std::vector<Vec>(y.terms[i].size(), vec_zero(f, A.dim())));
    for (std::size_t k = 0; k < sp.slots.size(); ++k) {
      const auto& slot = sp.slots[k];
      if (slot.degree_index_x != static_cast<int>(i)) continue;
      for (std::size_t b = 0; b < slot.basis.size(); ++b) {
        const Scalar& cval = coeffs[sp.slot_offset[k] + b];
        if (!cval.is_zero())
          entries[slot.row][slot.col] =
              vec_add(entries[slot.row][slot.col],
                      vec_scale(vec_unit(f, A.dim(), slot.basis[b]), cval));
      }
    }
    Matrix km = k_matrix(A, lx, ly, entries);
    if (km.rank() != lx.dim) return false;
  }
  return true;
}

// Align supports of two complexes (pad with empty degrees).
std::pair<ProjComplex, ProjComplex> aligned(const ProjComplex& x0, const ProjComplex& y0) {
  ProjComplex x = x0.normalized(), y = y0.normalized();
  if (x.terms.empty() && y.terms.empty()) return {x, y};
  int lo = std::min(x.terms.empty() ? y.lo : x.lo, y.terms.empty() ? x.lo : y.lo);
  int hi = std::max(x.terms.empty() ? y.hi() : x.hi(), y.terms.empty() ? x.hi() : y.hi());
  auto pad = [&](const ProjComplex& c) {
    ProjComplex out{c.algebra, lo, {}, {}};
    for (int d = lo; d <= hi; ++d) {
      int idx = d - c.lo;
      if (idx >= 0 && idx < static_cast<int>(c.terms.size()))
        out.terms.push_back(c.terms[static_cast<std::size_t>(idx)]);
      else
        out.terms.push_back({});
    }
    for (int d = lo; d + 1 <= hi; ++d) {
      int idx = d - c.lo;
      std::size_t rows = out.terms[static_cast<std::size_t>(d - lo)].size();
      std::size_t cols = out.terms[static_cast<std::size_t>(d - lo + 1)].size();
      if (idx >= 0 && idx < static_cast<int>(c.diffs.size()))
        out.diffs.push_back(c.diffs[static_cast<std::size_t>(idx)]);
      else
        out.diffs.push_back(std::vector<std::vector<Vec>>(
            rows, std::vector<Vec>(cols, vec_zero(c.algebra->field(), c.algebra->dim()))));
    }
    return out;
  };
  return {pad(x), pad(y)};
}

}  // namespace

IsoAnswer chain_isomorphic(const ProjComplex& x0, const ProjComplex& y0, std::uint64_t seed,
                           std::uint64_t budget) {
  auto [x, y] = aligned(x0, y0);
  if (x.terms.empty()) return y.terms.empty() ? IsoAnswer::yes : IsoAnswer::no;
  // Component dimensions must match for a chain isomorphism.
  if (component_dim_vector(x) != component_dim_vector(y)) return IsoAnswer::no;

  const FieldPtr& f = x.algebra->field();
  ChainMapSpace sp = chain_map_space(x, y);
  // A zero-dimensional or empty chain-map space cannot contain an isomorphism
  // between nonzero complexes; this negative is exact over any field.
  if (sp.total == 0 || sp.kernel.empty()) return IsoAnswer::no;

  if (f->kind() == FieldKind::prime) {
    long p = f->modulus();
    double total = 1;
    for (std::size_t i = 0; i < sp.kernel.size(); ++i) total *= static_cast<double>(p);
    if (total > static_cast<double>(budget))
      fail(errc::budget_exceeded, "chain-map solution space too large to exhaust");
    std::vector<long> counter(sp.kernel.size(), 0);
    while (true) {
      Vec coeffs = vec_zero(f, sp.total);
      bool all_zero = true;
      for (std::size_t i = 0; i < counter.size(); ++i) {
        if (counter[i] == 0) continue;
        all_zero = false;
        coeffs = vec_add(coeffs, vec_scale(sp.kernel[i], Scalar::from_int(f, counter[i])));
      }
      if (!all_zero && chain_map_invertible(x, y, sp, coeffs)) return IsoAnswer::yes;
      std::size_t pos = 0;
      while (pos < counter.size() && ++counter[pos] == p) counter[pos++] = 0;
      if (pos == counter.size()) break;
    }
    return IsoAnswer::no;
  }

  std::mt19937_64 rng(seed ^ 0xc0ffee11ULL);
  for (int t = 0; t < 64; ++t) {
    Vec coeffs = vec_zero(f, sp.total);
    for (const auto& kv : sp.kernel) {
      long c = static_cast<long>(rng() % 7) - 3;
      if (c) coeffs = vec_add(coeffs, vec_scale(kv, Scalar::from_int(f, c)));
    }
    if (!vec_is_zero(coeffs) && chain_map_invertible(x, y, sp, coeffs)) return IsoAnswer::yes;
  }
  return IsoAnswer::not_shown;
}

IsoAnswer modules_isomorphic(const ModuleRep& x, const ModuleRep& y, std::uint64_t seed,
                             std::uint64_t budget) {
  if (x.dim != y.dim) return IsoAnswer::no;
  const FieldPtr& f = x.algebra->field();
  if (x.dim == 0) return IsoAnswer::yes;
  const std::size_t n = x.dim;
  const std::size_t nuk = n * n;
  std::vector<Vec> rows;
  for (std::size_t bi = 0; bi < x.algebra->dim(); ++bi) {
    // T M^x = M^y T.
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Vec row = vec_zero(f, nuk);
        for (std::size_t s = 0; s < n; ++s) {
          if (!x.action[bi].at(s, c).is_zero()) row[r * n + s] += x.action[bi].at(s, c);
          if (!y.action[bi].at(r, s).is_zero()) row[s * n + c] -= y.action[bi].at(r, s);
        }
        if (!vec_is_zero(row)) rows.push_back(std::move(row));
      }
  }
  std::vector<Vec> kernel;
  if (rows.empty()) {
    for (std::size_t i = 0; i < nuk; ++i) kernel.push_back(vec_unit(f, nuk, i));
  } else {
    kernel = kernel_basis(Matrix::from_rows(f, rows, nuk));
  }
  if (kernel.empty()) return IsoAnswer::no;  // only the zero map; exact negative

  auto invertible = [&](const Vec& coeffs) {
    Matrix t(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) t.at(r, c) = coeffs[r * n + c];
    return t.rank() == n;
  };

  if (f->kind() == FieldKind::prime) {
    long p = f->modulus();
    double total = 1;
    for (std::size_t i = 0; i < kernel.size(); ++i) total *= static_cast<double>(p);
    if (total > static_cast<double>(budget)) fail(errc::budget_exceeded, "hom space too large to exhaust");
    std::vector<long> counter(kernel.size(), 0);
    while (true) {
      Vec coeffs = vec_zero(f, nuk);
      bool all_zero = true;
      for (std::size_t i = 0; i < counter.size(); ++i) {
        if (counter[i] == 0) continue;
        all_zero = false;
        coeffs = vec_add(coeffs, vec_scale(kernel[i], Scalar::from_int(f, counter[i])));
      }
      if (!all_zero && invertible(coeffs)) return IsoAnswer::yes;
      std::size_t pos = 0;
      while (pos < counter.size() && ++counter[pos] == p) counter[pos++] = 0;
      if (pos == counter.size()) break;
    }
    return IsoAnswer::no;
  }

  std::mt19937_64 rng(seed ^ 0xfadedfadULL);
  for (int t = 0; t < 64; ++t) {
    Vec coeffs = vec_zero(f, nuk);
    for (const auto& kv : kernel) {
      long c = static_cast<long>(rng() % 7) - 3;
      if (c) coeffs = vec_add(coeffs, vec_scale(kv, Scalar::from_int(f, c)));
    }
    if (!vec_is_zero(coeffs) && invertible(coeffs)) return IsoAnswer::yes;
  }
  return IsoAnswer::not_shown;
}

SampleResult finiteness_sampler(const AlgebraPtr& a, const DimVector& cdim, bool radical_only,
                                std::uint64_t budget) {
  if (a->field()->kind() != FieldKind::prime)
    fail(errc::infinite_field_unsupported,
         "finiteness sampling enumerates over F_p; " + a->field()->description() + " is not finite");
  const auto& info = presented_info(*a);
  const FieldPtr& f = a->field();
  long p = f->modulus();
  const std::size_t nv = info.presentation.quiver.vertices.size();

  if (cdim.empty()) {
    SampleResult res;
    res.iso_class_count = 1;
    res.representatives.push_back(zero_complex(a));
    res.candidates_with_d2_zero = 1;
    return res;
  }
  int lo = cdim.begin()->first, hi = cdim.rbegin()->first;

  // Per-degree vertex multisets with the prescribed total dimension.
  std::vector<std::size_t> pdims(nv);
  for (std::size_t v = 0; v < nv; ++v) pdims[v] = a->basis_with_source(static_cast<int>(v)).size();
  std::function<void(std::size_t, std::size_t, std::vector<int>&, std::vector<std::vector<int>>&)>
      enumerate_multisets = [&](std::size_t start, std::size_t remaining, std::vector<int>& acc,
                                std::vector<std::vector<int>>& out) {
        if (remaining == 0) {
          out.push_back(acc);
          return;
        }
        for (std::size_t v = start; v < nv; ++v) {
          if (pdims[v] == 0 || pdims[v] > remaining) continue;
          acc.push_back(static_cast<int>(v));
          enumerate_multisets(v, remaining - pdims[v], acc, out);
          acc.pop_back();
        }
      };

  std::vector<std::vector<std::vector<int>>> per_degree;  // degree -> candidate multisets
  for (int d = lo; d <= hi; ++d) {
    auto it = cdim.find(d);
    std::size_t need = it == cdim.end() ? 0 : it->second;
    std::vector<std::vector<int>> outs;
    if (need == 0) {
      outs.push_back({});
    } else {
      std::vector<int> acc;
      enumerate_multisets(0, need, acc, outs);
    }
    if (outs.empty()) return SampleResult{};  // dimension not realizable
    per_degree.push_back(std::move(outs));
  }

  // All combinations of term choices.
  std::vector<ProjComplex> candidates;
  std::vector<std::size_t> choice(per_degree.size(), 0);
  double total_candidates = 0;
  while (true) {
    // Entry slots for this term choice.
    std::vector<std::vector<int>> terms;
    for (std::size_t i = 0; i < per_degree.size(); ++i) terms.push_back(per_degree[i][choice[i]]);
    struct Slot {
      std::size_t deg, row, col;
      std::vector<std::size_t> basis;
    };
    std::vector<Slot> slots;
    std::size_t total_coords = 0;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
      for (std::size_t r = 0; r < terms[i].size(); ++r)
        for (std::size_t c = 0; c < terms[i + 1].size(); ++c) {
          Slot s{i, r, c, {}};
          for (std::size_t bi = 0; bi < a->dim(); ++bi) {
            if (info.basis_target[bi] != terms[i][r] || info.basis_source[bi] != terms[i + 1][c])
              continue;
            if (radical_only && info.basis_paths[bi].is_trivial()) continue;
            s.basis.push_back(bi);
          }
          total_coords += s.basis.size();
          slots.push_back(std::move(s));
        }
    double count = 1;
    for (std::size_t i = 0; i < total_coords; ++i) count *= static_cast<double>(p);
    total_candidates += count;
    if (total_candidates > static_cast<double>(budget))
      fail(errc::budget_exceeded, "differential enumeration exceeds the budget");

    std::vector<long> counter(total_coords, 0);
    while (true) {
      ProjComplex cand{a, lo, terms, {}};
      for (std::size_t i = 0; i + 1 < terms.size(); ++i)
        cand.diffs.push_back(std::vector<std::vector<Vec>>(
            terms[i].size(), std::vector<Vec>(terms[i + 1].size(), vec_zero(f, a->dim()))));
      std::size_t coord = 0;
      for (const auto& s : slots)
        for (std::size_t b = 0; b < s.basis.size(); ++b, ++coord)
          if (counter[coord])
            cand.diffs[s.deg][s.row][s.col] = vec_add(
                cand.diffs[s.deg][s.row][s.col],
                vec_scale(vec_unit(f, a->dim(), s.basis[b]), Scalar::from_int(f, counter[coord])));
      // d^2 = 0 filter.
      bool ok = true;
      for (std::size_t i = 0; ok && i + 1 < cand.diffs.size(); ++i) {
        auto prod = entry_product(*a, cand.diffs[i], cand.diffs[i + 1], terms[i].size(),
                                  terms[i + 1].size(), terms[i + 2].size());
        for (const auto& row : prod)
          for (const auto& e : row)
            if (!vec_is_zero(e)) ok = false;
      }
      if (ok) candidates.push_back(cand);
      std::size_t pos = 0;
      while (pos < counter.size() && ++counter[pos] == p) counter[pos++] = 0;
      if (pos == counter.size() || counter.empty()) break;
      if (counter.empty()) break;
    }

    std::size_t pos = 0;
    while (pos < choice.size() && ++choice[pos] == per_degree[pos].size()) choice[pos++] = 0;
    if (pos == choice.size()) break;
  }

  // Partition by chain isomorphism (exhaustive over F_p).
  SampleResult res;
  res.candidates_with_d2_zero = candidates.size();
  std::vector<long> cls(candidates.size(), -1);
  std::vector<DimVector> hvec(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) hvec[i] = cohomology_dim_vector(candidates[i]);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = static_cast<long>(res.representatives.size());
    res.representatives.push_back(candidates[i]);
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (cls[j] >= 0) continue;
      if (candidates[i].terms != candidates[j].terms) continue;
      if (hvec[i] != hvec[j]) continue;
      if (chain_isomorphic(candidates[i], candidates[j], 0, budget) == IsoAnswer::yes) cls[j] = cls[i];
    }
  }
  res.iso_class_count = res.representatives.size();
  return res;
}

RoundtripReport lemma_iso_roundtrip(const ModuleRep& x, const ModuleRep& y, int t,
                                    std::uint64_t seed, std::uint64_t budget) {
  if (t >= 0)
    fail(errc::depth_insufficient,
         "modules sit in degree 0; the truncation degree must be negative so that cohomology "
         "vanishes at and below it");
  unsigned depth = static_cast<unsigned>(-t) + 2;
  auto px = minimal_proj_resolution(x, depth);
  auto py = minimal_proj_resolution(y, depth);
  auto tx = brutal_truncate(px, t);
  auto ty = brutal_truncate(py, t);
  RoundtripReport rep;
  // Minimal complexes: homotopy equivalence coincides with chain isomorphism.
  rep.truncations_equivalent = chain_isomorphic(tx, ty, seed, budget);
  rep.modules_iso = modules_isomorphic(x, y, seed, budget);
  rep.counterexample =
      rep.truncations_equivalent == IsoAnswer::yes && rep.modules_iso == IsoAnswer::no;
  return rep;
}

}  // namespace quiverkit
