#include <algorithm>
#include <map>

#include "quiverkit/algebra.hpp"

namespace quiverkit {

namespace {

constexpr std::size_t kPathBudget = 1u << 17;  // per-length path count guard

struct PathTable {
  // paths[l] = all paths of length l, enumeration order fixed by construction.
  std::vector<std::vector<Path>> paths;
  // index of a path inside its length bucket
  std::map<std::vector<int>, std::size_t> index;

  void build(const Quiver& q, unsigned max_len) {
    paths.assign(max_len + 1, {});
    for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v)
      paths[0].push_back(Path::trivial(v));
    for (unsigned l = 1; l <= max_len; ++l) {
      for (const Path& p : paths[l - 1]) {
        int tail = p.target(q);
        for (int ai = 0; ai < static_cast<int>(q.arrows.size()); ++ai) {
          if (q.arrows[static_cast<std::size_t>(ai)].source != tail) continue;
          Path np = p;
          if (np.is_trivial()) np.base_vertex = q.arrows[static_cast<std::size_t>(ai)].source;
          np.arrows.push_back(ai);
          index[np.arrows] = paths[l].size();
          paths[l].push_back(std::move(np));
        }
      }
      if (paths[l].size() > kPathBudget)
        fail(errc::path_budget_exceeded,
             "more than " + std::to_string(kPathBudget) + " paths of length " + std::to_string(l));
      if (paths[l].empty()) {
        paths.resize(l + 1);
        break;
      }
    }
  }

  unsigned longest() const { return static_cast<unsigned>(paths.size()) - 1; }
};

// Reduction state for the ideal generated by the relations, in the mixed
// path space of lengths 2..max_len. Coordinates ordered by (length, bucket
// index) so pivots prefer shorter paths.
struct IdealReduction {
  const Presentation& pres;
  PathTable table;
  std::vector<std::size_t> offset;  // offset[l] = first ambient coordinate of length l (l >= 2)
  std::size_t ambient = 0;
  RowSpan span;

  explicit IdealReduction(const Presentation& p, unsigned max_len)
      : pres(p), span(p.field, 0) {
    table.build(p.quiver, max_len);
    offset.assign(table.paths.size(), 0);
    std::size_t acc = 0;
    for (std::size_t l = 2; l < table.paths.size(); ++l) {
      offset[l] = acc;
      acc += table.paths[l].size();
    }
    ambient = acc;
    span = RowSpan(p.field, ambient);
    populate();
  }

  std::size_t coord(const Path& p) const {
    auto it = table.index.find(p.arrows);
    return offset[p.length()] + it->second;
  }

  void populate() {
    const Quiver& q = pres.quiver;
    unsigned max_len = table.longest();
    for (const auto& rel : pres.relations) {
      unsigned longest_term = 0;
      for (const auto& [c, p] : rel.terms)
        if (!c.is_zero()) longest_term = std::max<unsigned>(longest_term, static_cast<unsigned>(p.length()));
      if (longest_term == 0) continue;
      int rsrc = rel.terms.front().second.source(q);
      int rtgt = rel.terms.front().second.target(q);
      // u r v: v first, then the relation, then u.
      for (unsigned lv = 0; lv + longest_term <= max_len; ++lv) {
        for (const Path& v : table.paths[lv]) {
          if (v.target(q) != rsrc) continue;
          for (unsigned lu = 0; lv + longest_term + lu <= max_len; ++lu) {
            for (const Path& u : table.paths[lu]) {
              if (u.source(q) != rtgt) continue;
              Vec row = vec_zero(pres.field, ambient);
              bool nonzero = false;
              for (const auto& [c, p] : rel.terms) {
                if (c.is_zero()) continue;
                Path whole;
                whole.base_vertex = v.source(q);
                whole.arrows = v.arrows;
                whole.arrows.insert(whole.arrows.end(), p.arrows.begin(), p.arrows.end());
                whole.arrows.insert(whole.arrows.end(), u.arrows.begin(), u.arrows.end());
                row[coord(whole)] += c;
                nonzero = true;
              }
              if (nonzero) span.add(std::move(row));
            }
          }
        }
      }
    }
  }

  // Least m <= cap such that every path of length m lies in the ideal.
  std::optional<unsigned> radical_length() const {
    for (unsigned m = 1; m <= pres.nilpotency_cap; ++m) {
      if (m >= table.paths.size()) return m;  // no paths of this length at all
      bool all_zero = true;
      for (const Path& p : table.paths[m]) {
        if (m < 2) {
          all_zero = false;  // arrows are never in an ideal generated in degree >= 2
          break;
        }
        if (!span.contains(vec_unit(pres.field, ambient, coord(p)))) {
          all_zero = false;
          break;
        }
      }
      if (all_zero) return m;
    }
    return std::nullopt;
  }
};

void check_relation_degrees(const Presentation& p) {
  for (const auto& rel : p.relations)
    for (const auto& [c, path] : rel.terms)
      if (!c.is_zero() && path.length() < 2)
        fail(errc::not_admissible_length_one,
             "relation term '" + path.str(p.quiver) + "' has length " + std::to_string(path.length()));
}

}  // namespace

AdmissibleInfo admissible_check(const Presentation& p) {
  check_relation_degrees(p);
  IdealReduction red(p, p.nilpotency_cap);
  auto m = red.radical_length();
  if (!m)
    fail(errc::not_admissible_cap_exceeded,
         "paths of length " + std::to_string(p.nilpotency_cap) + " do not vanish in kQ/I");
  AdmissibleInfo info{*m, {}};
  for (unsigned l = 1; l < *m; ++l) {
    std::size_t count = 0;
    if (l < red.table.paths.size()) {
      if (l == 1) {
        count = red.table.paths[1].size();
      } else {
        for (const Path& q : red.table.paths[l]) {
          std::size_t c = red.coord(q);
          if (std::find(red.span.pivots().begin(), red.span.pivots().end(), c) == red.span.pivots().end())
            ++count;
        }
      }
    }
    info.survivors.push_back(count);
  }
  return info;
}

AlgebraPtr path_basis_algebra(const Presentation& p) {
  check_relation_degrees(p);
  IdealReduction red(p, p.nilpotency_cap);
  auto mopt = red.radical_length();
  if (!mopt)
    fail(errc::not_admissible_cap_exceeded,
         "paths of length " + std::to_string(p.nilpotency_cap) + " do not vanish in kQ/I");
  unsigned m = *mopt;
  const Quiver& q = p.quiver;
  const FieldPtr& F = p.field;

  // Basis: trivial paths, then surviving paths per length.
  std::vector<Path> basis;
  std::map<std::vector<int>, std::size_t> basis_index;  // non-trivial only
  for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v) basis.push_back(Path::trivial(v));
  for (unsigned l = 1; l < m && l < red.table.paths.size(); ++l) {
    for (const Path& path : red.table.paths[l]) {
      if (l >= 2) {
        std::size_t c = red.coord(path);
        if (std::find(red.span.pivots().begin(), red.span.pivots().end(), c) != red.span.pivots().end())
          continue;
      }
      basis_index[path.arrows] = basis.size();
      basis.push_back(path);
    }
  }
  const std::size_t n = basis.size();

  // Express the residue of a concatenated path in the surviving basis.
  auto path_class = [&](const Path& whole) -> Vec {
    Vec out = vec_zero(F, n);
    std::size_t len = whole.length();
    if (len >= m) return out;
    if (len == 0) {
      out[static_cast<std::size_t>(whole.base_vertex)] = Scalar::one(F);
      return out;
    }
    if (len == 1) {
      out[basis_index.at(whole.arrows)] = Scalar::one(F);
      return out;
    }
    Vec residue = red.span.reduce(vec_unit(F, red.ambient, red.coord(whole)));
    for (std::size_t l = 2; l < red.table.paths.size(); ++l) {
      for (std::size_t i = 0; i < red.table.paths[l].size(); ++i) {
        const Scalar& c = residue[red.offset[l] + i];
        if (c.is_zero()) continue;
        out[basis_index.at(red.table.paths[l][i].arrows)] += c;
      }
    }
    return out;
  };

  std::vector<std::vector<Vec>> sc(n, std::vector<Vec>(n, vec_zero(F, n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Path& pi = basis[i];
      const Path& pj = basis[j];
      // Product pi * pj: pj traversed first.
      if (pi.is_trivial() && pj.is_trivial()) {
        if (pi.base_vertex == pj.base_vertex) sc[i][j][i] = Scalar::one(F);
        continue;
      }
      if (pi.is_trivial()) {
        if (pj.target(q) == pi.base_vertex) sc[i][j][j] = Scalar::one(F);
        continue;
      }
      if (pj.is_trivial()) {
        if (pi.source(q) == pj.base_vertex) sc[i][j][i] = Scalar::one(F);
        continue;
      }
      if (pj.target(q) != pi.source(q)) continue;
      Path whole;
      whole.base_vertex = pj.source(q);
      whole.arrows = pj.arrows;
      whole.arrows.insert(whole.arrows.end(), pi.arrows.begin(), pi.arrows.end());
      sc[i][j] = path_class(whole);
    }
  }

  Vec unit = vec_zero(F, n);
  for (std::size_t v = 0; v < q.vertices.size(); ++v) unit[v] = Scalar::one(F);

  auto alg = std::make_shared<AssocAlgebra>(F, n, std::move(sc), std::move(unit), "presentation");

  std::vector<Vec> rad;
  for (std::size_t i = q.vertices.size(); i < n; ++i) rad.push_back(vec_unit(F, n, i));
  alg->set_radical_basis(std::move(rad));

  PresentedInfo info;
  info.presentation = p;
  info.basis_paths = basis;
  for (const Path& path : basis) {
    info.basis_source.push_back(path.source(q));
    info.basis_target.push_back(path.target(q));
  }
  for (std::size_t v = 0; v < q.vertices.size(); ++v) info.vertex_idempotent.push_back(v);
  alg->set_presented(std::move(info));
  return alg;
}

}  // namespace quiverkit
