#include "quiverkit/algebra.hpp"

#include <algorithm>
#include <random>

namespace quiverkit {

AssocAlgebra::AssocAlgebra(FieldPtr field, std::size_t dim, std::vector<std::vector<Vec>> sc,
                           Vec unit, std::string origin)
    : field_(std::move(field)), dim_(dim), sc_(std::move(sc)), unit_(std::move(unit)), origin_(std::move(origin)) {
  if (sc_.size() != dim_) fail(errc::dimension_mismatch, "structure constants shape");
  for (const auto& row : sc_) {
    if (row.size() != dim_) fail(errc::dimension_mismatch, "structure constants shape");
    for (const auto& v : row)
      if (v.size() != dim_) fail(errc::dimension_mismatch, "structure constants shape");
  }
  if (unit_.size() != dim_) fail(errc::dimension_mismatch, "unit vector length");
}

Vec AssocAlgebra::multiply(const Vec& x, const Vec& y) const {
  Vec out = vec_zero(field_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      const Vec& p = sc_[i][j];
      for (std::size_t k = 0; k < dim_; ++k) {
        if (p[k].is_zero()) continue;
        out[k] += c * p[k];
      }
    }
  }
  return out;
}

Vec AssocAlgebra::mult_basis_left(std::size_t i, const Vec& y) const {
  Vec out = vec_zero(field_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (y[j].is_zero()) continue;
    const Vec& p = sc_[i][j];
    for (std::size_t k = 0; k < dim_; ++k) {
      if (p[k].is_zero()) continue;
      out[k] += y[j] * p[k];
    }
  }
  return out;
}

Vec AssocAlgebra::mult_basis_right(const Vec& x, std::size_t j) const {
  Vec out = vec_zero(field_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    const Vec& p = sc_[i][j];
    for (std::size_t k = 0; k < dim_; ++k) {
      if (p[k].is_zero()) continue;
      out[k] += x[i] * p[k];
    }
  }
  return out;
}

Matrix AssocAlgebra::left_mult(const Vec& x) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Vec col = multiply(x, vec_unit(field_, dim_, j));
    for (std::size_t i = 0; i < dim_; ++i) m.at(i, j) = col[i];
  }
  return m;
}

Matrix AssocAlgebra::right_mult(const Vec& x) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Vec col = multiply(vec_unit(field_, dim_, j), x);
    for (std::size_t i = 0; i < dim_; ++i) m.at(i, j) = col[i];
  }
  return m;
}

void AssocAlgebra::validate() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    Vec bi = vec_unit(field_, dim_, i);
    if (multiply(unit_, bi) != bi || multiply(bi, unit_) != bi)
      fail(errc::invalid_argument, "unit law fails on basis element " + std::to_string(i));
  }
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      const Vec& ij = sc_[i][j];
      for (std::size_t k = 0; k < dim_; ++k) {
        Vec lhs = mult_basis_right(ij, k);
        Vec rhs = mult_basis_left(i, sc_[j][k]);
        if (lhs != rhs)
          fail(errc::invalid_argument, "associativity fails on basis triple (" + std::to_string(i) + "," +
                                           std::to_string(j) + "," + std::to_string(k) + ")");
      }
    }
  if (radical_basis_) {
    RowSpan span(field_, dim_);
    for (const auto& r : *radical_basis_) span.add(r);
    for (const auto& r : *radical_basis_)
      for (std::size_t i = 0; i < dim_; ++i) {
        if (!span.contains(mult_basis_left(i, r)) || !span.contains(mult_basis_right(r, i)))
          fail(errc::invalid_argument, "designated radical is not a two-sided ideal");
      }
    radical_length();  // throws if not nilpotent
  }
}

unsigned AssocAlgebra::radical_length() const {
  auto rad = radical_of(*this);
  std::vector<Vec> current = rad;
  unsigned m = 1;
  while (!current.empty()) {
    if (m > dim_ + 1) fail(errc::invalid_argument, "designated radical is not nilpotent");
    RowSpan next(field_, dim_);
    std::vector<Vec> next_basis;
    for (const auto& x : current)
      for (const auto& r : rad) {
        Vec prod = multiply(x, r);
        if (next.add(prod)) next_basis.push_back(prod);
      }
    current = std::move(next_basis);
    ++m;
  }
  return m;
}

std::vector<std::size_t> AssocAlgebra::basis_with_source(int v) const {
  if (!presented_) fail(errc::invalid_argument, "basis_with_source requires a presented algebra");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim_; ++i)
    if (presented_->basis_source[i] == v) out.push_back(i);
  return out;
}

std::vector<std::size_t> AssocAlgebra::basis_with_target(int v) const {
  if (!presented_) fail(errc::invalid_argument, "basis_with_target requires a presented algebra");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim_; ++i)
    if (presented_->basis_target[i] == v) out.push_back(i);
  return out;
}

std::vector<Vec> radical_via_trace(const AssocAlgebra& a) {
  if (a.field()->characteristic() != 0)
    fail(errc::positive_characteristic, "trace-form radical requires characteristic 0");
  const std::size_t n = a.dim();
  std::vector<Matrix> left;
  left.reserve(n);
  for (std::size_t i = 0; i < n; ++i) left.push_back(a.left_mult(vec_unit(a.field(), n, i)));
  Matrix gram(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar tr = Scalar::zero(a.field());
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          if (left[i].at(k, l).is_zero() || left[j].at(l, k).is_zero()) continue;
          tr += left[i].at(k, l) * left[j].at(l, k);
        }
      gram.at(i, j) = tr;
    }
  return kernel_basis(gram);
}

std::vector<Vec> radical_of(const AssocAlgebra& a) {
  if (a.radical_basis()) return *a.radical_basis();
  if (a.field()->characteristic() == 0) return radical_via_trace(a);
  fail(errc::radical_unavailable,
       "no designated radical basis and positive characteristic rules out the trace form");
}

namespace {

// ---- small polynomial arithmetic over Scalar (for minimal polynomials) ----

using SPoly = std::vector<Scalar>;  // low degree first, normalized (trailing nonzero)

SPoly sp_trim(SPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

SPoly sp_mod(SPoly a, const SPoly& b) {
  a = sp_trim(std::move(a));
  while (a.size() >= b.size() && !a.empty()) {
    Scalar q = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - q * b[i];
    a = sp_trim(std::move(a));
  }
  return a;
}

SPoly sp_gcd(SPoly a, SPoly b) {
  a = sp_trim(std::move(a));
  b = sp_trim(std::move(b));
  while (!b.empty()) {
    auto r = sp_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Scalar inv = a.back().inverse();
    for (auto& c : a) c = c * inv;
  }
  return a;
}

SPoly sp_derivative(const SPoly& a) {
  SPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) {
    Scalar c = a[i];
    Scalar k = Scalar::from_int(c.field(), static_cast<long>(i));
    r.push_back(c * k);
  }
  return sp_trim(std::move(r));
}

// Divide a monic polynomial by (t - root); remainder must vanish.
SPoly sp_divide_linear(const SPoly& a, const Scalar& root) {
  SPoly q(a.size() - 1, Scalar::zero(root.field()));
  Scalar carry = Scalar::zero(root.field());
  for (std::size_t i = a.size(); i-- > 1;) {
    carry = (i == a.size() - 1) ? a[i] : a[i] + carry * root;
    q[i - 1] = carry;
  }
  return q;
}

Scalar sp_eval(const SPoly& p, const Scalar& x) {
  Scalar acc = Scalar::zero(x.field());
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Roots of a squarefree monic polynomial within the field. Complete over F_p
// (exhaustive); over Q via the rational-root test; over number fields a
// documented heuristic (small integer sweep plus the rational test when all
// coefficients are rational).
std::vector<Scalar> field_roots(const FieldPtr& f, const SPoly& mu) {
  std::vector<Scalar> roots;
  auto try_candidate = [&](const Scalar& c) {
    if (sp_eval(mu, c).is_zero() && std::find(roots.begin(), roots.end(), c) == roots.end())
      roots.push_back(c);
  };
  switch (f->kind()) {
    case FieldKind::prime:
      for (long r = 0; r < f->modulus(); ++r) try_candidate(Scalar::from_int(f, r));
      break;
    case FieldKind::rationals: {
      std::vector<Rat> qpoly;
      qpoly.reserve(mu.size());
      for (const auto& c : mu) qpoly.push_back(c.rat());
      for (const Rat& r : rational_roots(qpoly)) try_candidate(Scalar::from_rat(f, r));
      break;
    }
    case FieldKind::number_field: {
      bool all_rational = true;
      std::vector<Rat> qpoly;
      for (const auto& c : mu) {
        const auto& cs = c.coeffs();
        for (std::size_t i = 1; i < cs.size(); ++i)
          if (cs[i] != 0) all_rational = false;
        qpoly.push_back(cs[0]);
      }
      if (all_rational)
        for (const Rat& r : rational_roots(qpoly)) try_candidate(Scalar::from_rat(f, r));
      for (long r = -16; r <= 16; ++r) try_candidate(Scalar::from_int(f, r));
      break;
    }
  }
  return roots;
}

// ---- induced algebras: corners, spans, quotients ----

struct Induced {
  AlgebraPtr alg;
  std::vector<Vec> basis;  // ambient coordinates
  RowSpan span;            // of basis

  Vec to_ambient(const Vec& local) const {
    Vec out = vec_zero(basis.front().front().field(), span.width());
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!local[i].is_zero()) out = vec_add(out, vec_scale(basis[i], local[i]));
    return out;
  }
  Vec to_local(const Vec& ambient) const {
    auto coords = span.coordinates(ambient);
    if (!coords) fail(errc::invalid_argument, "vector outside induced subalgebra");
    return *coords;
  }
};

// Unital subalgebra on an explicitly spanned, multiplicatively closed subspace.
// The deterministic echelon rows of the span serve as the basis.
Induced span_subalgebra(const AssocAlgebra& a, const std::vector<Vec>& gens, const Vec& unit,
                        const std::string& origin) {
  RowSpan span(a.field(), a.dim());
  for (const auto& g : gens) span.add(g);
  std::vector<Vec> basis = span.rows();
  const std::size_t n = basis.size();
  std::vector<std::vector<Vec>> sc(n, std::vector<Vec>(n));
  Induced ind{nullptr, basis, span};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec prod = a.multiply(basis[i], basis[j]);
      auto coords = span.coordinates(prod);
      if (!coords) fail(errc::invalid_argument, "subspace not multiplicatively closed");
      sc[i][j] = *coords;
    }
  auto coords_unit = span.coordinates(unit);
  if (!coords_unit) fail(errc::invalid_argument, "unit not inside subalgebra");
  ind.alg = std::make_shared<AssocAlgebra>(a.field(), n, std::move(sc), *coords_unit, origin);
  return ind;
}

// Corner algebra uAu for an idempotent u.
Induced corner_subalgebra(const AssocAlgebra& a, const Vec& u, const std::string& origin) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < a.dim(); ++i)
    gens.push_back(a.multiply(u, a.multiply(vec_unit(a.field(), a.dim(), i), u)));
  return span_subalgebra(a, gens, u, origin);
}

// Quotient of a by a two-sided ideal (given by spanning vectors).
struct QuotientView {
  AlgebraPtr alg;
  RowSpan ideal;
  std::vector<std::size_t> rep_coords;  // ambient coordinates indexing the class basis

  Vec project(const Vec& ambient) const {
    Vec residue = ideal.reduce(ambient);
    Vec out = vec_zero(ambient.front().field(), rep_coords.size());
    for (std::size_t i = 0; i < rep_coords.size(); ++i) out[i] = residue[rep_coords[i]];
    return out;
  }
  Vec lift(const Vec& local) const {
    Vec out = vec_zero(local.front().field(), ideal.width());
    for (std::size_t i = 0; i < rep_coords.size(); ++i) out[rep_coords[i]] = local[i];
    return out;
  }
};

QuotientView quotient_by_ideal(const AssocAlgebra& a, const std::vector<Vec>& ideal_basis,
                               const std::string& origin) {
  RowSpan ideal(a.field(), a.dim());
  for (const auto& v : ideal_basis) ideal.add(v);
  QuotientView qv{nullptr, ideal, {}};
  for (std::size_t j = 0; j < a.dim(); ++j)
    if (std::find(ideal.pivots().begin(), ideal.pivots().end(), j) == ideal.pivots().end())
      qv.rep_coords.push_back(j);
  const std::size_t n = qv.rep_coords.size();
  std::vector<std::vector<Vec>> sc(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      sc[i][j] = qv.project(a.multiply(vec_unit(a.field(), a.dim(), qv.rep_coords[i]),
                                       vec_unit(a.field(), a.dim(), qv.rep_coords[j])));
  qv.alg = std::make_shared<AssocAlgebra>(a.field(), n, std::move(sc), qv.project(a.unit()), origin);
  return qv;
}

SPoly min_poly(const AssocAlgebra& a, const Vec& z) {
  // Least monic mu with mu(z) = 0; powers measured against the unit as t^0.
  std::vector<Vec> powers{a.unit()};
  Vec zp = a.unit();
  for (std::size_t k = 1; k <= a.dim() + 1; ++k) {
    zp = a.multiply(zp, z);
    Matrix m(a.field(), a.dim(), powers.size());
    for (std::size_t j = 0; j < powers.size(); ++j)
      for (std::size_t i = 0; i < a.dim(); ++i) m.at(i, j) = powers[j][i];
    if (auto sol = solve_linear(m, zp)) {
      SPoly mu(k + 1, Scalar::zero(a.field()));
      mu[k] = Scalar::one(a.field());
      for (std::size_t j = 0; j < k; ++j) mu[j] = -sol->particular[j];
      return mu;
    }
    powers.push_back(zp);
  }
  fail(errc::invalid_argument, "minimal polynomial search exceeded dimension bound");
}

// Complete list of primitive orthogonal idempotents of a SEMISIMPLE algebra
// that splits over its field. Deterministic candidate sweep, then seeded
// random small combinations; bounded retries.
//
// With accept_field_corners (used for centers), a corner generated by an
// element whose minimal polynomial is squarefree of full degree with no root
// in the field is accepted as primitive: the corner is a field extension and
// carries no further idempotents. Complete for degree <= 3 via the
// rational-root test; beyond that it shares the documented irreducibility
// heuristic of the field layer.
std::vector<Vec> split_semisimple(const AssocAlgebra& s, std::uint64_t seed,
                                  bool accept_field_corners = false) {
  std::vector<Vec> final_idems;
  std::vector<Vec> work{s.unit()};
  std::mt19937_64 rng(seed ^ 0x5eed5eedULL);
  while (!work.empty()) {
    Vec u = work.back();
    work.pop_back();
    Induced corner = corner_subalgebra(s, u, "corner");
    const std::size_t d = corner.alg->dim();
    if (d == 1) {
      final_idems.push_back(u);
      continue;
    }
    auto attempt = [&](const Vec& zloc) -> bool {
      if (vec_is_zero(zloc)) return false;
      SPoly mu = min_poly(*corner.alg, zloc);
      if (mu.size() < 3) return false;  // degree < 2: scalar element
      if (sp_gcd(mu, sp_derivative(mu)).size() != 1) return false;
      auto roots = field_roots(s.field(), mu);
      if (roots.empty()) return false;
      const Scalar& lambda = roots.front();
      SPoly nu = sp_divide_linear(mu, lambda);
      Scalar denom = sp_eval(nu, lambda);
      if (denom.is_zero()) return false;
      // e = nu(z)/nu(lambda) is the idempotent supported on the lambda part.
      Vec e = vec_zero(s.field(), d);
      Vec zp = corner.alg->unit();
      for (std::size_t i = 0; i < nu.size(); ++i) {
        if (!nu[i].is_zero()) e = vec_add(e, vec_scale(zp, nu[i]));
        if (i + 1 < nu.size()) zp = corner.alg->multiply(zp, zloc);
      }
      Scalar inv = denom.inverse();
      for (auto& c : e) c = c * inv;
      if (corner.alg->multiply(e, e) != e) return false;
      Vec e_amb = corner.to_ambient(e);
      if (vec_is_zero(e_amb) || e_amb == u) return false;
      work.push_back(e_amb);
      work.push_back(vec_sub(u, e_amb));
      return true;
    };
    bool split_done = false;
    for (std::size_t i = 0; i < d && !split_done; ++i)
      split_done = attempt(vec_unit(s.field(), d, i));
    for (int t = 0; t < 160 && !split_done; ++t) {
      Vec z = vec_zero(s.field(), d);
      for (auto& c : z) c = Scalar::from_int(s.field(), static_cast<long>(rng() % 5) - 2);
      split_done = attempt(z);
    }
    if (!split_done && accept_field_corners) {
      // Look for a generator certifying the corner as a field.
      auto is_field_generator = [&](const Vec& zloc) {
        if (vec_is_zero(zloc)) return false;
        SPoly mu = min_poly(*corner.alg, zloc);
        if (mu.size() != d + 1) return false;
        if (sp_gcd(mu, sp_derivative(mu)).size() != 1) return false;
        return field_roots(s.field(), mu).empty();
      };
      bool certified = false;
      for (std::size_t i = 0; i < d && !certified; ++i)
        certified = is_field_generator(vec_unit(s.field(), d, i));
      for (int t = 0; t < 160 && !certified; ++t) {
        Vec z = vec_zero(s.field(), d);
        for (auto& c : z) c = Scalar::from_int(s.field(), static_cast<long>(rng() % 5) - 2);
        certified = is_field_generator(z);
      }
      if (certified) {
        final_idems.push_back(u);
        continue;
      }
    }
    if (!split_done)
      fail(errc::non_split_semisimple_quotient,
           "could not split a " + std::to_string(d) +
               "-dimensional simple summand over " + s.field()->description() + "; extend the field");
  }
  return final_idems;
}

Vec newton_idempotent(const AssocAlgebra& a, Vec f) {
  // e -> 3e^2 - 2e^3 squares the error ideal; terminates for nilpotent error.
  for (unsigned it = 0; it < 64; ++it) {
    Vec f2 = a.multiply(f, f);
    if (f2 == f) return f;
    Vec f3 = a.multiply(f2, f);
    Vec next = vec_sub(vec_add(vec_scale(f2, Scalar::from_int(a.field(), 3)), vec_zero(a.field(), a.dim())),
                       vec_scale(f3, Scalar::from_int(a.field(), 2)));
    f = std::move(next);
  }
  fail(errc::invalid_argument, "idempotent lifting did not converge");
}

// Inverse of u inside the corner algebra eAe with unit e (u = e - n, n nilpotent).
Vec corner_inverse(const AssocAlgebra& a, const Vec& e, const Vec& u) {
  Vec n = vec_sub(e, u);
  Vec acc = e;
  Vec pw = n;
  for (unsigned i = 0; i <= a.dim() + 1 && !vec_is_zero(pw); ++i) {
    acc = vec_add(acc, pw);
    pw = a.multiply(pw, n);
  }
  if (a.multiply(u, acc) != e || a.multiply(acc, u) != e)
    fail(errc::invalid_argument, "corner inverse failed (element not unipotent)");
  return acc;
}

}  // namespace

IdempotentDecomposition lift_idempotents(const AssocAlgebra& a, std::uint64_t seed) {
  auto rad = radical_of(a);
  QuotientView q = quotient_by_ideal(a, rad, "semisimple-quotient");
  std::vector<Vec> prims = split_semisimple(*q.alg, seed);

  // Sort for determinism (split order depends on the work stack).
  std::sort(prims.begin(), prims.end(), [](const Vec& x, const Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == y[i]) continue;
      return x[i].str() < y[i].str();
    }
    return false;
  });

  IdempotentDecomposition out;
  Vec big_e = vec_zero(a.field(), a.dim());
  for (const auto& ebar : prims) {
    Vec f = q.lift(ebar);
    Vec one_minus = vec_sub(a.unit(), big_e);
    f = a.multiply(one_minus, a.multiply(f, one_minus));
    Vec e = newton_idempotent(a, f);
    big_e = vec_add(big_e, e);
    out.idempotents.push_back(std::move(e));
  }
  if (big_e != a.unit()) fail(errc::invalid_argument, "lifted idempotents do not sum to the unit");
  for (std::size_t i = 0; i < out.idempotents.size(); ++i)
    for (std::size_t j = 0; j < out.idempotents.size(); ++j) {
      Vec p = a.multiply(out.idempotents[i], out.idempotents[j]);
      Vec expect = i == j ? out.idempotents[i] : vec_zero(a.field(), a.dim());
      if (p != expect) fail(errc::invalid_argument, "lifted idempotents are not orthogonal");
    }

  // Iso classes: in the semisimple quotient, ebar_i and ebar_j generate
  // isomorphic projectives iff ebar_i S ebar_j != 0.
  const std::size_t n = out.idempotents.size();
  std::vector<Vec> bars;
  bars.reserve(n);
  for (const auto& e : out.idempotents) bars.push_back(q.project(e));
  auto linked = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < q.alg->dim(); ++k) {
      Vec m = q.alg->multiply(bars[i], q.alg->multiply(vec_unit(a.field(), q.alg->dim(), k), bars[j]));
      if (!vec_is_zero(m)) return true;
    }
    return false;
  };
  std::vector<long> cls(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    long id = static_cast<long>(out.iso_classes.size());
    cls[i] = id;
    out.iso_classes.push_back({i});
    for (std::size_t j = i + 1; j < n; ++j)
      if (cls[j] < 0 && linked(i, j)) {
        cls[j] = id;
        out.iso_classes.back().push_back(j);
      }
  }

  // Certificates x in e_rep A e_j, y in e_j A e_rep with xy = e_rep, yx = e_j.
  for (const auto& klass : out.iso_classes) {
    std::size_t rep = klass.front();
    for (std::size_t idx = 1; idx < klass.size(); ++idx) {
      std::size_t j = klass[idx];
      const Vec& ei = out.idempotents[rep];
      const Vec& ej = out.idempotents[j];
      // In the quotient pick xbar (dim ebar_i S ebar_j = 1 in the split case);
      // solve ybar linearly, then lift and correct by a unipotent inverse.
      Vec xbar;
      for (std::size_t k = 0; k < q.alg->dim() && xbar.empty(); ++k) {
        Vec m = q.alg->multiply(bars[rep], q.alg->multiply(vec_unit(a.field(), q.alg->dim(), k), bars[j]));
        if (!vec_is_zero(m)) xbar = m;
      }
      // Solve for ybar with xbar*ybar = ebar_rep and ybar*xbar = ebar_j.
      const std::size_t qd = q.alg->dim();
      Matrix lhs(a.field(), 2 * qd, qd);
      Matrix lx = q.alg->left_mult(xbar);
      Matrix rx = q.alg->right_mult(xbar);
      for (std::size_t r = 0; r < qd; ++r)
        for (std::size_t c = 0; c < qd; ++c) {
          lhs.at(r, c) = lx.at(r, c);
          lhs.at(qd + r, c) = rx.at(r, c);
        }
      Vec rhs = bars[rep];
      rhs.insert(rhs.end(), bars[j].begin(), bars[j].end());
      auto sol = solve_linear(lhs, rhs);
      if (!sol) fail(errc::invalid_argument, "intertwiner solve failed in semisimple quotient");
      Vec ybar = sol->particular;
      Vec x = a.multiply(ei, a.multiply(q.lift(xbar), ej));
      Vec y = a.multiply(ej, a.multiply(q.lift(ybar), ei));
      Vec u = a.multiply(x, y);  // = e_i - nilpotent
      Vec v = corner_inverse(a, ei, u);
      y = a.multiply(y, v);
      if (a.multiply(x, y) != ei) fail(errc::invalid_argument, "intertwiner certificate xy != e_i");
      Vec yx = a.multiply(y, x);
      if (yx != ej) fail(errc::invalid_argument, "intertwiner certificate yx != e_j");
      out.certificates.push_back(Intertwiner{j, rep, std::move(x), std::move(y)});
    }
  }
  return out;
}

std::vector<Vec> center_basis(const AssocAlgebra& a) {
  const std::size_t n = a.dim();
  Matrix stacked(a.field(), n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix diff = a.left_mult(vec_unit(a.field(), n, i)) - a.right_mult(vec_unit(a.field(), n, i));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stacked.at(i * n + r, c) = diff.at(r, c);
  }
  return kernel_basis(stacked);
}

BlockDecomposition block_decomposition(const AssocAlgebra& a, std::uint64_t seed) {
  auto z_basis = center_basis(a);
  Induced center = span_subalgebra(a, z_basis, a.unit(), "center");

  // rad(Z) = Z ∩ rad(A): central nilpotents.
  auto rad = radical_of(a);
  RowSpan rad_span(a.field(), a.dim());
  for (const auto& r : rad) rad_span.add(r);
  std::vector<Vec> z_rad_local;
  {
    // Solve for combinations of the center basis lying in rad.
    const std::size_t zn = center.alg->dim();
    Matrix m(a.field(), a.dim(), zn + rad.size());
    for (std::size_t j = 0; j < zn; ++j)
      for (std::size_t i = 0; i < a.dim(); ++i) m.at(i, j) = center.basis[j][i];
    for (std::size_t j = 0; j < rad.size(); ++j)
      for (std::size_t i = 0; i < a.dim(); ++i) m.at(i, zn + j) = rad[j][i];
    for (const auto& k : kernel_basis(m)) {
      Vec zloc(k.begin(), k.begin() + static_cast<long>(zn));
      if (!vec_is_zero(zloc)) z_rad_local.push_back(zloc);
    }
  }

  QuotientView zbar = quotient_by_ideal(*center.alg, z_rad_local, "center-semisimple");
  std::vector<Vec> prims;
  try {
    prims = split_semisimple(*zbar.alg, seed, /*accept_field_corners=*/true);
  } catch (const Error& e) {
    if (e.code() == errc::non_split_semisimple_quotient)
      fail(errc::center_not_split, "the center does not split over " + a.field()->description());
    throw;
  }
  std::sort(prims.begin(), prims.end(), [](const Vec& x, const Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == y[i]) continue;
      return x[i].str() < y[i].str();
    }
    return false;
  });

  BlockDecomposition out;
  Vec big_e_local = vec_zero(a.field(), center.alg->dim());
  for (const auto& pbar : prims) {
    Vec f = zbar.lift(pbar);
    Vec one_minus = vec_sub(center.alg->unit(), big_e_local);
    f = center.alg->multiply(one_minus, center.alg->multiply(f, one_minus));
    Vec e_local = newton_idempotent(*center.alg, f);
    big_e_local = vec_add(big_e_local, e_local);
    out.central_idempotents.push_back(center.to_ambient(e_local));
  }
  if (center.to_ambient(big_e_local) != a.unit())
    fail(errc::invalid_argument, "central idempotents do not sum to 1");

  for (const auto& z : out.central_idempotents) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < a.dim(); ++i)
      gens.push_back(a.multiply(vec_unit(a.field(), a.dim(), i), z));
    Induced blk = span_subalgebra(a, gens, z, "block");
    auto alg = std::const_pointer_cast<AssocAlgebra>(blk.alg);
    if (a.radical_basis()) {
      std::vector<Vec> brad;
      RowSpan seen(a.field(), blk.alg->dim());
      for (const auto& r : *a.radical_basis()) {
        Vec v = blk.to_local(a.multiply(r, z));
        if (seen.add(v)) brad.push_back(v);
      }
      alg->set_radical_basis(std::move(brad));
    }
    out.blocks.push_back(alg);
    out.block_bases.push_back(blk.basis);
  }
  return out;
}

BasicReduction basic_reduction(const AssocAlgebra& a, std::uint64_t seed) {
  BasicReduction out;
  out.source_idempotents = lift_idempotents(a, seed);
  Vec e = vec_zero(a.field(), a.dim());
  for (const auto& klass : out.source_idempotents.iso_classes) {
    out.chosen.push_back(klass.front());
    out.multiplicities.push_back(klass.size());
    e = vec_add(e, out.source_idempotents.idempotents[klass.front()]);
  }
  Induced corner = corner_subalgebra(a, e, "corner");
  auto alg = std::const_pointer_cast<AssocAlgebra>(corner.alg);
  if (a.radical_basis() || a.field()->characteristic() == 0) {
    std::vector<Vec> crad;
    RowSpan seen(a.field(), corner.alg->dim());
    for (const auto& r : radical_of(a)) {
      Vec v = corner.to_local(a.multiply(e, a.multiply(r, e)));
      if (seen.add(v)) crad.push_back(v);
    }
    alg->set_radical_basis(std::move(crad));
  }
  out.basic = alg;
  out.corner_basis = corner.basis;
  return out;
}

// --- modules ---

Matrix ModuleRep::act_vec(const Vec& a) const {
  Matrix m(algebra->field(), dim, dim);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) m.at(r, c) += action[i].at(r, c) * a[i];
  }
  return m;
}

void ModuleRep::validate() const {
  const auto& A = *algebra;
  Matrix unit_m = act_vec(A.unit());
  if (!(unit_m == Matrix::identity(A.field(), dim)))
    fail(errc::invalid_argument, "module action is not unital");
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j) {
      Matrix lhs = act_vec(A.product(i, j));
      Matrix rhs = side == Side::left ? action[i] * action[j] : action[j] * action[i];
      if (!(lhs == rhs))
        fail(errc::invalid_argument, "module action violates the (anti)homomorphism law at (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

ModuleRep regular_module(const AlgebraPtr& a, Side side) {
  ModuleRep m{a, side, a->dim(), {}};
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Vec b = vec_unit(a->field(), a->dim(), i);
    m.action.push_back(side == Side::left ? a->left_mult(b) : a->right_mult(b));
  }
  return m;
}

ModuleRep simple_module(const AlgebraPtr& a, int vertex, Side side) {
  if (!a->presented()) fail(errc::invalid_argument, "simple_module requires a presented algebra");
  ModuleRep m{a, side, 1, {}};
  std::size_t ev = a->presented()->vertex_idempotent[static_cast<std::size_t>(vertex)];
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Matrix mat(a->field(), 1, 1);
    if (i == ev) mat.at(0, 0) = Scalar::one(a->field());
    m.action.push_back(std::move(mat));
  }
  return m;
}

ModuleRep projective_module(const AlgebraPtr& a, int vertex, Side side) {
  if (!a->presented()) fail(errc::invalid_argument, "projective_module requires a presented algebra");
  auto idx = side == Side::left ? a->basis_with_source(vertex) : a->basis_with_target(vertex);
  ModuleRep m{a, side, idx.size(), {}};
  for (std::size_t bi = 0; bi < a->dim(); ++bi) {
    Matrix mat(a->field(), idx.size(), idx.size());
    Vec b = vec_unit(a->field(), a->dim(), bi);
    for (std::size_t c = 0; c < idx.size(); ++c) {
      Vec x = vec_unit(a->field(), a->dim(), idx[c]);
      Vec prod = side == Side::left ? a->multiply(b, x) : a->multiply(x, b);
      for (std::size_t r = 0; r < idx.size(); ++r) mat.at(r, c) = prod[idx[r]];
    }
    m.action.push_back(std::move(mat));
  }
  return m;
}

ModuleRep submodule(const ModuleRep& m, const std::vector<Vec>& subspace_basis) {
  RowSpan span(m.algebra->field(), m.dim);
  for (const auto& v : subspace_basis) span.add(v);
  std::vector<Vec> basis = span.rows();
  ModuleRep out{m.algebra, m.side, basis.size(), {}};
  for (std::size_t bi = 0; bi < m.algebra->dim(); ++bi) {
    Matrix mat(m.algebra->field(), basis.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
      Vec img = m.action[bi].apply(basis[c]);
      auto coords = span.coordinates(img);
      if (!coords) fail(errc::invalid_argument, "subspace is not action-stable");
      for (std::size_t r = 0; r < basis.size(); ++r) mat.at(r, c) = (*coords)[r];
    }
    out.action.push_back(std::move(mat));
  }
  return out;
}

ProjectivityReport is_projective(const ModuleRep& m, const IdempotentDecomposition& idem) {
  const auto& A = *m.algebra;
  auto rad = radical_of(A);
  ProjectivityReport rep{false, {}, {}};
  std::size_t cover_dim = 0;
  for (const auto& e : idem.idempotents) {
    Matrix me = m.act_vec(e);
    // Image of m under e (on the acting side).
    RowSpan top(A.field(), m.dim);
    for (std::size_t c = 0; c < m.dim; ++c) top.add(me.apply(vec_unit(A.field(), m.dim, c)));
    std::size_t dim_me = top.rank();
    // m*rad*e (right) or e*rad*m (left).
    RowSpan lower(A.field(), m.dim);
    for (const auto& r : rad) {
      Vec re = m.side == Side::right ? A.multiply(r, e) : A.multiply(e, r);
      Matrix mre = m.act_vec(re);
      for (std::size_t c = 0; c < m.dim; ++c) lower.add(mre.apply(vec_unit(A.field(), m.dim, c)));
    }
    std::size_t mult = dim_me - lower.rank();
    rep.top_multiplicities.push_back(mult);
    // dim of the indecomposable projective at e: e A (right) or A e (left).
    Matrix pm = m.side == Side::right ? A.left_mult(e) : A.right_mult(e);
    cover_dim += mult * pm.rank();
  }
  rep.projective = cover_dim == m.dim;
  if (rep.projective) rep.multiplicities = rep.top_multiplicities;
  return rep;
}

ProjectivityReport is_projective(const ModuleRep& m) {
  return is_projective(m, lift_idempotents(*m.algebra));
}

AlgebraPtr extend_scalars_algebra(const AlgebraPtr& a, const FieldPtr& ext) {
  if (a->field()->kind() != FieldKind::rationals)
    fail(errc::invalid_argument, "scalar extension implemented over Q only");
  auto coerce = [&](const Scalar& s) { return Scalar::from_rat(ext, s.rat()); };
  auto coerce_vec = [&](const Vec& v) {
    Vec out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(coerce(s));
    return out;
  };
  std::vector<std::vector<Vec>> sc(a->dim(), std::vector<Vec>(a->dim()));
  for (std::size_t i = 0; i < a->dim(); ++i)
    for (std::size_t j = 0; j < a->dim(); ++j) sc[i][j] = coerce_vec(a->product(i, j));
  auto out = std::make_shared<AssocAlgebra>(ext, a->dim(), std::move(sc), coerce_vec(a->unit()), "coercion");
  if (a->radical_basis()) {
    std::vector<Vec> rad;
    for (const auto& r : *a->radical_basis()) rad.push_back(coerce_vec(r));
    out->set_radical_basis(std::move(rad));
  }
  if (a->presented()) {
    PresentedInfo info = *a->presented();
    info.presentation.field = ext;
    for (auto& rel : info.presentation.relations)
      for (auto& [c, p] : rel.terms) c = coerce(c);
    out->set_presented(std::move(info));
  }
  return out;
}

namespace {

std::string arrow_label_for(std::size_t index) {
  // a, b, ..., z, a1, b1, ...
  std::string base(1, static_cast<char>('a' + index % 26));
  if (index >= 26) base += std::to_string(index / 26);
  return base;
}

struct GabrielPath {
  Path path;     // in the new quiver
  Vec image;     // its evaluation in the algebra
};

}  // namespace

Presentation gabriel_quiver(const AlgebraPtr& basic, unsigned degree_cap, std::uint64_t seed) {
  const AssocAlgebra& A = *basic;
  auto idem = lift_idempotents(A, seed);
  for (const auto& klass : idem.iso_classes)
    if (klass.size() > 1)
      fail(errc::invalid_argument, "gabriel_quiver requires a basic algebra (repeated projectives found)");
  const std::size_t n = idem.idempotents.size();
  const FieldPtr& F = A.field();

  auto rad = radical_of(A);
  std::vector<Vec> rad2;
  {
    RowSpan span(F, A.dim());
    for (const auto& r : rad)
      for (const auto& s : rad) {
        Vec p = A.multiply(r, s);
        if (span.add(p)) rad2.push_back(p);
      }
  }

  // Arrows i -> j are radical elements spanning e_j (rad/rad^2) e_i.
  Presentation pres;
  pres.field = F;
  for (std::size_t v = 0; v < n; ++v) pres.quiver.vertices.push_back(std::to_string(v + 1));
  std::vector<Vec> arrow_image;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      RowSpan seen(F, A.dim());
      for (const auto& r2 : rad2)
        seen.add(A.multiply(idem.idempotents[j], A.multiply(r2, idem.idempotents[i])));
      for (const auto& r : rad) {
        Vec v = A.multiply(idem.idempotents[j], A.multiply(r, idem.idempotents[i]));
        if (seen.add(v)) {
          pres.quiver.arrows.push_back(
              Arrow{arrow_label_for(arrow_image.size()), static_cast<int>(i), static_cast<int>(j)});
          arrow_image.push_back(v);
        }
      }
    }

  unsigned L = degree_cap ? degree_cap : A.radical_length();
  pres.nilpotency_cap = std::max(32u, L + 1);

  // Paths of the new quiver by length, with their images in A.
  std::vector<std::vector<GabrielPath>> paths(L + 1);
  for (std::size_t v = 0; v < n; ++v)
    paths[0].push_back({Path::trivial(static_cast<int>(v)), idem.idempotents[v]});
  for (unsigned l = 1; l <= L; ++l) {
    for (const auto& gp : paths[l - 1]) {
      int tail = gp.path.target(pres.quiver);
      for (std::size_t ai = 0; ai < pres.quiver.arrows.size(); ++ai) {
        if (pres.quiver.arrows[ai].source != tail) continue;
        GabrielPath np;
        np.path = gp.path;
        if (np.path.is_trivial()) np.path.base_vertex = pres.quiver.arrows[ai].source;
        np.path.arrows.push_back(static_cast<int>(ai));
        np.image = gp.path.is_trivial() ? arrow_image[ai] : A.multiply(arrow_image[ai], gp.image);
        paths[l].push_back(std::move(np));
      }
    }
  }

  // rad^k spans for the degreewise kernel computation.
  std::vector<RowSpan> radpow;
  radpow.reserve(L + 2);
  for (unsigned k = 0; k <= L + 1; ++k) radpow.emplace_back(F, A.dim());
  {
    std::vector<Vec> cur = rad;
    for (unsigned k = 1; k <= L + 1; ++k) {
      std::vector<Vec> kept;
      for (const auto& v : cur)
        if (radpow[k].add(v)) kept.push_back(v);
      std::vector<Vec> next;
      for (const auto& x : kept)
        for (const auto& r : rad) next.push_back(A.multiply(x, r));
      cur = std::move(next);
      if (kept.empty()) break;
    }
  }

  struct FoundRelation {
    int source, target;
    unsigned lead_degree;
    std::vector<std::pair<Scalar, Path>> lead_terms;   // degree = lead_degree
    std::vector<std::pair<Scalar, Path>> tail_terms;   // higher degrees
  };
  std::vector<FoundRelation> found;

  for (unsigned l = 2; l <= L; ++l) {
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> bucket;
        for (std::size_t pi = 0; pi < paths[l].size(); ++pi)
          if (paths[l][pi].path.source(pres.quiver) == static_cast<int>(s) &&
              paths[l][pi].path.target(pres.quiver) == static_cast<int>(t))
            bucket.push_back(pi);
        if (bucket.empty()) continue;

        // Leading parts of already-found relations in this bucket filter out
        // kernel elements the ideal already generates.
        RowSpan lead_span(F, bucket.size());
        for (const auto& fr : found) {
          if (fr.lead_degree > l) continue;
          unsigned rest = l - fr.lead_degree;
          for (unsigned lv = 0; lv <= rest; ++lv) {
            unsigned lu = rest - lv;
            for (const auto& vp : paths[lv]) {
              if (vp.path.target(pres.quiver) != fr.source) continue;
              for (const auto& up : paths[lu]) {
                if (up.path.source(pres.quiver) != fr.target ||
                    vp.path.source(pres.quiver) != static_cast<int>(s) ||
                    up.path.target(pres.quiver) != static_cast<int>(t))
                  continue;
                Vec row = vec_zero(F, bucket.size());
                for (const auto& [c, p] : fr.lead_terms) {
                  Path whole;
                  whole.base_vertex = vp.path.is_trivial() ? vp.path.base_vertex : vp.path.source(pres.quiver);
                  whole.arrows = vp.path.arrows;
                  whole.arrows.insert(whole.arrows.end(), p.arrows.begin(), p.arrows.end());
                  whole.arrows.insert(whole.arrows.end(), up.path.arrows.begin(), up.path.arrows.end());
                  for (std::size_t bi = 0; bi < bucket.size(); ++bi)
                    if (paths[l][bucket[bi]].path.arrows == whole.arrows) row[bi] += c;
                }
                lead_span.add(std::move(row));
              }
            }
          }
        }

        // Kernel of path space -> A / rad^{l+1}.
        Matrix m(F, A.dim(), bucket.size());
        for (std::size_t c = 0; c < bucket.size(); ++c) {
          Vec img = radpow[l + 1].rank() ? radpow[l + 1].reduce(paths[l][bucket[c]].image)
                                         : paths[l][bucket[c]].image;
          for (std::size_t r = 0; r < A.dim(); ++r) m.at(r, c) = img[r];
        }
        for (const auto& k : kernel_basis(m)) {
          if (lead_span.contains(k)) continue;
          FoundRelation fr;
          fr.source = static_cast<int>(s);
          fr.target = static_cast<int>(t);
          fr.lead_degree = l;
          Vec img = vec_zero(F, A.dim());
          for (std::size_t bi = 0; bi < bucket.size(); ++bi) {
            if (k[bi].is_zero()) continue;
            fr.lead_terms.emplace_back(k[bi], paths[l][bucket[bi]].path);
            img = vec_add(img, vec_scale(paths[l][bucket[bi]].image, k[bi]));
          }
          if (!vec_is_zero(img)) {
            // Correct by parallel longer paths so the relation maps to zero.
            std::vector<std::size_t> longer_deg, longer_idx;
            std::vector<Vec> cols;
            for (unsigned l2 = l + 1; l2 <= L; ++l2)
              for (std::size_t pi = 0; pi < paths[l2].size(); ++pi)
                if (paths[l2][pi].path.source(pres.quiver) == static_cast<int>(s) &&
                    paths[l2][pi].path.target(pres.quiver) == static_cast<int>(t)) {
                  longer_deg.push_back(l2);
                  longer_idx.push_back(pi);
                  cols.push_back(paths[l2][pi].image);
                }
            Matrix mm(F, A.dim(), cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c)
              for (std::size_t r = 0; r < A.dim(); ++r) mm.at(r, c) = cols[c][r];
            auto sol = solve_linear(mm, img);
            if (!sol)
              fail(errc::cap_too_small,
                   "kernel correction not expressible within degree cap " + std::to_string(L));
            for (std::size_t c = 0; c < cols.size(); ++c)
              if (!sol->particular[c].is_zero())
                fr.tail_terms.emplace_back(-sol->particular[c], paths[longer_deg[c]][longer_idx[c]].path);
          }
          lead_span.add(k);
          found.push_back(std::move(fr));
        }
      }
  }

  for (const auto& fr : found) {
    Relation rel;
    for (const auto& [c, p] : fr.lead_terms) rel.terms.emplace_back(c, p);
    for (const auto& [c, p] : fr.tail_terms) rel.terms.emplace_back(c, p);
    // Normalize: leading coefficient 1.
    Scalar inv = rel.terms.front().first.inverse();
    for (auto& [c, p] : rel.terms) c = c * inv;
    pres.relations.push_back(std::move(rel));
  }

  // Roundtrip certificate: same dimension, and the vertex/arrow images span A
  // (an equal-dimension surjection is an isomorphism).
  auto round = path_basis_algebra(pres);
  if (round->dim() != A.dim())
    fail(errc::cap_too_small, "recovered presentation has dimension " + std::to_string(round->dim()) +
                                  " != " + std::to_string(A.dim()) + "; raise the degree cap");
  {
    RowSpan span(F, A.dim());
    std::size_t rank = 0;
    for (unsigned l = 0; l <= L; ++l)
      for (const auto& gp : paths[l])
        if (span.add(gp.image)) ++rank;
    if (rank != A.dim())
      fail(errc::cap_too_small, "vertex/arrow images do not span the algebra");
  }
  return pres;
}

std::vector<std::vector<std::size_t>> arrow_multiplicity_matrix(const Presentation& p) {
  std::vector<std::vector<std::size_t>> m(p.quiver.vertices.size(),
                                          std::vector<std::size_t>(p.quiver.vertices.size(), 0));
  for (const auto& a : p.quiver.arrows) ++m[static_cast<std::size_t>(a.source)][static_cast<std::size_t>(a.target)];
  return m;
}

}  // namespace quiverkit
