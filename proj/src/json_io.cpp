#include "quiverkit/json_io.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace quiverkit {

json scalar_to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const FieldPtr& f, const json& j) {
  if (j.is_number_integer()) return Scalar::from_int(f, j.get<long>());
  if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
  if (j.is_array()) {
    std::vector<Rat> coeffs;
    for (const auto& c : j) coeffs.emplace_back(c.get<std::string>());
    return Scalar::from_coeffs(f, std::move(coeffs));
  }
  fail(errc::malformed_descriptor, "scalar literal must be an integer, string, or coefficient array");
}

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json vec_to_json(const Vec& v) {
  ordered_json out = ordered_json::array();
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

ordered_json presentation_to_json(const Presentation& p) {
  ordered_json out;
  out["field"] = p.field->description();
  out["vertices"] = p.quiver.vertices;
  ordered_json arrows = ordered_json::array();
  for (const auto& a : p.quiver.arrows) {
    ordered_json ja;
    ja["label"] = a.label;
    ja["source"] = p.quiver.vertices[static_cast<std::size_t>(a.source)];
    ja["target"] = p.quiver.vertices[static_cast<std::size_t>(a.target)];
    arrows.push_back(std::move(ja));
  }
  out["arrows"] = std::move(arrows);
  ordered_json rels = ordered_json::array();
  for (const auto& r : p.relations) rels.push_back(r.str(p.quiver));
  out["relations"] = std::move(rels);
  out["nilpotencyCap"] = p.nilpotency_cap;
  return out;
}

namespace {

ordered_json cycle_to_json(const Presentation& p, const CycleInfo& c) {
  ordered_json out;
  out["betti"] = c.betti;
  ordered_json vertices = ordered_json::array();
  for (int v : c.vertices) vertices.push_back(p.quiver.vertices[static_cast<std::size_t>(v)]);
  out["componentVertices"] = std::move(vertices);
  if (c.betti == 1) {
    ordered_json cyc = ordered_json::array();
    for (const auto& ca : c.cycle) {
      ordered_json ja;
      ja["arrow"] = p.quiver.arrows[static_cast<std::size_t>(ca.arrow)].label;
      ja["orientation"] = ca.with_traversal ? "with" : "against";
      cyc.push_back(std::move(ja));
    }
    out["cycle"] = std::move(cyc);
  }
  return out;
}

}  // namespace

ordered_json classification_to_json(const Classification& c) {
  ordered_json out;
  out["combined"] = status_name(c.combined);
  ordered_json comps = ordered_json::array();
  for (const auto& v : c.components) {
    ordered_json jc;
    jc["status"] = status_name(v.status);
    jc["reason"] = reason_name(v.reason);
    jc["verdict"] = v.describe();
    if (v.dynkin) jc["dynkinType"] = v.dynkin->str();
    if (v.clock) {
      jc["clockwise"] = v.clock->clockwise;
      jc["counterclockwise"] = v.clock->counterclockwise;
      jc["clockHolds"] = v.clock->holds;
      jc["relationsOffCycle"] = v.clock->off_cycle;
    }
    if (!v.gentle_violations.empty()) jc["gentleViolations"] = v.gentle_violations;
    jc["evidence"] = cycle_to_json(v.component, v.cycle);
    jc["component"] = presentation_to_json(v.component);
    comps.push_back(std::move(jc));
  }
  out["components"] = std::move(comps);
  return out;
}

AlgebraPtr algebra_from_json(const json& j) {
  FieldPtr f = FieldSpec::parse(j.at("field").get<std::string>());
  std::size_t n = j.at("dimension").get<std::size_t>();
  const auto& sc_json = j.at("structureConstants");
  if (sc_json.size() != n) fail(errc::dimension_mismatch, "structureConstants must have `dimension` rows");
  std::vector<std::vector<Vec>> sc(n, std::vector<Vec>(n, vec_zero(f, n)));
  for (std::size_t i = 0; i < n; ++i) {
    if (sc_json[i].size() != n) fail(errc::dimension_mismatch, "structureConstants row width mismatch");
    for (std::size_t k = 0; k < n; ++k) {
      if (sc_json[i][k].size() != n) fail(errc::dimension_mismatch, "structureConstants entry width mismatch");
      for (std::size_t t = 0; t < n; ++t) sc[i][k][t] = scalar_from_json(f, sc_json[i][k][t]);
    }
  }
  Vec unit = vec_zero(f, n);
  for (std::size_t t = 0; t < n; ++t) unit[t] = scalar_from_json(f, j.at("unit")[t]);
  auto a = std::make_shared<AssocAlgebra>(f, n, std::move(sc), std::move(unit), "manual");
  if (j.contains("radicalBasis")) {
    std::vector<Vec> rad;
    for (const auto& row : j["radicalBasis"]) {
      Vec v = vec_zero(f, n);
      for (std::size_t t = 0; t < n; ++t) v[t] = scalar_from_json(f, row[t]);
      rad.push_back(std::move(v));
    }
    a->set_radical_basis(std::move(rad));
  }
  a->validate();
  return a;
}

ordered_json algebra_to_json(const AssocAlgebra& a) {
  ordered_json out;
  out["field"] = a.field()->description();
  out["dimension"] = a.dim();
  out["unit"] = vec_to_json(a.unit());
  ordered_json sc = ordered_json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < a.dim(); ++k) row.push_back(vec_to_json(a.product(i, k)));
    sc.push_back(std::move(row));
  }
  out["structureConstants"] = std::move(sc);
  if (a.radical_basis()) {
    ordered_json rad = ordered_json::array();
    for (const auto& r : *a.radical_basis()) rad.push_back(vec_to_json(r));
    out["radicalBasis"] = std::move(rad);
  }
  out["origin"] = a.origin();
  return out;
}

GroupAction group_action_from_json(const AlgebraPtr& a, const json& j) {
  GroupAction g;
  for (const auto& e : j.at("elements")) g.elements.push_back(e.get<std::string>());
  auto index_of = [&](const std::string& label) -> std::size_t {
    for (std::size_t i = 0; i < g.elements.size(); ++i)
      if (g.elements[i] == label) return i;
    fail(errc::invalid_argument, "unknown group element '" + label + "' in table");
  };
  for (const auto& row : j.at("table")) {
    std::vector<std::size_t> r;
    for (const auto& cell : row) r.push_back(index_of(cell.get<std::string>()));
    g.table.push_back(std::move(r));
  }
  // Identity: the element whose row and column act trivially.
  bool found_identity = false;
  for (std::size_t e = 0; e < g.elements.size() && !found_identity; ++e) {
    bool neutral = true;
    for (std::size_t i = 0; i < g.elements.size(); ++i)
      if (g.table[e][i] != i || g.table[i][e] != i) neutral = false;
    if (neutral) {
      g.identity = e;
      found_identity = true;
    }
  }
  if (!found_identity) fail(errc::invalid_argument, "group table has no identity element");

  const auto& action = j.at("action");
  for (std::size_t e = 0; e < g.elements.size(); ++e) {
    if (e == g.identity && !action.contains(g.elements[e])) {
      g.matrices.push_back(Matrix::identity(a->field(), a->dim()));
      continue;
    }
    if (!action.contains(g.elements[e]))
      fail(errc::invalid_argument, "missing action entry for group element '" + g.elements[e] + "'");
    const auto& spec = action.at(g.elements[e]);
    if (spec.contains("matrix")) {
      Matrix m(a->field(), a->dim(), a->dim());
      const auto& rows = spec["matrix"];
      for (std::size_t r = 0; r < a->dim(); ++r)
        for (std::size_t c = 0; c < a->dim(); ++c) m.at(r, c) = scalar_from_json(a->field(), rows[r][c]);
      g.matrices.push_back(std::move(m));
    } else {
      if (!a->presented())
        fail(errc::invalid_argument, "permutation actions require a presentation-derived algebra");
      const auto& q = a->presented()->presentation.quiver;
      std::vector<int> vperm(q.vertices.size()), aperm(q.arrows.size());
      for (std::size_t v = 0; v < q.vertices.size(); ++v) vperm[v] = static_cast<int>(v);
      for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) aperm[ai] = static_cast<int>(ai);
      if (spec.contains("vertices"))
        for (const auto& [from, to] : spec["vertices"].items()) {
          int fi = q.vertex_index(from), ti = q.vertex_index(to.get<std::string>());
          if (fi < 0 || ti < 0) fail(errc::unknown_vertex, "in group action vertex permutation");
          vperm[static_cast<std::size_t>(fi)] = ti;
        }
      if (spec.contains("arrows"))
        for (const auto& [from, to] : spec["arrows"].items()) {
          int fi = q.arrow_index(from), ti = q.arrow_index(to.get<std::string>());
          if (fi < 0 || ti < 0) fail(errc::invalid_argument, "unknown arrow in group action permutation");
          aperm[static_cast<std::size_t>(fi)] = ti;
        }
      g.matrices.push_back(permutation_action_matrix(a, vperm, aperm));
    }
  }
  return g;
}

namespace {

// "b*a" or "e_<vertex>" resolved to an algebra element (product of arrow classes).
Vec path_string_to_element(const AlgebraPtr& a, const std::string& s) {
  const auto& info = *a->presented();
  const Quiver& q = info.presentation.quiver;
  if (s.rfind("e_", 0) == 0) {
    int v = q.vertex_index(s.substr(2));
    if (v < 0) fail(errc::unknown_vertex, "'" + s.substr(2) + "' in path literal");
    return vec_unit(a->field(), a->dim(), info.vertex_idempotent[static_cast<std::size_t>(v)]);
  }
  std::vector<std::string> labels;
  std::string cur;
  for (char ch : s) {
    if (ch == '*') {
      labels.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  labels.push_back(cur);
  // Written right-to-left: the last label is traversed first.
  Vec out;
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
    int ai = q.arrow_index(*it);
    if (ai < 0) fail(errc::syntax_error, "unknown arrow '" + *it + "' in path literal");
    std::size_t basis_idx = a->dim();
    for (std::size_t bi = 0; bi < a->dim(); ++bi)
      if (info.basis_paths[bi].length() == 1 && info.basis_paths[bi].arrows[0] == ai) basis_idx = bi;
    Vec arrow_class = vec_unit(a->field(), a->dim(), basis_idx);
    out = out.empty() ? arrow_class : a->multiply(arrow_class, out);
  }
  return out;
}

}  // namespace

ordered_json complex_to_json(const ProjComplex& c) {
  const auto& info = *c.algebra->presented();
  const Quiver& q = info.presentation.quiver;
  ordered_json out;
  out["lo"] = c.lo;
  ordered_json terms = ordered_json::array();
  for (const auto& t : c.terms) {
    ordered_json degree = ordered_json::array();
    for (int v : t) degree.push_back(q.vertices[static_cast<std::size_t>(v)]);
    terms.push_back(std::move(degree));
  }
  out["terms"] = std::move(terms);
  ordered_json diffs = ordered_json::array();
  for (const auto& d : c.diffs) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : d) {
      ordered_json cols = ordered_json::array();
      for (const auto& e : row) {
        ordered_json entry = ordered_json::array();
        for (std::size_t bi = 0; bi < e.size(); ++bi) {
          if (e[bi].is_zero()) continue;
          ordered_json term;
          term["path"] = info.basis_paths[bi].str(q);
          term["coeff"] = e[bi].str();
          entry.push_back(std::move(term));
        }
        cols.push_back(std::move(entry));
      }
      rows.push_back(std::move(cols));
    }
    diffs.push_back(std::move(rows));
  }
  out["diffs"] = std::move(diffs);
  return out;
}

ProjComplex complex_from_json(const AlgebraPtr& a, const json& j) {
  const auto& info = *a->presented();
  const Quiver& q = info.presentation.quiver;
  ProjComplex c{a, j.at("lo").get<int>(), {}, {}};
  for (const auto& degree : j.at("terms")) {
    std::vector<int> t;
    for (const auto& label : degree) {
      int v = q.vertex_index(label.get<std::string>());
      if (v < 0) fail(errc::unknown_vertex, "'" + label.get<std::string>() + "' in complex terms");
      t.push_back(v);
    }
    c.terms.push_back(std::move(t));
  }
  if (j.contains("diffs"))
    for (const auto& d : j["diffs"]) {
      std::vector<std::vector<Vec>> rows;
      for (const auto& row : d) {
        std::vector<Vec> cols;
        for (const auto& entry : row) {
          Vec e = vec_zero(a->field(), a->dim());
          for (const auto& term : entry) {
            Vec elem = path_string_to_element(a, term.at("path").get<std::string>());
            e = vec_add(e, vec_scale(elem, scalar_from_json(a->field(), term.at("coeff"))));
          }
          cols.push_back(std::move(e));
        }
        rows.push_back(std::move(cols));
      }
      c.diffs.push_back(std::move(rows));
    }
  while (c.diffs.size() + 1 < c.terms.size())
    c.diffs.push_back(std::vector<std::vector<Vec>>(
        c.terms[c.diffs.size()].size(),
        std::vector<Vec>(c.terms[c.diffs.size() + 1].size(), vec_zero(a->field(), a->dim()))));
  c.validate();
  return c;
}

DimVector dim_vector_from_string(const std::string& s) {
  DimVector out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    auto colon = part.find(':');
    if (colon == std::string::npos)
      fail(errc::malformed_descriptor, "dimension vector entries look like '<degree>:<dim>'");
    int deg = std::stoi(part.substr(0, colon));
    long val = std::stol(part.substr(colon + 1));
    if (val < 0) fail(errc::malformed_descriptor, "dimension vector entries are naturals");
    if (val > 0) out[deg] = static_cast<std::size_t>(val);
  }
  return out;
}

ordered_json dim_vector_to_json(const DimVector& v) {
  ordered_json out = ordered_json::object();
  for (const auto& [deg, dim] : v) out[std::to_string(deg)] = dim;
  return out;
}

ordered_json witness_to_json(const WitnessReport& w) {
  ordered_json out;
  out["splitRetraction"] = w.split_retraction ? ordered_json(matrix_to_json(*w.split_retraction))
                                              : ordered_json(nullptr);
  out["separabilityIdempotent"] =
      w.separability ? ordered_json(vec_to_json(*w.separability)) : ordered_json(nullptr);
  out["tensorSquareDim"] = w.tensor_square_dim;
  ordered_json right;
  right["projective"] = w.right_projective.projective;
  right["topMultiplicities"] = w.right_projective.top_multiplicities;
  out["rightModule"] = std::move(right);
  ordered_json left;
  left["projective"] = w.left_projective.projective;
  left["topMultiplicities"] = w.left_projective.top_multiplicities;
  out["leftModule"] = std::move(left);
  return out;
}

ordered_json experiment_to_json(const ExperimentReport& e) {
  ordered_json out;
  out["mode"] = e.mode == ExperimentMode::theorem41 ? "theorem41"
                : e.mode == ExperimentMode::prop51  ? "prop51"
                                                    : "prop53";
  out["verdict"] = e.verdict;
  out["splitPresent"] = e.split_present;
  out["separablePresent"] = e.separable_present;
  out["rightProjective"] = e.right_projective;
  out["leftProjective"] = e.left_projective;
  out["sourceDerivedDiscrete"] = tri_name(e.source_derived_discrete);
  out["targetDerivedDiscrete"] = tri_name(e.target_derived_discrete);
  out["sourcePiecewiseHereditary"] = tri_name(e.source_piecewise_hereditary);
  out["targetPiecewiseHereditary"] = tri_name(e.target_piecewise_hereditary);
  out["sourceClockPresentation"] = tri_name(e.source_clock_presentation);
  out["targetClockPresentation"] = tri_name(e.target_clock_presentation);
  out["sourceClassification"] = classification_to_json(e.source_classification);
  ordered_json blocks = ordered_json::array();
  for (const auto& b : e.target.blocks) {
    ordered_json jb;
    jb["dimension"] = b.dimension;
    jb["recoveredPresentation"] = presentation_to_json(b.recovered);
    jb["classification"] = classification_to_json(b.classification);
    blocks.push_back(std::move(jb));
  }
  ordered_json target;
  target["blocks"] = std::move(blocks);
  target["viaExtensionField"] = e.target.via_extension_field;
  if (!e.target.note.empty()) target["note"] = e.target.note;
  out["target"] = std::move(target);
  ordered_json imps = ordered_json::array();
  for (const auto& imp : e.implications) {
    ordered_json ji;
    ji["implication"] = imp.name;
    ji["status"] = imp.status;
    ji["detail"] = imp.detail;
    imps.push_back(std::move(ji));
  }
  out["implications"] = std::move(imps);
  return out;
}

std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace quiverkit
