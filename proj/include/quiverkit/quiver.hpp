#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "quiverkit/field.hpp"

namespace quiverkit {

struct Arrow {
  std::string label;
  int source;
  int target;
};

struct Quiver {
  std::vector<std::string> vertices;  // unique labels
  std::vector<Arrow> arrows;          // unique labels

  int vertex_index(std::string_view label) const;  // -1 when absent
  int arrow_index(std::string_view label) const;
};

/// A path in the quiver. Arrows are stored in traversal order (the arrow
/// traversed first comes first), i.e. the reverse of the `b*a` notation in
/// which a is applied first. Trivial paths carry their vertex.
struct Path {
  int base_vertex = -1;     // source vertex (meaningful for trivial paths)
  std::vector<int> arrows;  // indices into Quiver::arrows, traversal order

  static Path trivial(int v) { return Path{v, {}}; }
  bool is_trivial() const { return arrows.empty(); }
  std::size_t length() const { return arrows.size(); }
  int source(const Quiver& q) const;
  int target(const Quiver& q) const;
  std::string str(const Quiver& q) const;  // "b*a" / "e_1"
  bool operator==(const Path& o) const { return base_vertex == o.base_vertex && arrows == o.arrows; }
};

/// Formal linear combination of parallel paths. Parallel and composable by
/// construction when produced by the parser.
struct Relation {
  std::vector<std::pair<Scalar, Path>> terms;
  std::string str(const Quiver& q) const;
};

struct Presentation {
  FieldPtr field;
  Quiver quiver;
  std::vector<Relation> relations;
  unsigned nilpotency_cap = 32;
};

/// Parses the line-oriented presentation format:
///
///   field Q
///   vertices 1 2 3 4
///   arrow a : 1 -> 2
///   relations
///     b*a - 2 d*c
///   end
///
/// `#` starts a comment. Throws SyntaxError (with line/column), UnknownVertex,
/// NonComposablePath, or NonParallelRelation. Admissibility is not checked.
Presentation parse_presentation(std::string_view text);

/// Parses a relation expression such as "b*a - 2 d*c" against an existing
/// presentation (used by `--add`).
Relation parse_relation_expr(const Presentation& p, std::string_view text);

std::string presentation_to_text(const Presentation& p);

/// Connected components of the underlying undirected graph, as vertex
/// index lists (sorted, deterministic order).
std::vector<std::vector<int>> connected_components(const Quiver& q);

/// The sub-presentation spanned by one vertex set (arrows and relations
/// restricted; relations with any vertex outside are dropped — parallel paths
/// share endpoints, so a relation lies in exactly one component).
Presentation restrict_to_component(const Presentation& p, const std::vector<int>& vertices);

/// True when some vertex bijection matches the arrow-multiplicity matrices
/// (same quiver up to relabeling). Brute force, intended for small quivers.
bool same_quiver_shape(const Quiver& a, const Quiver& b);

}  // namespace quiverkit
