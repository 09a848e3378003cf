#include "quiverkit/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace quiverkit {

int Quiver::vertex_index(std::string_view label) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == label) return static_cast<int>(i);
  return -1;
}

int Quiver::arrow_index(std::string_view label) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].label == label) return static_cast<int>(i);
  return -1;
}

int Path::source(const Quiver& q) const {
  return is_trivial() ? base_vertex : q.arrows[static_cast<std::size_t>(arrows.front())].source;
}

int Path::target(const Quiver& q) const {
  return is_trivial() ? base_vertex : q.arrows[static_cast<std::size_t>(arrows.back())].target;
}

std::string Path::str(const Quiver& q) const {
  if (is_trivial()) return "e_" + q.vertices[static_cast<std::size_t>(base_vertex)];
  std::string s;
  for (auto it = arrows.rbegin(); it != arrows.rend(); ++it) {
    if (!s.empty()) s += "*";
    s += q.arrows[static_cast<std::size_t>(*it)].label;
  }
  return s;
}

std::string Relation::str(const Quiver& q) const {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [c, p] = terms[i];
    std::string cs = c.str();
    if (i == 0) {
      if (cs == "1") {
      } else if (cs == "-1") {
        s += "-";
      } else {
        s += cs + " ";
      }
    } else {
      // Render rational leading signs readably; number-field coefficients are
      // parenthesized.
      if (cs.size() && cs[0] == '-') {
        s += " - ";
        cs = cs.substr(1);
        if (cs != "1") s += cs + " ";
      } else {
        s += " + ";
        if (cs != "1") s += cs + " ";
      }
    }
    s += p.str(q);
  }
  return s;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;
};

[[noreturn]] void syntax_error(int line, int col, const std::string& msg) {
  fail(errc::syntax_error, "line " + std::to_string(line) + " col " + std::to_string(col) + ": " + msg);
}

std::vector<std::pair<std::string, int>> tokenize_line(const std::string& line, int lineno) {
  std::vector<std::pair<std::string, int>> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
        ++j;
      toks.emplace_back(line.substr(i, j - i), static_cast<int>(i) + 1);
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      toks.emplace_back("->", static_cast<int>(i) + 1);
      i += 2;
      continue;
    }
    if (c == '*' || c == '+' || c == '-' || c == ':' || c == '/' || c == '(' || c == ')' ||
        c == '[' || c == ']' || c == '^' || c == '.') {
      toks.emplace_back(std::string(1, c), static_cast<int>(i) + 1);
      ++i;
      continue;
    }
    syntax_error(lineno, static_cast<int>(i) + 1, std::string("unexpected character '") + c + "'");
  }
  return toks;
}

struct RelParser {
  const Presentation& pres;
  const std::vector<std::pair<std::string, int>>& toks;
  std::size_t i = 0;
  int lineno;

  bool done() const { return i >= toks.size(); }
  const std::string& peek() const { return toks[i].first; }
  int col() const { return done() ? (toks.empty() ? 1 : toks.back().second) : toks[i].second; }

  Path parse_path() {
    // label (* label)*, written right-to-left: b*a traverses a first.
    std::vector<int> named;  // as written
    while (true) {
      if (done()) syntax_error(lineno, col(), "expected arrow label");
      const std::string& lbl = peek();
      int ai = pres.quiver.arrow_index(lbl);
      if (ai < 0) syntax_error(lineno, col(), "unknown arrow '" + lbl + "'");
      named.push_back(ai);
      ++i;
      if (!done() && peek() == "*") {
        ++i;
        continue;
      }
      break;
    }
    Path p;
    p.arrows.assign(named.rbegin(), named.rend());  // traversal order
    p.base_vertex = pres.quiver.arrows[static_cast<std::size_t>(p.arrows.front())].source;
    for (std::size_t k = 0; k + 1 < p.arrows.size(); ++k) {
      const Arrow& first = pres.quiver.arrows[static_cast<std::size_t>(p.arrows[k])];
      const Arrow& next = pres.quiver.arrows[static_cast<std::size_t>(p.arrows[k + 1])];
      if (first.target != next.source)
        fail(errc::non_composable_path,
             "target(" + first.label + ") = " + pres.quiver.vertices[static_cast<std::size_t>(first.target)] +
                 " != " + pres.quiver.vertices[static_cast<std::size_t>(next.source)] + " = source(" +
                 next.label + ")");
    }
    return p;
  }

  Scalar parse_coefficient(int sign) {
    // Optional integer or p/q literal; defaults to 1.
    Scalar c = Scalar::one(pres.field);
    if (!done() && !peek().empty() && std::isdigit(static_cast<unsigned char>(peek()[0])) &&
        pres.quiver.arrow_index(peek()) < 0) {
      std::string lit = peek();
      ++i;
      if (!done() && peek() == "/") {
        ++i;
        if (done()) syntax_error(lineno, col(), "expected denominator");
        lit += "/" + peek();
        ++i;
      }
      c = Scalar::parse(pres.field, lit);
    }
    if (sign < 0) c = -c;
    return c;
  }

  Relation parse_relation() {
    Relation rel;
    int sign = 1;
    if (!done() && (peek() == "+" || peek() == "-")) {
      sign = peek() == "-" ? -1 : 1;
      ++i;
    }
    while (true) {
      Scalar c = parse_coefficient(sign);
      Path p = parse_path();
      rel.terms.emplace_back(std::move(c), std::move(p));
      if (done()) break;
      if (peek() == "+" || peek() == "-") {
        sign = peek() == "-" ? -1 : 1;
        ++i;
        continue;
      }
      syntax_error(lineno, col(), "unexpected token '" + peek() + "' in relation");
    }
    // Parallelism check.
    int src = rel.terms.front().second.source(pres.quiver);
    int tgt = rel.terms.front().second.target(pres.quiver);
    for (const auto& [c, p] : rel.terms) {
      (void)c;
      if (p.source(pres.quiver) != src || p.target(pres.quiver) != tgt)
        fail(errc::non_parallel_relation,
             "terms of relation are not parallel: " + rel.str(pres.quiver));
    }
    return rel;
  }
};

}  // namespace

Relation parse_relation_expr(const Presentation& p, std::string_view text) {
  auto toks = tokenize_line(std::string(text), 1);
  if (toks.empty()) fail(errc::syntax_error, "empty relation expression");
  RelParser rp{p, toks, 0, 1};
  auto rel = rp.parse_relation();
  return rel;
}

Presentation parse_presentation(std::string_view text) {
  Presentation pres;
  pres.field = FieldSpec::rationals();
  bool saw_field = false, saw_vertices = false;
  bool in_relations = false, relations_closed = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokenize_line(raw, lineno);
    if (toks.empty()) continue;
    const std::string& head = toks[0].first;

    if (in_relations) {
      if (head == "end") {
        in_relations = false;
        relations_closed = true;
        continue;
      }
      RelParser rp{pres, toks, 0, lineno};
      pres.relations.push_back(rp.parse_relation());
      continue;
    }

    if (head == "field") {
      // Everything after the keyword, whitespace-insensitively.
      auto kw = raw.find("field");
      pres.field = FieldSpec::parse(std::string_view(raw).substr(kw + 5));
      saw_field = true;
    } else if (head == "vertices") {
      for (std::size_t t = 1; t < toks.size(); ++t) {
        if (pres.quiver.vertex_index(toks[t].first) >= 0)
          syntax_error(lineno, toks[t].second, "duplicate vertex '" + toks[t].first + "'");
        pres.quiver.vertices.push_back(toks[t].first);
      }
      saw_vertices = true;
    } else if (head == "arrow") {
      // arrow <label> : <v> -> <w>
      if (toks.size() != 6 || toks[2].first != ":" || toks[4].first != "->")
        syntax_error(lineno, toks[0].second, "expected 'arrow <label> : <source> -> <target>'");
      const std::string& lbl = toks[1].first;
      if (pres.quiver.arrow_index(lbl) >= 0)
        syntax_error(lineno, toks[1].second, "duplicate arrow '" + lbl + "'");
      int s = pres.quiver.vertex_index(toks[3].first);
      if (s < 0) fail(errc::unknown_vertex, "line " + std::to_string(lineno) + ": '" + toks[3].first + "'");
      int t = pres.quiver.vertex_index(toks[5].first);
      if (t < 0) fail(errc::unknown_vertex, "line " + std::to_string(lineno) + ": '" + toks[5].first + "'");
      pres.quiver.arrows.push_back(Arrow{lbl, s, t});
    } else if (head == "relations") {
      in_relations = true;
    } else if (head == "cap") {
      if (toks.size() != 2) syntax_error(lineno, toks[0].second, "expected 'cap <n>'");
      pres.nilpotency_cap = static_cast<unsigned>(std::stoul(toks[1].first));
    } else {
      syntax_error(lineno, toks[0].second, "unknown directive '" + head + "'");
    }
  }
  if (in_relations && !relations_closed)
    fail(errc::syntax_error, "line " + std::to_string(lineno) + ": missing 'end' after relations");
  if (!saw_vertices) fail(errc::syntax_error, "presentation declares no vertices");
  (void)saw_field;  // missing field line defaults to Q
  return pres;
}

std::string presentation_to_text(const Presentation& p) {
  std::ostringstream out;
  out << "field " << p.field->description() << "\n";
  out << "vertices";
  for (const auto& v : p.quiver.vertices) out << " " << v;
  out << "\n";
  for (const auto& a : p.quiver.arrows)
    out << "arrow " << a.label << " : " << p.quiver.vertices[static_cast<std::size_t>(a.source)] << " -> "
        << p.quiver.vertices[static_cast<std::size_t>(a.target)] << "\n";
  if (p.nilpotency_cap != 32) out << "cap " << p.nilpotency_cap << "\n";
  if (!p.relations.empty()) {
    out << "relations\n";
    for (const auto& r : p.relations) out << "  " << r.str(p.quiver) << "\n";
    out << "end\n";
  }
  return out.str();
}

std::vector<std::vector<int>> connected_components(const Quiver& q) {
  const int n = static_cast<int>(q.vertices.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& a : q.arrows) {
    int ra = find(a.source), rb = find(a.target);
    if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
  }
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

bool same_quiver_shape(const Quiver& a, const Quiver& b) {
  const std::size_t n = a.vertices.size();
  if (n != b.vertices.size() || a.arrows.size() != b.arrows.size()) return false;
  std::vector<std::vector<int>> ma(n, std::vector<int>(n, 0)), mb(n, std::vector<int>(n, 0));
  for (const auto& ar : a.arrows) ++ma[static_cast<std::size_t>(ar.source)][static_cast<std::size_t>(ar.target)];
  for (const auto& ar : b.arrows) ++mb[static_cast<std::size_t>(ar.source)][static_cast<std::size_t>(ar.target)];
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if (ma[i][j] != mb[perm[i]][perm[j]]) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

Presentation restrict_to_component(const Presentation& p, const std::vector<int>& vertices) {
  Presentation out;
  out.field = p.field;
  out.nilpotency_cap = p.nilpotency_cap;
  std::vector<int> vmap(p.quiver.vertices.size(), -1);
  for (int v : vertices) {
    vmap[static_cast<std::size_t>(v)] = static_cast<int>(out.quiver.vertices.size());
    out.quiver.vertices.push_back(p.quiver.vertices[static_cast<std::size_t>(v)]);
  }
  std::vector<int> amap(p.quiver.arrows.size(), -1);
  for (std::size_t i = 0; i < p.quiver.arrows.size(); ++i) {
    const Arrow& a = p.quiver.arrows[i];
    if (vmap[static_cast<std::size_t>(a.source)] < 0) continue;
    amap[i] = static_cast<int>(out.quiver.arrows.size());
    out.quiver.arrows.push_back(
        Arrow{a.label, vmap[static_cast<std::size_t>(a.source)], vmap[static_cast<std::size_t>(a.target)]});
  }
  for (const auto& r : p.relations) {
    if (r.terms.empty()) continue;
    int src = r.terms.front().second.source(p.quiver);
    if (vmap[static_cast<std::size_t>(src)] < 0) continue;
    Relation rr;
    for (const auto& [c, path] : r.terms) {
      Path np;
      np.base_vertex = vmap[static_cast<std::size_t>(path.base_vertex)];
      for (int ai : path.arrows) np.arrows.push_back(amap[static_cast<std::size_t>(ai)]);
      rr.terms.emplace_back(c, std::move(np));
    }
    out.relations.push_back(std::move(rr));
  }
  return out;
}

}  // namespace quiverkit
