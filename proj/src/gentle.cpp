#include "quiverkit/gentle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "quiverkit/algebra.hpp"

namespace quiverkit {

namespace {

// Monomial quadratic relations as (first, second) arrow pairs, in traversal
// order: the relation b*a yields (a, b).
std::optional<std::pair<int, int>> monomial_quadratic(const Relation& rel) {
  std::vector<std::pair<Scalar, Path>> nz;
  for (const auto& t : rel.terms)
    if (!t.first.is_zero()) nz.push_back(t);
  if (nz.size() != 1 || nz[0].second.length() != 2) return std::nullopt;
  return std::make_pair(nz[0].second.arrows[0], nz[0].second.arrows[1]);
}

}  // namespace

GentleReport is_gentle(const Presentation& p) {
  GentleReport rep{true, {}};
  const Quiver& q = p.quiver;

  std::set<std::pair<int, int>> forbidden;  // (first, second) in I
  for (const auto& rel : p.relations) {
    auto mono = monomial_quadratic(rel);
    if (!mono) {
      rep.gentle = false;
      rep.violations.push_back("relation '" + rel.str(q) + "' is not a monomial path of length 2");
      continue;
    }
    forbidden.insert(*mono);
  }

  for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v) {
    std::size_t in = 0, out = 0;
    for (const auto& a : q.arrows) {
      if (a.source == v) ++out;
      if (a.target == v) ++in;
    }
    if (in > 2) {
      rep.gentle = false;
      rep.violations.push_back("vertex " + q.vertices[static_cast<std::size_t>(v)] + " has " +
                               std::to_string(in) + " incoming arrows");
    }
    if (out > 2) {
      rep.gentle = false;
      rep.violations.push_back("vertex " + q.vertices[static_cast<std::size_t>(v)] + " has " +
                               std::to_string(out) + " outgoing arrows");
    }
  }

  for (int b = 0; b < static_cast<int>(q.arrows.size()); ++b) {
    const Arrow& ab = q.arrows[static_cast<std::size_t>(b)];
    std::size_t in_I_pre = 0, out_I_pre = 0, in_free_pre = 0, out_free_pre = 0;
    for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
      const Arrow& aa = q.arrows[static_cast<std::size_t>(a)];
      if (aa.target == ab.source) {
        // composition b after a
        if (forbidden.count({a, b})) ++in_I_pre;
        else ++in_free_pre;
      }
      if (ab.target == aa.source) {
        // composition a after b
        if (forbidden.count({b, a})) ++out_I_pre;
        else ++out_free_pre;
      }
    }
    auto complain = [&](std::size_t n, const std::string& what) {
      if (n > 1) {
        rep.gentle = false;
        rep.violations.push_back("arrow " + ab.label + " has " + std::to_string(n) + " " + what);
      }
    };
    complain(in_I_pre, "relation-bound predecessors");
    complain(in_free_pre, "relation-free predecessors");
    complain(out_I_pre, "relation-bound successors");
    complain(out_free_pre, "relation-free successors");
  }
  return rep;
}

std::vector<CycleInfo> cycle_structure(const Presentation& p) {
  std::vector<CycleInfo> out;
  for (const auto& comp : connected_components(p.quiver)) {
    CycleInfo info;
    info.vertices = comp;
    std::set<int> vset(comp.begin(), comp.end());
    std::vector<int> comp_arrows;
    for (int a = 0; a < static_cast<int>(p.quiver.arrows.size()); ++a)
      if (vset.count(p.quiver.arrows[static_cast<std::size_t>(a)].source)) comp_arrows.push_back(a);
    info.betti = static_cast<int>(comp_arrows.size()) - static_cast<int>(comp.size()) + 1;

    if (info.betti == 1) {
      // Strip leaves; the 2-core is the unique cycle.
      std::set<int> alive(comp_arrows.begin(), comp_arrows.end());
      bool changed = true;
      while (changed) {
        changed = false;
        for (int v : comp) {
          std::size_t deg = 0;
          int last = -1;
          for (int a : alive) {
            const Arrow& ar = p.quiver.arrows[static_cast<std::size_t>(a)];
            if (ar.source == v) {
              ++deg;
              last = a;
            }
            if (ar.target == v) {
              ++deg;
              last = a;
            }
          }
          if (deg == 1) {
            alive.erase(last);
            changed = true;
          }
        }
      }
      // Walk the cycle from its smallest vertex.
      int start = -1;
      for (int v : comp) {
        for (int a : alive) {
          const Arrow& ar = p.quiver.arrows[static_cast<std::size_t>(a)];
          if (ar.source == v || ar.target == v) {
            start = v;
            break;
          }
        }
        if (start >= 0) break;
      }
      std::set<int> used;
      int at = start;
      while (used.size() < alive.size()) {
        int chosen = -1;
        for (int a : alive) {
          if (used.count(a)) continue;
          const Arrow& ar = p.quiver.arrows[static_cast<std::size_t>(a)];
          if (ar.source == at || ar.target == at) {
            chosen = a;
            break;
          }
        }
        if (chosen < 0) break;
        const Arrow& ar = p.quiver.arrows[static_cast<std::size_t>(chosen)];
        bool with = ar.source == at;
        info.cycle.push_back(CycleArrowFlag{chosen, with});
        used.insert(chosen);
        at = with ? ar.target : ar.source;
      }
    }
    out.push_back(std::move(info));
  }
  return out;
}

ClockResult clock_condition(const Presentation& p, bool reversed) {
  auto comps = cycle_structure(p);
  if (comps.size() != 1)
    fail(errc::not_applicable, "clock condition expects a connected presentation; classify handles components");
  auto gentle = is_gentle(p);
  if (!gentle.gentle) fail(errc::not_applicable, "presentation is not gentle");
  if (comps[0].betti != 1)
    fail(errc::not_applicable, "Betti number is " + std::to_string(comps[0].betti) + ", not 1");

  std::map<int, bool> flag;
  for (const auto& ca : comps[0].cycle) flag[ca.arrow] = reversed ? !ca.with_traversal : ca.with_traversal;

  ClockResult res;
  for (const auto& rel : p.relations) {
    auto mono = monomial_quadratic(rel);
    auto f1 = flag.find(mono->first);
    auto f2 = flag.find(mono->second);
    if (f1 == flag.end() || f2 == flag.end()) {
      ++res.off_cycle;
      continue;
    }
    if (f1->second && f2->second) ++res.clockwise;
    else if (!f1->second && !f2->second) ++res.counterclockwise;
    else
      fail(errc::invalid_argument, "composable on-cycle relation with mixed orientation (cycle extraction bug)");
  }
  res.holds = res.clockwise != res.counterclockwise;
  return res;
}

std::optional<DynkinType> dynkin_hereditary_type(const Presentation& p) {
  for (const auto& rel : p.relations)
    for (const auto& [c, path] : rel.terms)
      if (!c.is_zero()) return std::nullopt;
  const Quiver& q = p.quiver;
  const int n = static_cast<int>(q.vertices.size());
  if (n == 0) return std::nullopt;
  if (connected_components(q).size() != 1) return std::nullopt;
  if (static_cast<int>(q.arrows.size()) != n - 1) return std::nullopt;  // not a tree
  // Simple graph: no loops (tree check covers cycles, loops included).
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& a : q.arrows) {
    if (a.source == a.target) return std::nullopt;
    adj[static_cast<std::size_t>(a.source)].push_back(a.target);
    adj[static_cast<std::size_t>(a.target)].push_back(a.source);
  }
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
  int max_deg = *std::max_element(deg.begin(), deg.end());
  if (n == 1) return DynkinType{'A', 1};
  if (max_deg <= 2) return DynkinType{'A', n};
  if (max_deg > 3) return std::nullopt;
  if (std::count(deg.begin(), deg.end(), 3) != 1) return std::nullopt;
  int center = static_cast<int>(std::find(deg.begin(), deg.end(), 3) - deg.begin());
  // Branch lengths (in edges) from the center.
  std::vector<int> lens;
  for (int next : adj[static_cast<std::size_t>(center)]) {
    int len = 1, prev = center, at = next;
    while (deg[static_cast<std::size_t>(at)] == 2) {
      int nxt = adj[static_cast<std::size_t>(at)][0] == prev ? adj[static_cast<std::size_t>(at)][1]
                                                             : adj[static_cast<std::size_t>(at)][0];
      prev = at;
      at = nxt;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  if (lens[0] == 1 && lens[1] == 1) return DynkinType{'D', lens[2] + 3};
  if (lens[0] == 1 && lens[1] == 2 && lens[2] >= 2 && lens[2] <= 4)
    return DynkinType{'E', lens[2] + 4};
  return std::nullopt;
}

const char* status_name(ComponentVerdict::Status s) {
  switch (s) {
    case ComponentVerdict::Status::derived_discrete: return "DerivedDiscrete";
    case ComponentVerdict::Status::not_derived_discrete: return "NotDerivedDiscrete";
    case ComponentVerdict::Status::unknown: return "Unknown";
  }
  return "?";
}

const char* reason_name(ComponentVerdict::Reason r) {
  switch (r) {
    case ComponentVerdict::Reason::gentle_one_cycle_clock: return "GentleOneCycleClock";
    case ComponentVerdict::Reason::hereditary_dynkin: return "HereditaryDynkin";
    case ComponentVerdict::Reason::gentle_one_cycle_no_clock: return "GentleOneCycleNoClock";
    case ComponentVerdict::Reason::non_gentle: return "NonGentlePresentation";
    case ComponentVerdict::Reason::multiple_cycles: return "BettiNumberAtLeastTwo";
    case ComponentVerdict::Reason::relations_off_cycle: return "RelationsOffCycle";
    case ComponentVerdict::Reason::tree_with_relations: return "TreeWithRelations";
    case ComponentVerdict::Reason::hereditary_non_dynkin: return "HereditaryNonDynkin";
  }
  return "?";
}

std::string ComponentVerdict::describe() const {
  std::string s = std::string(status_name(status)) + "(" + reason_name(reason);
  if (dynkin) s += "(" + dynkin->str() + ")";
  s += ")";
  if (clock)
    s += " clock=(" + std::to_string(clock->clockwise) + "," + std::to_string(clock->counterclockwise) + ")";
  return s;
}

Classification classify_derived_discrete(const Presentation& p) {
  admissible_check(p);
  Classification out;
  for (const auto& comp_vertices : connected_components(p.quiver)) {
    ComponentVerdict v{ComponentVerdict::Status::unknown, ComponentVerdict::Reason::non_gentle,
                       restrict_to_component(p, comp_vertices), std::nullopt, std::nullopt, {}, {}};
    const Presentation& comp = v.component;
    v.cycle = cycle_structure(comp).at(0);
    v.dynkin = dynkin_hereditary_type(comp);
    bool has_relations = false;
    for (const auto& rel : comp.relations)
      for (const auto& [c, path] : rel.terms)
        if (!c.is_zero()) has_relations = true;

    if (v.dynkin) {
      v.status = ComponentVerdict::Status::derived_discrete;
      v.reason = ComponentVerdict::Reason::hereditary_dynkin;
    } else if (!has_relations && v.cycle.betti == 0) {
      v.status = ComponentVerdict::Status::unknown;
      v.reason = ComponentVerdict::Reason::hereditary_non_dynkin;
    } else {
      auto gentle = is_gentle(comp);
      v.gentle_violations = gentle.violations;
      if (!gentle.gentle) {
        v.status = ComponentVerdict::Status::unknown;
        v.reason = ComponentVerdict::Reason::non_gentle;
      } else if (v.cycle.betti == 0) {
        v.status = ComponentVerdict::Status::unknown;
        v.reason = ComponentVerdict::Reason::tree_with_relations;
      } else if (v.cycle.betti >= 2) {
        v.status = ComponentVerdict::Status::unknown;
        v.reason = ComponentVerdict::Reason::multiple_cycles;
      } else {
        ClockResult clock = clock_condition(comp);
        v.clock = clock;
        if (clock.off_cycle > 0) {
          v.status = ComponentVerdict::Status::unknown;
          v.reason = ComponentVerdict::Reason::relations_off_cycle;
        } else if (clock.holds) {
          v.status = ComponentVerdict::Status::derived_discrete;
          v.reason = ComponentVerdict::Reason::gentle_one_cycle_clock;
        } else {
          v.status = ComponentVerdict::Status::not_derived_discrete;
          v.reason = ComponentVerdict::Reason::gentle_one_cycle_no_clock;
        }
      }
    }
    out.components.push_back(std::move(v));
  }
  bool any_unknown = false, any_not = false;
  for (const auto& c : out.components) {
    any_unknown |= c.status == ComponentVerdict::Status::unknown;
    any_not |= c.status == ComponentVerdict::Status::not_derived_discrete;
  }
  out.combined = any_unknown  ? ComponentVerdict::Status::unknown
                 : any_not    ? ComponentVerdict::Status::not_derived_discrete
                              : ComponentVerdict::Status::derived_discrete;
  return out;
}

bool recheck_verdict(const ComponentVerdict& v) {
  const Presentation& comp = v.component;
  // The cycle evidence must be a closed walk of the recorded component.
  auto cyc = cycle_structure(comp).at(0);
  if (cyc.betti != v.cycle.betti) return false;
  if (v.cycle.betti == 1) {
    std::set<int> recorded, recomputed;
    for (const auto& ca : v.cycle.cycle) recorded.insert(ca.arrow);
    for (const auto& ca : cyc.cycle) recomputed.insert(ca.arrow);
    if (recorded != recomputed) return false;
  }
  switch (v.reason) {
    case ComponentVerdict::Reason::hereditary_dynkin: {
      auto d = dynkin_hereditary_type(comp);
      return d && v.dynkin && *d == *v.dynkin &&
             v.status == ComponentVerdict::Status::derived_discrete;
    }
    case ComponentVerdict::Reason::gentle_one_cycle_clock:
    case ComponentVerdict::Reason::gentle_one_cycle_no_clock: {
      if (!is_gentle(comp).gentle) return false;
      auto fwd = clock_condition(comp, false);
      auto rev = clock_condition(comp, true);
      if (!v.clock) return false;
      // Orientation invariance: the counts swap, the verdict is stable.
      if (fwd.clockwise != rev.counterclockwise || fwd.counterclockwise != rev.clockwise) return false;
      if (fwd.holds != rev.holds) return false;
      if (fwd.clockwise != v.clock->clockwise || fwd.counterclockwise != v.clock->counterclockwise)
        return false;
      bool expect_dd = fwd.holds && fwd.off_cycle == 0;
      bool expect_not = !fwd.holds && fwd.off_cycle == 0;
      if (v.status == ComponentVerdict::Status::derived_discrete) return expect_dd;
      if (v.status == ComponentVerdict::Status::not_derived_discrete) return expect_not;
      return false;
    }
    default:
      return v.status == ComponentVerdict::Status::unknown;
  }
}

}  // namespace quiverkit
