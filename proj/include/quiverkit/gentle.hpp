#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quiverkit/quiver.hpp"

namespace quiverkit {

struct GentleReport {
  bool gentle;
  std::vector<std::string> violations;
};

/// The combinatorial gentleness conditions: monomial quadratic relations,
/// at most two arrows in and out of each vertex, and for every arrow at most
/// one admissible and one forbidden composition on each side.
GentleReport is_gentle(const Presentation& p);

struct CycleArrowFlag {
  int arrow;
  bool with_traversal;
};

struct CycleInfo {
  std::vector<int> vertices;  // the component
  int betti = 0;              // edges - vertices + 1 on the component
  std::vector<CycleArrowFlag> cycle;  // the unique cycle when betti == 1
};

/// Per-component Betti numbers; for one-cycle components the cycle is
/// extracted with each arrow flagged with/against a fixed traversal.
std::vector<CycleInfo> cycle_structure(const Presentation& p);

struct ClockResult {
  std::size_t clockwise = 0;
  std::size_t counterclockwise = 0;
  bool holds = false;
  std::size_t off_cycle = 0;  // relations excluded from both counts
};

/// Counts relation orientations around the unique cycle of a connected gentle
/// one-cycle presentation. `reversed` flips the traversal direction (the
/// verdict is invariant). Throws NotApplicable when the presentation is not
/// gentle or its Betti number is not 1.
ClockResult clock_condition(const Presentation& p, bool reversed = false);

struct DynkinType {
  char cls;  // 'A', 'D', 'E'
  int n;
  std::string str() const { return std::string(1, cls) + std::to_string(n); }
  bool operator==(const DynkinType& o) const { return cls == o.cls && n == o.n; }
};

/// Present iff the presentation has no relations and its underlying
/// undirected graph is a Dynkin diagram of type A, D, E6..E8.
std::optional<DynkinType> dynkin_hereditary_type(const Presentation& p);

struct ComponentVerdict {
  enum class Status { derived_discrete, not_derived_discrete, unknown };
  enum class Reason {
    gentle_one_cycle_clock,
    hereditary_dynkin,
    gentle_one_cycle_no_clock,
    non_gentle,
    multiple_cycles,
    relations_off_cycle,
    tree_with_relations,
    hereditary_non_dynkin,
  };
  Status status;
  Reason reason;
  Presentation component;
  std::optional<DynkinType> dynkin;
  std::optional<ClockResult> clock;
  CycleInfo cycle;
  std::vector<std::string> gentle_violations;

  std::string describe() const;
};

const char* status_name(ComponentVerdict::Status s);
const char* reason_name(ComponentVerdict::Reason r);

struct Classification {
  std::vector<ComponentVerdict> components;
  ComponentVerdict::Status combined;
};

/// Decides the derived-discreteness criterion per connected component:
/// hereditary Dynkin, or gentle one-cycle with the clock condition. Unknown
/// is a first-class outcome for everything the criterion does not cover.
/// Requires an admissible presentation.
Classification classify_derived_discrete(const Presentation& p);

/// Independently rechecks a component verdict from its recorded evidence.
bool recheck_verdict(const ComponentVerdict& v);

}  // namespace quiverkit
