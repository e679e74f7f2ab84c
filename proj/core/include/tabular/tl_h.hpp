#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tabular/report.hpp"
#include "tabular/tabular.hpp"

namespace tabular {

// Decorated planar diagram on m strands.  Boundary nodes are numbered
// 0..m-1 along the north face and m..2m-1 along the south face, both west
// to east, and are perfectly matched without crossings.  Each edge carries
// a decoration count, stored on both of its endpoints.
struct HDiagram {
  int m = 0;
  std::vector<int> match;
  std::vector<int> dec;

  static HDiagram identity(int m);
  friend auto operator<=>(const HDiagram&, const HDiagram&) = default;
};

std::string h_diagram_str(const HDiagram& d);

// An edge is exposed to the west face when no other edge separates it from
// the west side of the frame.  Cutting the boundary circle at the west face
// turns edges into intervals; exposure is the absence of a strictly
// containing interval.
bool h_west_exposed(const HDiagram& d, int p);

// Basis membership: planar, each decoration on a west exposed edge and at
// most one per edge, no decorations when every edge propagates, and each
// face with arcs shows either a decorated westmost pair or an undecorated
// adjacent pair away from the west corner.
bool h_admissible(const HDiagram& d);

using HCombo = std::map<HDiagram, Laurent>;

HCombo h_combo_add(HCombo a, const HCombo& b);
HCombo h_combo_scale(const HCombo& a, const Laurent& c);

// Stacks a over b and reduces: undecorated loops give a factor of [2],
// loops with one decoration kill the term, and an edge or loop carrying d
// decorations resolves through x^d = F(d) x + F(d-1).
HCombo h_multiply(const HDiagram& a, const HDiagram& b);
HCombo h_multiply(const HCombo& a, const HCombo& b);

// Generator diagrams on n+1 strands; the westmost generator is the cup/cap
// pair decorated on both arcs, the others are plain cup/cap pairs.
std::vector<HDiagram> h_generators(int n);

// Checks the defining relations of the rank n presentation on the
// generator diagrams, including the length five relation at the west end.
Report h_presentation_check(int n);

// Closure of a diagram on a cylinder: identify the north and south faces,
// classify loops by their winding around the seam, and evaluate the trace
// functional (plain core loops give v^{t-m}, any surviving decoration 0).
struct HClosure {
  int around = 0;            // loops winding around the cylinder
  int decorated_around = 0;  // winding loops that carry decorations
  int terms = 0;             // trace diagram terms before evaluation
  Laurent value;
};

HClosure h_cylinder_closure(const HDiagram& d);
Laurent h_cylinder_trace(const HDiagram& d);

// Half diagram: a partial non-crossing matching of the m north nodes whose
// unmatched nodes propagate.  Decorations obey the same exposure rule, and
// the face condition filters the valid configurations.
struct HalfConfig {
  int m = 0;
  std::vector<int> match;  // partner node or -1 for a propagating node
  std::vector<int> dec;

  friend auto operator<=>(const HalfConfig&, const HalfConfig&) = default;
};

std::string h_half_str(const HalfConfig& h);

// All valid north face configurations with t propagating nodes, in a fixed
// deterministic order.
std::vector<HalfConfig> h_half_configs(int m, int t);

// Glues S over the reflection of T, joining propagating nodes in order; dec
// decorates the westmost propagating edge.  Throws if the result leaves the
// basis (a decorated propagating edge needs arcs next to it).
HDiagram h_assemble(const HalfConfig& S, int dec, const HalfConfig& T);

struct TLHInstance {
  int n = 0;  // rank; diagrams have n + 1 strands
  TabularInstance inst;
  std::vector<int> cell_t;  // propagating counts, descending
  std::vector<std::vector<HalfConfig>> halves;
  AValues a;
  Report build_report;

  HDiagram diagram_of(const Label& l) const;
  std::optional<Label> label_of(const HDiagram& d) const;
};

// Table datum for the rank n algebra on the diagram basis: cells indexed by
// propagating count, golden coefficient algebra on the middle cells, star
// by top-bottom flip and the cylinder trace.
TLHInstance build_tl_h(int n);

}  // namespace tabular
