#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tabular/laurent.hpp"
#include "tabular/perm.hpp"
#include "tabular/report.hpp"
#include "tabular/tabular.hpp"

namespace tabular {

// Brauer diagram on n strings: a perfect matching of n north and n south
// points, crossings allowed.  Endpoints 0..n-1 are north, n..2n-1 south.
struct BrauerDiagram {
  int n = 0;
  std::vector<int> match;

  static BrauerDiagram identity(int n);

  friend auto operator<=>(const BrauerDiagram&, const BrauerDiagram&) = default;
};

std::string brauer_str(const BrauerDiagram& d);

// Canonical triple: S1 collects the north arcs as an involution, S2 the
// south arcs, and w joins the sorted fixed points of S1 to those of S2.
// S1 and S2 share the fixed-point count t, and w acts on t letters.
struct BrauerTriple {
  Perm s1, s2, w;

  friend bool operator==(const BrauerTriple&, const BrauerTriple&) = default;
};

BrauerTriple to_triple(const BrauerDiagram& d);
BrauerDiagram from_triple(int n, const BrauerTriple& t);

// Top-bottom reflection; realizes the * involution [S1,S2,w] -> [S2,S1,w^-1].
BrauerDiagram brauer_flip(const BrauerDiagram& d);

using BrCombo = std::map<BrauerDiagram, Laurent>;

BrCombo br_combo_add(const BrCombo& a, const BrCombo& b);

// Stacks a over b and traces the middle connections; each closed middle
// loop contributes a factor of [2].
BrCombo brauer_multiply(const BrauerDiagram& a, const BrauerDiagram& b);
BrCombo brauer_multiply(const BrCombo& a, const BrCombo& b);

// Closure statistics: identify north point i with south point i and sort
// the loops by their net crossing of the seam.  The net crossing is the
// homology class of the loop on the closure cylinder, so it reads the same
// from any cut of a product; per-loop strand counts do not.
struct BrClosure {
  int null_loops = 0;    // net crossing zero, worth [2] each
  int around_loops = 0;  // net crossing one either way
  int high_loops = 0;    // net crossing two or more; any one kills the trace
};

BrClosure brauer_closure(const BrauerDiagram& d);

// Trace by closure: zero when a loop winds more than once, otherwise
// [2]^null v^(around-n).  On a diagonal triple each strand winds once and
// each arc pair bounds, giving (v^-1 + v^-3)^((n-t)/2) for w = 1; a
// nontrivial cycle of w winds its full length and gives 0.
Laurent brauer_trace(const BrauerDiagram& d);

struct BrauerInstance {
  int n = 0;
  TabularInstance inst;
  std::vector<int> cell_t;              // fixed-point counts, descending
  std::vector<std::vector<Perm>> invs;  // involution sets per cell
  AValues a;
  Report build_report;

  BrauerDiagram diagram_of(const Label& l) const;
  std::optional<Label> label_of(const BrauerDiagram& d) const;
};

// Table datum on the triple basis: cells by fixed-point count, the group
// ring of S(t) on each positive cell, star by reflection and the closure
// trace.  Exhaustive sweeps are practical for n <= 4.
BrauerInstance build_brauer(int n);

}  // namespace tabular
