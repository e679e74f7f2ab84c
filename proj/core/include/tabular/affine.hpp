#pragma once

// Diagram algebra on the cylinder: periodic matchings with offsets, the
// annular-involution triple codec with winding numbers, generators and
// relations, the even-crossing subalgebra test, the torus-closure trace and
// the table datum over integer-Laurent and Chebyshev cells.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tabular/laurent.hpp"
#include "tabular/perm.hpp"
#include "tabular/report.hpp"
#include "tabular/tabular.hpp"

namespace tabular {

// Matching of the 2n fundamental nodes of one period of the strip, top row
// 0..n-1 and bottom row n..2n-1, extended periodically in both directions.
// Node p connects node match[p] in the copy shift[p] periods to the right,
// so shift[match[p]] == -shift[p].  Bands are closed horizontal curves
// between the rows; they can only exist when nothing propagates.
struct AffineDiagram {
  int n = 0;
  std::vector<int> match;
  std::vector<int> shift;
  int bands = 0;

  static AffineDiagram identity(int n);
  friend auto operator<=>(const AffineDiagram&, const AffineDiagram&) = default;
};

int affine_prop(const AffineDiagram& d);  // number of propagating edges

// Top-bottom reflection; negates the winding and fixes the bands.
AffineDiagram affine_flip(const AffineDiagram& d);

// Structural and planarity validation: involution shape, band exclusion,
// arcs free of crossings among all translates, no stub under an arc, and
// order-preserving propagating edges.  Throws std::invalid_argument.
void affine_check(const AffineDiagram& d, const char* where);

// Text codec "n; top-arcs; bottom-arcs; prop-edges | w=.. or k=..".  Arcs
// read "a-b", propagating edges "a>b" from the bottom row, both 1-based
// with a signed offset suffix for edges leaving the fundamental copy.
// Empty sections print "-".
std::string affine_str(const AffineDiagram& d);
std::optional<AffineDiagram> parse_affine_str(const std::string& text);

// Signed count of propagating edges crossing the seam between node n-1 and
// node 0 of the next copy, over all copies of the seam; rightward-rising
// edges count +1.  Throws std::domain_error when nothing propagates.
int winding_number(const AffineDiagram& d);

// Annular condition: every transposed pair spans an interval closed under
// the involution which either misses the fixed points or contains them all.
bool is_annular(const Perm& s);

// Annular involutions with t fixed points, ordered like
// involutions_with_fixed.
std::vector<Perm> annular_involutions(int n, int t);

// Periodic fixed-point-free planar matchings of the integers: the top or
// bottom half of a diagram without propagating edges.  pair_with[i] is the
// cover position of the partner of node i; its residue is the fundamental
// index and its quotient the copy.
struct AnnularMatching {
  int n = 0;
  std::vector<int> pair_with;
  friend auto operator<=>(const AnnularMatching&, const AnnularMatching&) = default;
};

// Enumeration in lexicographic pair_with order; empty for odd n.
std::vector<AnnularMatching> all_annular_matchings(int n);
// One-based arc list "1-2,3-6" where the right end is a cover position.
std::string annular_matching_str(const AnnularMatching& m);
std::optional<AnnularMatching> parse_annular_matching(const std::string& text, int n);

// Halves plus payload.  With propagating edges the halves are annular
// involutions and the payload is the winding number; without, the halves
// carry offsets and the payload is the band count.
struct AffineTriple {
  int t = 0;
  Perm s1, s2;             // used when t > 0
  AnnularMatching m1, m2;  // used when t == 0
  int payload = 0;
  friend bool operator==(const AffineTriple&, const AffineTriple&) = default;
};

AffineTriple to_affine_triple(const AffineDiagram& d);
// Inverse construction; throws std::invalid_argument on inadmissible data.
AffineDiagram from_affine_triple(int n, const AffineTriple& t);

// Stacks a over b.  Middle cycles with zero net offset come off as [2]
// factors counted in delta_pow; cycles winding once become bands.  A cycle
// winding further means the inputs were not planar: std::logic_error.
AffineDiagram affine_stack(const AffineDiagram& a, const AffineDiagram& b, int& delta_pow);

using AffCombo = std::map<AffineDiagram, Laurent>;
AffCombo aff_combo_add(AffCombo a, const AffCombo& b);
AffCombo affine_multiply(const AffineDiagram& a, const AffineDiagram& b);
AffCombo affine_multiply(const AffCombo& a, const AffCombo& b);

// The rotation diagram (direction +1 or -1) and the cup diagrams.
AffineDiagram affine_u(int n, int direction);
AffineDiagram affine_e(int n, int i);  // arc i, i+1 mod n on both rows

// The defining relations of the rotation-and-cup presentation, checked as
// exact diagram identities.
Report affine_relations(int n);

// Membership in the subalgebra generated by the cups alone: the identity,
// or every vertical line between adjacent nodes crossed evenly.
bool tl_subalgebra(const AffineDiagram& d);

// Torus closure: identify the rows, strip contractible loops as [2] each
// and classify survivors by homology.  Core loops clear of the seam give
// v^(t-n); a survivor pinned to the seam kills the value; k meridian bands
// give v^(-n) kappa(1, x^k).
Laurent torus_trace(const AffineDiagram& d);

struct AffineInstance {
  int n = 0;
  int w_max = 0;
  int k_max = 0;
  TabularInstance inst;
  std::vector<int> cell_t;              // per cell, descending
  std::vector<std::vector<Perm>> invs;  // tableaux of the propagating cells
  std::vector<AnnularMatching> mats;    // tableaux of the bottom cell, if any
  AValues a;
  Report build_report;

  // Labels of the bottom cell expand to diagram combinations through the
  // band basis change; elsewhere a label is a single diagram.
  AffCombo combo_of(const Label& l) const;
  Element label_combo(const AffCombo& c) const;
};

// Table datum with cells by propagating count; payload windows |w| <= w_max
// and band degree <= k_max bound the sweeps only.
AffineInstance build_affine(int n, int w_max, int k_max);

}  // namespace tabular
