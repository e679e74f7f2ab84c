#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tabular/report.hpp"
#include "tabular/tabular.hpp"

namespace tabular {

// Idempotent family, star involution/anti-automorphism, and the
// row-action axiom (left multiplication acts on rows with coefficients
// independent of the column tableau and the table-algebra label).
Report verify_a1_a3(const TabularInstance& inst, unsigned threads = 1);

// Degree bound: deg g_{K,K',K''} <= a(K''), attained exactly when the
// tableaux chain (K.S, K.T=K'.S, K'.T) matches K'' and K''.b lies in the
// support of K.b K'.b; top coefficient 1 when all three labels are 1.
Report verify_a4(const TabularInstance& inst, const AValues& a, unsigned threads = 1);

// Trace: star symmetry, commutativity, and unit triangularity of
// v^{a(X)} tau(X) against [S == T and b == 1].
Report verify_a5(const TabularInstance& inst, const AValues& a, unsigned threads = 1);

// Gamma-valued bracket of a cell: C_{S,T}^1 C_{U,V}^1 = C_{S,V}^{<T,U>}
// modulo lower cells.  Map from table-algebra label to Laurent coefficient.
using GammaLaurent = std::map<int, Laurent>;
GammaLaurent bracket(const TabularInstance& inst, int lam, int T, int U);

// Bracket well-definedness (independence of S, V, b, b') and its degree
// profile: the identity component of <T,T> is monic of degree a, everything
// else stays strictly below a.
Report verify_bracket(const TabularInstance& inst, const AValues& a);

// tau(x y*) almost orthonormal on the rescaled basis, adjunction
// (x, yz) = (x z*, y), and the symmetric associative form tau(xy).
// Triple identities are spot-checked on a deterministic subsample.
Report verify_bilinear(const TabularInstance& inst, const AValues& a, int samples = 60);

// Two-sided preorder cells from single multiplication steps, strongly
// connected components and the induced order, compared against the declared
// cell decomposition.
struct CellsResult {
  std::vector<std::vector<Label>> classes;        // each sorted; classes sorted by min member
  std::vector<std::pair<int, int>> strict_pairs;  // (lower class, higher class)
  Report report;
};
CellsResult compute_cells(const TabularInstance& inst, unsigned threads = 1);

// Minimal n with v^{-n} Z L_lam inside L_lam (nonnegative-part lattice of the
// cell module) equals the a value of Z's cell.
Report verify_lusztig_a(const TabularInstance& inst, const AValues& a);

// The three asymptotic prerequisites: constancy of a, diagonal-identity
// labels as local units at the top degree, and two-variable associativity of
// the cell bimodule.
Report verify_p123(const TabularInstance& inst, const AValues& a);

}  // namespace tabular
