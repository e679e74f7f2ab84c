#pragma once

#include <map>
#include <string>
#include <vector>

#include "tabular/laurent.hpp"
#include "tabular/report.hpp"
#include "tabular/table_algebra.hpp"
#include "tabular/tabular.hpp"

namespace tabular {

// Golden integer a + b*y with y^2 = y + 1, the ring Z[y]/(y^2 - y - 1).
// Every coefficient ring needed by the shipped cell data embeds here: plain
// integers as b = 0, and the eigenvalues of the golden decoration algebra
// as y and 1 - y.  Units are exactly the elements of norm +-1.
struct GInt {
  Int a{0}, b{0};

  GInt() = default;
  GInt(int v) : a(v) {}
  GInt(Int va, Int vb) : a(std::move(va)), b(std::move(vb)) {}

  static GInt y() { return GInt(Int(0), Int(1)); }

  bool is_zero() const { return a == 0 && b == 0; }
  // Image under the ring automorphism y -> 1 - y.
  GInt conj() const { return GInt(a + b, -b); }
  Int norm() const { return a * a + a * b - b * b; }
  bool is_unit() const {
    const Int n = norm();
    return n == 1 || n == -1;
  }

  GInt& operator+=(const GInt& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  GInt& operator-=(const GInt& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  friend GInt operator+(GInt x, const GInt& o) { return x += o; }
  friend GInt operator-(GInt x, const GInt& o) { return x -= o; }
  GInt operator-() const { return GInt(-a, -b); }
  friend GInt operator*(const GInt& x, const GInt& o) {
    // (a + by)(c + dy) = ac + bd + (ad + bc + bd) y
    return GInt(x.a * o.a + x.b * o.b, x.a * o.b + x.b * o.a + x.b * o.b);
  }
  GInt& operator*=(const GInt& o) { return *this = *this * o; }

  friend bool operator==(const GInt&, const GInt&) = default;
  friend bool operator<(const GInt& x, const GInt& o) {
    return x.a != o.a ? x.a < o.a : x.b < o.b;
  }
};

std::string gint_str(const GInt& g);
// Exact quotient x / d; throws std::domain_error when d does not divide x.
GInt gint_div_exact(const GInt& x, const GInt& d);
// Fraction-free determinant (Bareiss) over the golden integers.
GInt gint_det(std::vector<std::vector<GInt>> m);
// Inverse of a matrix whose determinant is a unit; throws std::domain_error
// otherwise.
std::vector<std::vector<GInt>> gint_inverse(const std::vector<std::vector<GInt>>& m);

// Laurent polynomials with golden-integer coefficients.
using GLaurent = BasicLaurent<GInt>;
std::string glaurent_str(const GLaurent& p);

// Golden-integer combination of table-algebra labels.
using GTableElem = std::map<int, GInt>;

// Cell datum for a table algebra: a poset of cells, a row set of size m per
// cell and basis elements C[s][t], with the algebra involution acting by
// transposition.  Checked exhaustively by verify_gamma_cell_datum.
struct GammaCellDatum {
  struct Cell {
    std::string name;
    int m = 0;
    std::vector<std::vector<GTableElem>> C;  // m x m, C[s][t]
  };
  std::string name;
  std::vector<Cell> cells;
  std::vector<std::vector<bool>> strictly_less;
};

// Shipped cell data, exercised by the test suite.
GammaCellDatum trivial_cell_datum();
// For Z[x]/(x^2 - x - 1): the chain datum with C = x - (1 - y), then 1.
// Genuinely needs y; over the plain integers no such datum exists.
GammaCellDatum golden_cell_datum();
// Group ring of S_t, t <= 3, with the inversion involution.  Cells follow
// partitions of t from the column shape upward; basis elements are sums
// over lower Bruhat intervals.
GammaCellDatum symmetric_group_cell_datum(int t);
// Picks a shipped datum matching the algebra.  Returns false (with a reason)
// when none applies.
bool cell_datum_for(const TableAlgebra& alg, GammaCellDatum& out, std::string* why);

// Basis, transposition and column-independence axioms for the table algebra
// itself, brute-forced over the whole basis.
Report verify_gamma_cell_datum(const TableAlgebra& alg, const GammaCellDatum& d);

// Cell datum for a tabular instance built by composing each table-cell label
// with a cell datum of its decoration algebra.  Cells are pairs
// (table cell, decoration cell) under the lexicographic product order; a row
// is a pair (tableau, decoration row), flattened as S*m + s.
struct LiftedCellDatum {
  struct Cell {
    std::string name;
    int lam = 0;    // table cell index in the instance
    int gcell = 0;  // cell index within the decoration datum
    int rows = 0;
    std::vector<std::vector<std::map<Label, GInt>>> C;  // rows x rows
  };
  std::vector<Cell> cells;
  std::vector<std::vector<bool>> strictly_less;
};

// data[i] is the datum for the decoration algebra of cell i.  Throws
// std::invalid_argument on shape mismatches (wrong cell count, datum rank
// not matching the decoration window).
LiftedCellDatum lift_cell_datum(const TabularInstance& inst,
                                const std::vector<GammaCellDatum>& data);

// Basis, transposition and column-independence axioms for the lifted datum,
// brute-forced over the instance window.  Requires finite rank.
Report verify_cellular(const TabularInstance& inst, const LiftedCellDatum& d);

}  // namespace tabular
