#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tabular/laurent.hpp"
#include "tabular/report.hpp"
#include "tabular/tabular.hpp"

namespace tabular {

// Simply laced Coxeter graph on nodes 1..n: a path, a path with a short
// fork at one end, or a path with a single length-one branch off the third
// node.  The shape is validated on construction.
class CoxeterGraph {
 public:
  static CoxeterGraph type_a(int n);
  // Chain 1..n-1 with node n attached to node n-2.  Needs n >= 4.
  static CoxeterGraph type_d(int n);
  // Chain 1..n-1 with node n attached to node 3.  Needs n >= 6; the long
  // branch may be arbitrary.
  static CoxeterGraph type_e(int n);
  static CoxeterGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int nodes() const { return n_; }
  bool adjacent(int a, int b) const { return adj_[a - 1][b - 1]; }
  const std::string& shape() const { return shape_; }  // "A", "D" or "E"
  std::string name() const { return shape_ + std::to_string(n_); }

 private:
  int n_ = 0;
  std::vector<std::vector<bool>> adj_;
  std::string shape_;
};

// Reduced word in the generators, with 1-based node indices.
using Word = std::vector<int>;

// "e" for the empty word, digits run together below ten nodes, otherwise
// dot-separated.
std::string word_str(const CoxeterGraph& g, const Word& w);
std::optional<Word> word_parse(const CoxeterGraph& g, const std::string& s);

// Lexicographically least word in the commutation class.  The input must be
// a reduced word of a fully commutative element.
Word canonical_word(const CoxeterGraph& g, Word w);

// Word-level test that w is reduced and fully commutative: between any two
// consecutive occurrences of a letter there are at least two neighbors of
// that letter.
bool word_is_fc(const CoxeterGraph& g, const Word& w);

// Reversal on the basis: the canonical word of the reversed element.
Word star_word(const CoxeterGraph& g, const Word& w);

// b_i * b_w = [2]^m b_z on the monomial basis; returns (m, z) with z
// canonical.  Throws std::logic_error if the rewriting fails to land on a
// basis word, which would indicate a rule bug.
std::pair<int, Word> mul_generator(const CoxeterGraph& g, int i, const Word& w);
// b_x * b_y = [2]^m b_z by rewriting the concatenation to its normal form.
std::pair<int, Word> mul_monomials(const CoxeterGraph& g, const Word& x, const Word& y);

struct WcSet {
  std::vector<Word> words;  // canonical forms, shortlex order
  bool complete = false;    // closure stabilized within the caps
};
// Breadth-first closure of {e} under right multiplication by generators,
// keeping canonical forms of the fully commutative elements.  Hitting either
// cap leaves the set flagged incomplete.
WcSet enumerate_wc(const CoxeterGraph& g, int length_cap = 64, int size_budget = 20000);

// The Temperley-Lieb algebra of the graph as a tabular instance.  Cells are
// the two-sided classes of the multiplication preorder, tableaux index the
// left classes inside a cell, the decoration algebra is trivial and the
// trace is the a-weighted sum of cell-module traces.
struct TLAdeInstance {
  CoxeterGraph graph;
  TabularInstance inst;
  std::vector<Word> basis;       // basis index -> canonical word, shortlex
  std::map<Word, int> index;     // canonical word -> basis index
  std::vector<Label> label_of;   // basis index -> instance label
  AValues a;
  Report build_report;           // pairing bijection, star stability, a sweep
};
TLAdeInstance build_tl_ade(const CoxeterGraph& g, int length_cap = 64,
                           int size_budget = 20000);

// Generator action on the cell module of one cell: matrices over the
// tableaux of the cell, gen[i-1][row][column] for b_i.
struct CellModuleRep {
  int lam = 0;
  std::vector<std::vector<std::vector<Laurent>>> gen;
};
CellModuleRep cell_module(const TLAdeInstance& t, int lam);
// Defining relations as matrix identities, column independence of the
// extracted action, and agreement with the shipped trace.
Report verify_cell_module(const TLAdeInstance& t, const CellModuleRep& rep);

}  // namespace tabular
