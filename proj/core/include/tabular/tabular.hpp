#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tabular/laurent.hpp"
#include "tabular/table_algebra.hpp"

namespace tabular {

// Basis label C_{S,T}^b of cell lam.  S and T index the cell's tableaux,
// b is a label of the cell's table algebra.
struct Label {
  int lam = 0;
  int S = 0;
  int b = 0;
  int T = 0;
  friend auto operator<=>(const Label&, const Label&) = default;
};

// A-linear combination of basis labels (no zero coefficients stored).
using Element = std::map<Label, Laurent>;

void elem_acc(Element& e, const Label& l, const Laurent& c);
Element elem_add(Element a, const Element& b);
Element elem_scale(const Element& a, const Laurent& c);
Laurent elem_coeff(const Element& a, const Label& l);
bool elem_eq(const Element& a, const Element& b);

struct CellData {
  std::string name;
  std::vector<std::string> tableaux;
  TableAlgebra gamma;
  std::vector<int> b_window;       // sweep window for the b component
  std::optional<int> a_override;   // closed-form a value for this cell
};

// A based algebra with cell structure: finite poset of cells, per-cell
// tableaux and table algebra, star and optionally a trace.  Products are
// exact; the window only bounds sweep enumeration, and instances whose b
// component is infinite simply produce labels outside the window.
class TabularInstance {
 public:
  using MulFn = std::function<Element(const Label&, const Label&)>;
  using StarFn = std::function<Label(const Label&)>;
  using TraceFn = std::function<Laurent(const Label&)>;
  using LabelStrFn = std::function<std::string(const Label&)>;
  using LabelParseFn = std::function<std::optional<Label>(const std::string&)>;

  std::string name;
  std::vector<CellData> cells;
  // strictly_less[a][b]: cell a is strictly below cell b
  std::vector<std::vector<bool>> strictly_less;
  MulFn raw_mul;
  StarFn star_fn;              // empty: structural star
  TraceFn trace_fn;            // empty: no trace shipped
  std::vector<Label> idempotents;
  Element unit;
  LabelStrFn label_str_fn;
  LabelParseFn label_parse_fn;
  bool finite_rank = false;    // window enumerates the full basis

  // Builds the window (cell-major, then S, b, T order) and validates shapes.
  void finalize();

  const std::vector<Label>& window() const { return window_; }
  std::vector<Label> cell_window(int lam) const;
  bool valid_label(const Label& l) const;
  int n_cells() const { return static_cast<int>(cells.size()); }

  Element mul(const Label& x, const Label& y) const;  // memoized
  Element mul_elems(const Element& x, const Element& y) const;
  Label star(const Label& l) const;
  Element star_elem(const Element& e) const;
  Label structural_star(const Label& l) const;
  bool has_trace() const { return static_cast<bool>(trace_fn); }
  Laurent trace(const Label& l) const;
  Laurent trace_elem(const Element& e) const;

  bool cell_lower(int lam1, int lam2) const { return strictly_less[lam1][lam2]; }
  // Drops components in cells strictly below lam.
  Element reduce_mod_lower(const Element& e, int lam) const;

  std::string label_str(const Label& l) const;
  std::optional<Label> label_parse(const std::string& s) const;
  std::string elem_str(const Element& e) const;

  // Fills the product memo for all window pairs; thread count affects wall
  // time only.
  void precompute_products(unsigned threads = 1) const;

 private:
  // behind a shared_ptr so instances stay movable; copies share the cache
  struct Memo {
    std::map<std::pair<Label, Label>, Element> products;
    bool full = false;  // every window pair is present
    std::mutex mu;
  };
  std::vector<Label> window_;
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

// Per-cell a values: the top degree the structure constants reach on targets
// in the cell.  Computed by windowed brute force; declared closed forms are
// cross-checked against the sweep (and win on disagreement, which is
// reported).  Constancy across each cell is also checked.
struct AValues {
  std::vector<int> per_cell;
  int of_cell(int lam) const { return per_cell[lam]; }
  int of_label(const Label& l) const { return per_cell[l.lam]; }
};

AValues compute_a_values(const TabularInstance& inst, struct Report* rep = nullptr,
                         unsigned threads = 1);

// Top coefficient of the structure constant at the cell's a value.
Int gamma_coeff(const TabularInstance& inst, const AValues& a, const Label& x, const Label& y,
                const Label& z);

}  // namespace tabular
