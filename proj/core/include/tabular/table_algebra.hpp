#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tabular/laurent.hpp"
#include "tabular/report.hpp"

namespace tabular {

// Integer combination of basis labels of a table algebra.
using TableElem = std::map<int, Int>;

void table_acc(TableElem& e, int label, const Int& c);
TableElem table_unit(int identity_label);
std::string table_elem_str(const TableElem& e, const std::function<std::string(int)>& name);

// Based ring with a distinguished basis containing 1, nonnegative integer
// structure constants and a basis-permuting involution.  Infinite families
// (Chebyshev, integer Laurent) expose a pure structure oracle plus an
// explicit enumeration window; products are always exact, windows only bound
// sweep sets.
class TableAlgebra {
 public:
  using MulFn = std::function<TableElem(int, int)>;
  using BarFn = std::function<int(int)>;
  using NameFn = std::function<std::string(int)>;
  using ValidFn = std::function<bool(int)>;

  TableAlgebra() = default;

  // Finite algebra from an explicit structure tensor.  bar must be a
  // permutation of the labels; deeper axioms are the verifier's business.
  static TableAlgebra custom_finite(std::string name, std::vector<std::string> labels,
                                    std::vector<int> bar,
                                    const std::vector<std::vector<TableElem>>& consts,
                                    int identity_label);
  // Group ring with the inversion involution.  mult[i][j] is the index of the
  // product; the table is validated (identity, associativity, inverses) and a
  // witness is reported through err on failure.
  static bool group_ring_checked(std::string name, const std::vector<std::vector<int>>& mult,
                                 std::vector<std::string> labels, TableAlgebra& out,
                                 std::string* err);
  static TableAlgebra group_ring(std::string name, const std::vector<std::vector<int>>& mult,
                                 std::vector<std::string> labels);
  static TableAlgebra cyclic_group(int m);
  static TableAlgebra symmetric_group(int t);
  // Z[x]/(x^2 - x - 1) with basis {1, x}, identity involution.
  static TableAlgebra golden();
  // Basis U_0, U_1, ... with U_k U_l = U_{l-k} + U_{l-k+2} + ... + U_{l+k}
  // (k <= l), identity involution.  window_max bounds sweep enumeration only.
  static TableAlgebra chebyshev(int window_max);
  // Basis x^k, k in Z, with x^j x^k = x^{j+k} and bar(x^k) = x^{-k}.
  static TableAlgebra integer_laurent(int window_halfwidth);

  const std::string& kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool finite() const { return finite_; }
  int rank() const { return rank_; }  // -1 when infinite
  const std::vector<int>& window() const { return window_; }
  int identity_label() const { return identity_; }
  bool valid_label(int l) const { return valid_ ? valid_(l) : (l >= 0 && l < rank_); }

  TableElem mul(int i, int j) const { return mul_(i, j); }
  int bar(int i) const { return bar_(i); }
  std::string label_name(int i) const { return name_fn_(i); }
  std::optional<int> label_by_name(const std::string& s) const;

  TableElem multiply(const TableElem& a, const TableElem& b) const;
  TableElem bar_elem(const TableElem& a) const;
  // Coefficient of basis element m in the product b_i b_j, and in an element.
  Int kappa(int m, int i, int j) const;
  static Int kappa_of(int m, const TableElem& e);
  // Bilinear form with orthonormal basis: h(b, b') = [b == b'].
  static Int form_h(const TableElem& a, const TableElem& b);
  static std::vector<int> supp(const TableElem& e);

  // Round-trippable text form (see README for the grammar).
  std::string spec_text() const;
  static bool from_spec_text(const std::string& text, TableAlgebra& out, std::string* err);

 private:
  std::string kind_ = "custom";
  std::string name_;
  bool finite_ = true;
  int rank_ = 0;
  int identity_ = 0;
  std::vector<int> window_;
  MulFn mul_;
  BarFn bar_;
  NameFn name_fn_;
  ValidFn valid_;
  int window_param_ = 0;  // for spec_text of infinite kinds
};

// Axioms of a normalized table algebra over the enumeration window:
// identity, nonnegative integer structure constants, involution
// anti-automorphism, the normalization condition on kappa, associativity,
// the h-form adjunction and the symmetry of kappa(1, .).
Report verify_table_axioms(const TableAlgebra& alg);

// Nondegeneracy of the regular-representation trace form over Q.
// Finite rank <= 12 only; throws std::invalid_argument otherwise.
bool semisimple_over_Q(const TableAlgebra& alg, std::string* detail = nullptr);

// Chebyshev basis change in Z[x]: x^k = sum_m c_m U_m and U_k = sum_m d_m x^m.
// Returned vectors are indexed by m = 0..k.
std::vector<Int> power_to_chebyshev(int k);
std::vector<Int> chebyshev_to_power(int k);

}  // namespace tabular
