#include "tabular/cellular.hpp"

#include <array>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "tabular/perm.hpp"

namespace tabular {

std::string gint_str(const GInt& g) {
  if (g.is_zero()) return "0";
  std::ostringstream os;
  if (g.a != 0) os << g.a.str();
  if (g.b != 0) {
    if (g.a != 0 && g.b > 0) os << "+";
    if (g.b == -1)
      os << "-";
    else if (g.b != 1)
      os << g.b.str();
    os << "y";
  }
  return os.str();
}

GInt gint_div_exact(const GInt& x, const GInt& d) {
  const Int n = d.norm();
  if (n == 0) throw std::domain_error("gint_div_exact: division by zero");
  const GInt num = x * d.conj();
  if (num.a % n != 0 || num.b % n != 0)
    throw std::domain_error("gint_div_exact: " + gint_str(d) + " does not divide " + gint_str(x));
  return GInt(num.a / n, num.b / n);
}

GInt gint_det(std::vector<std::vector<GInt>> m) {
  const int n = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("gint_det: not square");
  if (n == 0) return GInt(1);
  // Bareiss: fraction-free, every division exact in the domain.
  bool neg = false;
  GInt prev(1);
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      int r = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) {
          r = i;
          break;
        }
      if (r < 0) return GInt(0);
      std::swap(m[k], m[r]);
      neg = !neg;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m[i][j] = gint_div_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
      m[i][k] = GInt(0);
    }
    prev = m[k][k];
  }
  GInt det = m[n - 1][n - 1];
  return neg ? -det : det;
}

std::vector<std::vector<GInt>> gint_inverse(const std::vector<std::vector<GInt>>& m) {
  const int n = static_cast<int>(m.size());
  const GInt det = gint_det(m);
  if (!det.is_unit())
    throw std::domain_error("gint_inverse: determinant " + gint_str(det) + " is not a unit");
  // det^-1 = conj(det) / norm(det) with norm +-1.
  const GInt dinv = det.norm() == 1 ? det.conj() : -det.conj();
  std::vector<std::vector<GInt>> inv(n, std::vector<GInt>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<GInt>> minor;
      minor.reserve(n - 1);
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<GInt> row;
        row.reserve(n - 1);
        for (int c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      GInt cof = gint_det(std::move(minor));
      if ((i + j) % 2 == 1) cof = -cof;
      inv[i][j] = cof * dinv;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GInt s(0);
      for (int k = 0; k < n; ++k) s += m[i][k] * inv[k][j];
      if (!(s == GInt(i == j ? 1 : 0))) throw std::logic_error("gint_inverse: product check failed");
    }
  return inv;
}

std::string glaurent_str(const GLaurent& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& ts = p.terms();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << gint_str(it->second) << ")";
    if (it->first != 0) os << "v^" << it->first;
  }
  return os.str();
}

namespace {

// One cell of a datum with labels flattened to indices 0..N-1.
struct FlatCell {
  std::string name;
  int rows = 0;
  std::vector<std::vector<std::map<int, GInt>>> C;
};

struct FlatProblem {
  int N = 0;
  std::function<std::map<int, GLaurent>(int, int)> mul;  // basis label products
  std::vector<int> star;                                 // basis label permutation
  std::vector<FlatCell> cells;
  std::vector<std::vector<bool>> less;
  std::function<std::string(int)> name;
};

std::string flat_entry_str(const FlatProblem& p, const std::map<int, GInt>& e) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [l, c] : e) {
    if (!first) os << " + ";
    first = false;
    os << "(" << gint_str(c) << ")*" << p.name(l);
  }
  return os.str();
}

// Basis change, involution transposition and left-action column independence,
// brute-forced over all basis labels.  Linearity reduces the quantifier over
// the whole algebra to its basis.
Report check_cellular_flat(const FlatProblem& p, std::string title) {
  Report rep;
  rep.title = std::move(title);

  const int ncells = static_cast<int>(p.cells.size());
  bool shaped = !p.cells.empty();
  std::string shapewit = shaped ? "" : "datum has no cells";
  if (static_cast<int>(p.less.size()) != ncells) {
    shaped = false;
    shapewit = "order table size mismatch";
  } else {
    for (const auto& row : p.less)
      if (static_cast<int>(row.size()) != ncells) {
        shaped = false;
        shapewit = "order table size mismatch";
      }
  }
  for (int ci = 0; shaped && ci < ncells; ++ci) {
    const FlatCell& cell = p.cells[ci];
    if (cell.rows < 1 || static_cast<int>(cell.C.size()) != cell.rows) {
      shaped = false;
      shapewit = "cell " + cell.name + ": row count mismatch";
      break;
    }
    for (int s = 0; shaped && s < cell.rows; ++s) {
      if (static_cast<int>(cell.C[s].size()) != cell.rows) {
        shaped = false;
        shapewit = "cell " + cell.name + ": column count mismatch";
        break;
      }
      for (int t = 0; t < cell.rows; ++t) {
        if (cell.C[s][t].empty()) {
          shaped = false;
          shapewit = "cell " + cell.name + ": zero entry at (" + std::to_string(s) + "," +
                     std::to_string(t) + ")";
          break;
        }
        for (const auto& [l, c] : cell.C[s][t])
          if (l < 0 || l >= p.N || c.is_zero()) {
            shaped = false;
            shapewit = "cell " + cell.name + ": bad term at (" + std::to_string(s) + "," +
                       std::to_string(t) + ")";
            break;
          }
      }
    }
  }
  rep.add("cell datum is well formed", shaped, shapewit);
  if (!shaped) return rep;

  int total = 0;
  for (const auto& c : p.cells) total += c.rows * c.rows;
  rep.add("cell index pairs count the basis", total == p.N,
          "pairs = " + std::to_string(total) + ", basis = " + std::to_string(p.N));

  // Row r of the change matrix is the cell element at flat position r.
  std::vector<std::array<int, 3>> rowlab;  // (cell, s, t)
  std::vector<std::vector<GInt>> B;
  if (total == p.N) {
    for (int ci = 0; ci < ncells; ++ci)
      for (int s = 0; s < p.cells[ci].rows; ++s)
        for (int t = 0; t < p.cells[ci].rows; ++t) {
          rowlab.push_back({ci, s, t});
          std::vector<GInt> row(p.N);
          for (const auto& [l, c] : p.cells[ci].C[s][t]) row[l] += c;
          B.push_back(std::move(row));
        }
  }
  GInt det(0);
  if (total == p.N) det = gint_det(B);
  rep.add("change of basis to the cell elements is unimodular", total == p.N && det.is_unit(),
          "det = " + gint_str(det));

  {
    bool ok = true;
    std::string wit;
    for (int ci = 0; ci < ncells; ++ci) {
      const FlatCell& cell = p.cells[ci];
      for (int s = 0; s < cell.rows && ok; ++s)
        for (int t = 0; t < cell.rows && ok; ++t) {
          std::map<int, GInt> starred;
          for (const auto& [l, c] : cell.C[s][t]) starred[p.star[l]] += c;
          for (auto it = starred.begin(); it != starred.end();)
            it = it->second.is_zero() ? starred.erase(it) : std::next(it);
          if (starred != cell.C[t][s]) {
            ok = false;
            wit = "cell " + cell.name + " (" + std::to_string(s) + "," + std::to_string(t) +
                  "): got " + flat_entry_str(p, starred) + ", want " +
                  flat_entry_str(p, cell.C[t][s]);
          }
        }
    }
    rep.add("the involution transposes the cell basis", ok, wit);
  }

  if (total != p.N || !det.is_unit()) return rep;  // no coordinates without a basis

  const std::vector<std::vector<GInt>> Binv = gint_inverse(B);
  // x = sum_r coords[r] * row_r, so coords = (B^T)^-1 x.
  const auto coords = [&](const std::map<int, GLaurent>& x) {
    std::vector<GLaurent> c(p.N);
    for (const auto& [l, poly] : x)
      for (int r = 0; r < p.N; ++r)
        if (!Binv[l][r].is_zero()) c[r] += poly.scaled(Binv[l][r]);
    return c;
  };

  bool stay_ok = true, col_ok = true, indep_ok = true;
  std::string stay_w, col_w, indep_w;
  for (int g = 0; g < p.N; ++g) {
    for (int ci = 0; ci < ncells; ++ci) {
      const FlatCell& cell = p.cells[ci];
      for (int s = 0; s < cell.rows; ++s) {
        std::map<int, GLaurent> ref;
        for (int t = 0; t < cell.rows; ++t) {
          std::map<int, GLaurent> prod;
          for (const auto& [l, co] : cell.C[s][t])
            for (const auto& [z, poly] : p.mul(g, l)) {
              GLaurent& acc = prod[z];
              acc += poly.scaled(co);
              if (acc.is_zero()) prod.erase(z);
            }
          const std::vector<GLaurent> cvec = coords(prod);
          std::map<int, GLaurent> rows;
          for (int r = 0; r < p.N; ++r) {
            if (cvec[r].is_zero()) continue;
            const auto [c2, s2, t2] = rowlab[r];
            if (c2 == ci) {
              if (t2 != t) {
                if (col_ok) {
                  col_ok = false;
                  col_w = p.name(g) + " * C[" + cell.name + ";" + std::to_string(s) + "," +
                          std::to_string(t) + "] hits column " + std::to_string(t2) +
                          " with coefficient " + glaurent_str(cvec[r]);
                }
              } else {
                rows[s2] = cvec[r];
              }
            } else if (!p.less[c2][ci]) {
              if (stay_ok) {
                stay_ok = false;
                stay_w = p.name(g) + " * C[" + cell.name + ";" + std::to_string(s) + "," +
                         std::to_string(t) + "] hits cell " + p.cells[c2].name +
                         " with coefficient " + glaurent_str(cvec[r]);
              }
            }
          }
          if (t == 0) {
            ref = std::move(rows);
          } else if (rows != ref && indep_ok) {
            indep_ok = false;
            indep_w = p.name(g) + " * C[" + cell.name + ";" + std::to_string(s) +
                      ",t]: rows at t=0 differ from rows at t=" + std::to_string(t);
          }
        }
      }
    }
  }
  rep.add("left multiples stay inside the cell's order ideal", stay_ok, stay_w);
  rep.add("left multiplication preserves the column index", col_ok, col_w);
  rep.add("row coefficients are independent of the column", indep_ok, indep_w);
  return rep;
}

}  // namespace

GammaCellDatum trivial_cell_datum() {
  GammaCellDatum d;
  d.name = "trivial";
  GammaCellDatum::Cell c;
  c.name = "e";
  c.m = 1;
  c.C = {{GTableElem{{0, GInt(1)}}}};
  d.cells.push_back(std::move(c));
  d.strictly_less = {{false}};
  return d;
}

GammaCellDatum golden_cell_datum() {
  GammaCellDatum d;
  d.name = "golden-chain";
  // Low cell: x - (1 - y), an eigenvector of x with eigenvalue y.
  GammaCellDatum::Cell low;
  low.name = "low";
  low.m = 1;
  low.C = {{GTableElem{{0, GInt(Int(-1), Int(1))}, {1, GInt(1)}}}};
  GammaCellDatum::Cell high;
  high.name = "high";
  high.m = 1;
  high.C = {{GTableElem{{0, GInt(1)}}}};
  d.cells.push_back(std::move(low));
  d.cells.push_back(std::move(high));
  d.strictly_less = {{false, true}, {false, false}};
  return d;
}

GammaCellDatum symmetric_group_cell_datum(int t) {
  if (t < 1 || t > 3)
    throw std::invalid_argument("symmetric_group_cell_datum: t = " + std::to_string(t));
  if (t == 1) {
    GammaCellDatum d = trivial_cell_datum();
    d.name = "S1";
    return d;
  }
  const std::vector<Perm> ps = all_perms(t);
  const auto idx = [&ps](const Perm& p) {
    for (int i = 0; i < static_cast<int>(ps.size()); ++i)
      if (ps[i] == p) return i;
    throw std::logic_error("symmetric_group_cell_datum: permutation not found");
  };
  // Sum over a lower Bruhat interval, all coefficients 1.
  const auto interval = [&idx](std::initializer_list<Perm> ws) {
    GTableElem e;
    for (const Perm& w : ws) e[idx(w)] = GInt(1);
    return e;
  };
  GammaCellDatum d;
  d.name = "S" + std::to_string(t);
  if (t == 2) {
    const Perm e = Perm::identity(2), s({1, 0});
    GammaCellDatum::Cell lo, hi;
    lo.name = "(1,1)";
    lo.m = 1;
    lo.C = {{interval({e, s})}};
    hi.name = "(2)";
    hi.m = 1;
    hi.C = {{interval({e})}};
    d.cells = {std::move(lo), std::move(hi)};
    d.strictly_less = {{false, true}, {false, false}};
    return d;
  }
  const Perm e = Perm::identity(3), s1({1, 0, 2}), s2({0, 2, 1});
  const Perm s1s2 = s1.then(s2), s2s1 = s2.then(s1), w0 = s1.then(s2).then(s1);
  GammaCellDatum::Cell col, mid, row;
  col.name = "(1,1,1)";
  col.m = 1;
  col.C = {{interval({e, s1, s2, s1s2, s2s1, w0})}};
  mid.name = "(2,1)";
  mid.m = 2;
  mid.C = {{interval({e, s1}), interval({e, s1, s2, s1s2})},
           {interval({e, s1, s2, s2s1}), interval({e, s2})}};
  row.name = "(3)";
  row.m = 1;
  row.C = {{interval({e})}};
  d.cells = {std::move(col), std::move(mid), std::move(row)};
  d.strictly_less = {{false, true, true}, {false, false, true}, {false, false, false}};
  return d;
}

bool cell_datum_for(const TableAlgebra& alg, GammaCellDatum& out, std::string* why) {
  if (alg.kind() == "golden") {
    out = golden_cell_datum();
    return true;
  }
  if (alg.finite() && alg.rank() == 1) {
    out = trivial_cell_datum();
    return true;
  }
  if (alg.name() == "S2" && alg.rank() == 2) {
    out = symmetric_group_cell_datum(2);
    return true;
  }
  if (alg.name() == "S3" && alg.rank() == 6) {
    out = symmetric_group_cell_datum(3);
    return true;
  }
  if (why) *why = "no shipped cell datum for algebra '" + alg.name() + "'";
  return false;
}

Report verify_gamma_cell_datum(const TableAlgebra& alg, const GammaCellDatum& d) {
  if (!alg.finite()) {
    Report rep;
    rep.title = "cell datum: " + alg.name() + " / " + d.name;
    rep.add("algebra has finite rank", false, "cell data need the whole basis");
    return rep;
  }
  FlatProblem p;
  p.N = alg.rank();
  p.mul = [&alg](int i, int j) {
    std::map<int, GLaurent> out;
    for (const auto& [l, c] : alg.mul(i, j)) out[l] = GLaurent::constant(GInt(c, Int(0)));
    return out;
  };
  p.star.resize(p.N);
  for (int i = 0; i < p.N; ++i) p.star[i] = alg.bar(i);
  for (const auto& c : d.cells) p.cells.push_back({c.name, c.m, c.C});
  p.less = d.strictly_less;
  p.name = [&alg](int i) { return alg.label_name(i); };
  return check_cellular_flat(p, "cell datum: " + alg.name() + " / " + d.name);
}

LiftedCellDatum lift_cell_datum(const TabularInstance& inst,
                                const std::vector<GammaCellDatum>& data) {
  if (static_cast<int>(data.size()) != inst.n_cells())
    throw std::invalid_argument("lift_cell_datum: need one decoration datum per cell");
  for (int lam = 0; lam < inst.n_cells(); ++lam) {
    int total = 0;
    for (const auto& c : data[lam].cells) total += c.m * c.m;
    if (total != static_cast<int>(inst.cells[lam].b_window.size()))
      throw std::invalid_argument("lift_cell_datum: datum for cell " + inst.cells[lam].name +
                                  " covers " + std::to_string(total) + " of " +
                                  std::to_string(inst.cells[lam].b_window.size()) +
                                  " decorations");
  }
  LiftedCellDatum out;
  std::vector<std::pair<int, int>> pairs;  // (table cell, decoration cell)
  for (int lam = 0; lam < inst.n_cells(); ++lam) {
    const int mt = static_cast<int>(inst.cells[lam].tableaux.size());
    for (int g = 0; g < static_cast<int>(data[lam].cells.size()); ++g) {
      const auto& gc = data[lam].cells[g];
      LiftedCellDatum::Cell cell;
      cell.name = inst.cells[lam].name + "." + gc.name;
      cell.lam = lam;
      cell.gcell = g;
      cell.rows = mt * gc.m;
      cell.C.assign(cell.rows, std::vector<std::map<Label, GInt>>(cell.rows));
      for (int S = 0; S < mt; ++S)
        for (int s = 0; s < gc.m; ++s)
          for (int T = 0; T < mt; ++T)
            for (int t = 0; t < gc.m; ++t) {
              std::map<Label, GInt>& entry = cell.C[S * gc.m + s][T * gc.m + t];
              for (const auto& [b, co] : gc.C[s][t]) entry[Label{lam, S, b, T}] = co;
            }
      out.cells.push_back(std::move(cell));
      pairs.push_back({lam, g});
    }
  }
  // Lexicographic product of the cell order with each decoration order.
  const int n = static_cast<int>(pairs.size());
  out.strictly_less.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto [l1, g1] = pairs[i];
      const auto [l2, g2] = pairs[j];
      out.strictly_less[i][j] =
          l1 != l2 ? inst.strictly_less[l1][l2] : bool(data[l1].strictly_less[g1][g2]);
    }
  return out;
}

Report verify_cellular(const TabularInstance& inst, const LiftedCellDatum& d) {
  Report rep;
  rep.title = "cellularity: " + inst.name;
  if (!inst.finite_rank) {
    rep.add("instance has finite rank", false, "window does not exhaust the basis");
    return rep;
  }
  const std::vector<Label>& W = inst.window();
  std::map<Label, int> idx;
  for (int i = 0; i < static_cast<int>(W.size()); ++i) idx[W[i]] = i;

  FlatProblem p;
  p.N = static_cast<int>(W.size());
  p.mul = [&inst, &W, &idx](int i, int j) {
    std::map<int, GLaurent> out;
    for (const auto& [l, poly] : inst.mul(W[i], W[j])) {
      GLaurent q;
      for (const auto& [ex, c] : poly.terms()) q += GLaurent::term(ex, GInt(c, Int(0)));
      out[idx.at(l)] = q;
    }
    return out;
  };
  // The datum is checked against the involution the instance ships, not the
  // structural one, so a broken star is caught here too.
  p.star.resize(p.N);
  for (int i = 0; i < p.N; ++i) {
    const auto it = idx.find(inst.star(W[i]));
    if (it == idx.end()) {
      rep.add("involution stays in the window", false, "star of " + inst.label_str(W[i]));
      return rep;
    }
    p.star[i] = it->second;
  }
  for (const auto& c : d.cells) {
    FlatCell fc;
    fc.name = c.name;
    fc.rows = c.rows;
    fc.C.assign(c.rows, std::vector<std::map<int, GInt>>(c.rows));
    for (int s = 0; s < c.rows; ++s)
      for (int t = 0; t < c.rows; ++t)
        for (const auto& [l, co] : c.C[s][t]) {
          const auto it = idx.find(l);
          if (it == idx.end()) {
            rep.add("lifted basis labels lie in the window", false,
                    "cell " + c.name + " uses " + inst.label_str(l));
            return rep;
          }
          fc.C[s][t][it->second] = co;
        }
    p.cells.push_back(std::move(fc));
  }
  p.less = d.strictly_less;
  p.name = [&inst, &W](int i) { return inst.label_str(W[i]); };
  return check_cellular_flat(p, "cellularity: " + inst.name);
}

}  // namespace tabular
