#include "tabular/table_algebra.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "tabular/perm.hpp"

namespace tabular {

void table_acc(TableElem& e, int label, const Int& c) {
  if (c == 0) return;
  auto it = e.find(label);
  if (it == e.end()) {
    e.emplace(label, c);
  } else {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

TableElem table_unit(int identity_label) { return TableElem{{identity_label, Int(1)}}; }

std::string table_elem_str(const TableElem& e, const std::function<std::string(int)>& name) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [l, c] : e) {
    Int cc = c;
    if (cc < 0) {
      os << '-';
      cc = -cc;
    } else if (!first) {
      os << '+';
    }
    first = false;
    if (cc != 1) os << cc.str() << '*';
    os << name(l);
  }
  return os.str();
}

TableAlgebra TableAlgebra::custom_finite(std::string name, std::vector<std::string> labels,
                                         std::vector<int> bar,
                                         const std::vector<std::vector<TableElem>>& consts,
                                         int identity_label) {
  const int r = static_cast<int>(labels.size());
  if (static_cast<int>(bar.size()) != r || static_cast<int>(consts.size()) != r)
    throw std::invalid_argument("custom_finite: size mismatch");
  for (const auto& row : consts)
    if (static_cast<int>(row.size()) != r) throw std::invalid_argument("custom_finite: ragged tensor");
  Perm barp(bar);  // validates permutation
  TableAlgebra a;
  a.kind_ = "custom";
  a.name_ = std::move(name);
  a.finite_ = true;
  a.rank_ = r;
  a.identity_ = identity_label;
  a.window_.resize(r);
  for (int i = 0; i < r; ++i) a.window_[i] = i;
  auto tensor = std::make_shared<std::vector<std::vector<TableElem>>>(consts);
  a.mul_ = [tensor](int i, int j) { return (*tensor)[i][j]; };
  a.bar_ = [barp](int i) { return barp(i); };
  auto names = std::make_shared<std::vector<std::string>>(std::move(labels));
  a.name_fn_ = [names](int i) { return (*names)[i]; };
  return a;
}

bool TableAlgebra::group_ring_checked(std::string name, const std::vector<std::vector<int>>& mult,
                                      std::vector<std::string> labels, TableAlgebra& out,
                                      std::string* err) {
  auto fail = [&](const std::string& m) {
    if (err) *err = m;
    return false;
  };
  const int r = static_cast<int>(mult.size());
  if (r == 0) return fail("empty table");
  for (const auto& row : mult) {
    if (static_cast<int>(row.size()) != r) return fail("table is not square");
    for (int v : row)
      if (v < 0 || v >= r) return fail("entry out of range");
  }
  if (static_cast<int>(labels.size()) != r) return fail("label count mismatch");
  // identity
  int e = -1;
  for (int i = 0; i < r; ++i) {
    bool ok = true;
    for (int j = 0; j < r; ++j)
      if (mult[i][j] != j || mult[j][i] != j) {
        ok = false;
        break;
      }
    if (ok) {
      e = i;
      break;
    }
  }
  if (e < 0) return fail("no identity element");
  // associativity
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        if (mult[mult[i][j]][k] != mult[i][mult[j][k]])
          return fail("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) +
                      "," + std::to_string(k) + ")");
  // two-sided inverses
  std::vector<int> inv(r, -1);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j)
      if (mult[i][j] == e && mult[j][i] == e) {
        inv[i] = j;
        break;
      }
    if (inv[i] < 0) return fail("element " + std::to_string(i) + " has no inverse");
  }
  TableAlgebra a;
  a.kind_ = "group";
  a.name_ = std::move(name);
  a.finite_ = true;
  a.rank_ = r;
  a.identity_ = e;
  a.window_.resize(r);
  for (int i = 0; i < r; ++i) a.window_[i] = i;
  auto table = std::make_shared<std::vector<std::vector<int>>>(mult);
  a.mul_ = [table](int i, int j) { return table_unit((*table)[i][j]); };
  auto invp = std::make_shared<std::vector<int>>(std::move(inv));
  a.bar_ = [invp](int i) { return (*invp)[i]; };
  auto names = std::make_shared<std::vector<std::string>>(std::move(labels));
  a.name_fn_ = [names](int i) { return (*names)[i]; };
  out = std::move(a);
  return true;
}

TableAlgebra TableAlgebra::group_ring(std::string name, const std::vector<std::vector<int>>& mult,
                                      std::vector<std::string> labels) {
  TableAlgebra a;
  std::string err;
  if (!group_ring_checked(std::move(name), mult, std::move(labels), a, &err))
    throw std::invalid_argument("group_ring: " + err);
  return a;
}

TableAlgebra TableAlgebra::cyclic_group(int m) {
  if (m < 1) throw std::invalid_argument("cyclic_group: m < 1");
  std::vector<std::vector<int>> mult(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    labels[i] = "g" + std::to_string(i);
    for (int j = 0; j < m; ++j) mult[i][j] = (i + j) % m;
  }
  labels[0] = "id";
  return group_ring("Z" + std::to_string(m), mult, labels);
}

TableAlgebra TableAlgebra::symmetric_group(int t) {
  std::vector<Perm> ps = all_perms(t);
  const int r = static_cast<int>(ps.size());
  std::map<Perm, int> idx;
  for (int i = 0; i < r; ++i) idx[ps[i]] = i;
  std::vector<std::vector<int>> mult(r, std::vector<int>(r));
  std::vector<std::string> labels(r);
  for (int i = 0; i < r; ++i) {
    labels[i] = ps[i].cycle_str();
    for (int j = 0; j < r; ++j) mult[i][j] = idx.at(ps[i].then(ps[j]));
  }
  return group_ring("S" + std::to_string(t), mult, labels);
}

TableAlgebra TableAlgebra::golden() {
  // basis {1, x}; x*x = 1 + x
  std::vector<std::vector<TableElem>> consts(2, std::vector<TableElem>(2));
  consts[0][0] = table_unit(0);
  consts[0][1] = table_unit(1);
  consts[1][0] = table_unit(1);
  consts[1][1] = TableElem{{0, Int(1)}, {1, Int(1)}};
  TableAlgebra a = custom_finite("golden", {"1", "x"}, {0, 1}, consts, 0);
  a.kind_ = "golden";
  return a;
}

TableAlgebra TableAlgebra::chebyshev(int window_max) {
  if (window_max < 0) throw std::invalid_argument("chebyshev: negative window");
  TableAlgebra a;
  a.kind_ = "chebyshev";
  a.name_ = "chebyshev";
  a.finite_ = false;
  a.rank_ = -1;
  a.identity_ = 0;
  a.window_param_ = window_max;
  for (int k = 0; k <= window_max; ++k) a.window_.push_back(k);
  a.mul_ = [](int i, int j) {
    const int k = std::min(i, j), l = std::max(i, j);
    TableElem e;
    for (int t = 0; t <= k; ++t) table_acc(e, l - k + 2 * t, Int(1));
    return e;
  };
  a.bar_ = [](int i) { return i; };
  a.name_fn_ = [](int i) { return "U" + std::to_string(i); };
  a.valid_ = [](int i) { return i >= 0; };
  return a;
}

TableAlgebra TableAlgebra::integer_laurent(int window_halfwidth) {
  if (window_halfwidth < 0) throw std::invalid_argument("integer_laurent: negative window");
  TableAlgebra a;
  a.kind_ = "integer_laurent";
  a.name_ = "integer_laurent";
  a.finite_ = false;
  a.rank_ = -1;
  a.identity_ = 0;
  a.window_param_ = window_halfwidth;
  for (int k = -window_halfwidth; k <= window_halfwidth; ++k) a.window_.push_back(k);
  a.mul_ = [](int i, int j) { return table_unit(i + j); };
  a.bar_ = [](int i) { return -i; };
  a.name_fn_ = [](int i) { return "x^" + std::to_string(i); };
  a.valid_ = [](int) { return true; };
  return a;
}

std::optional<int> TableAlgebra::label_by_name(const std::string& s) const {
  if (finite_) {
    for (int i = 0; i < rank_; ++i)
      if (name_fn_(i) == s) return i;
    return std::nullopt;
  }
  if (kind_ == "chebyshev") {
    if (s.size() > 1 && s[0] == 'U') {
      try {
        int k = std::stoi(s.substr(1));
        if (k >= 0) return k;
      } catch (...) {
      }
    }
    return std::nullopt;
  }
  if (kind_ == "integer_laurent") {
    if (s.rfind("x^", 0) == 0) {
      try {
        return std::stoi(s.substr(2));
      } catch (...) {
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

TableElem TableAlgebra::multiply(const TableElem& a, const TableElem& b) const {
  TableElem out;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) {
      const Int c = ci * cj;
      for (const auto& [k, ck] : mul_(i, j)) table_acc(out, k, c * ck);
    }
  return out;
}

TableElem TableAlgebra::bar_elem(const TableElem& a) const {
  TableElem out;
  for (const auto& [i, c] : a) table_acc(out, bar_(i), c);
  return out;
}

Int TableAlgebra::kappa(int m, int i, int j) const { return kappa_of(m, mul_(i, j)); }

Int TableAlgebra::kappa_of(int m, const TableElem& e) {
  auto it = e.find(m);
  return it == e.end() ? Int(0) : it->second;
}

Int TableAlgebra::form_h(const TableElem& a, const TableElem& b) {
  Int s = 0;
  for (const auto& [i, c] : a) s += c * kappa_of(i, b);
  return s;
}

std::vector<int> TableAlgebra::supp(const TableElem& e) {
  std::vector<int> out;
  out.reserve(e.size());
  for (const auto& [l, c] : e) out.push_back(l);
  return out;
}

std::string TableAlgebra::spec_text() const {
  std::ostringstream os;
  os << "table-spec v1\n";
  os << "kind " << kind_ << "\n";
  if (!name_.empty()) os << "name " << name_ << "\n";
  if (!finite_) {
    os << "window " << window_param_ << "\n";
    return os.str();
  }
  if (kind_ == "golden") return os.str();
  os << "rank " << rank_ << "\n";
  os << "labels";
  for (int i = 0; i < rank_; ++i) os << ' ' << name_fn_(i);
  os << "\nbar";
  for (int i = 0; i < rank_; ++i) os << ' ' << bar_(i);
  os << "\nconsts\n";
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      for (const auto& [k, c] : mul_(i, j)) os << i << ' ' << j << ' ' << k << ' ' << c.str() << "\n";
  os << "end\n";
  return os.str();
}

bool TableAlgebra::from_spec_text(const std::string& text, TableAlgebra& out, std::string* err) {
  auto fail = [&](const std::string& m) {
    if (err) *err = m;
    return false;
  };
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "table-spec v1") return fail("missing 'table-spec v1' header");
  std::string kind, name;
  int rank = -1, window = -1;
  std::vector<std::string> labels;
  std::vector<int> bar;
  std::vector<std::vector<TableElem>> consts;
  bool have_consts = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "kind") {
      ls >> kind;
    } else if (key == "name") {
      ls >> name;
    } else if (key == "rank") {
      ls >> rank;
    } else if (key == "window") {
      ls >> window;
    } else if (key == "labels") {
      std::string t;
      while (ls >> t) labels.push_back(t);
    } else if (key == "bar") {
      int v;
      while (ls >> v) bar.push_back(v);
    } else if (key == "consts") {
      if (rank <= 0) return fail("consts before rank");
      consts.assign(rank, std::vector<TableElem>(rank));
      while (std::getline(is, line)) {
        if (line == "end") break;
        if (line.empty()) continue;
        std::istringstream cs(line);
        int i, j, k;
        std::string cstr;
        if (!(cs >> i >> j >> k >> cstr)) return fail("malformed consts line: " + line);
        if (i < 0 || i >= rank || j < 0 || j >= rank || k < 0 || k >= rank)
          return fail("consts index out of range: " + line);
        Int c;
        try {
          c = Int(cstr);
        } catch (...) {
          return fail("bad coefficient: " + cstr);
        }
        if (consts[i][j].count(k)) return fail("duplicate consts entry: " + line);
        table_acc(consts[i][j], k, c);
      }
      have_consts = true;
    } else {
      return fail("unknown key: " + key);
    }
  }
  if (kind == "golden") {
    out = golden();
    return true;
  }
  if (kind == "chebyshev") {
    if (window < 0) return fail("chebyshev needs window");
    out = chebyshev(window);
    return true;
  }
  if (kind == "integer_laurent") {
    if (window < 0) return fail("integer_laurent needs window");
    out = integer_laurent(window);
    return true;
  }
  if (kind != "group" && kind != "custom") return fail("unknown kind: " + kind);
  if (rank <= 0) return fail("missing rank");
  if (labels.empty()) {
    for (int i = 0; i < rank; ++i) labels.push_back("b" + std::to_string(i));
  }
  if (static_cast<int>(labels.size()) != rank) return fail("label count != rank");
  if (!have_consts) return fail("missing consts");
  if (kind == "group") {
    std::vector<std::vector<int>> mult(rank, std::vector<int>(rank, -1));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) {
        if (consts[i][j].size() != 1 || consts[i][j].begin()->second != 1)
          return fail("group table entry (" + std::to_string(i) + "," + std::to_string(j) +
                      ") is not a single basis element");
        mult[i][j] = consts[i][j].begin()->first;
      }
    return group_ring_checked(name.empty() ? "group" : name, mult, labels, out, err);
  }
  if (static_cast<int>(bar.size()) != rank) return fail("custom kind needs bar");
  // identity: the unique i with b_i b_j = b_j for all j, required for custom data
  int e = -1;
  for (int i = 0; i < rank && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < rank; ++j)
      if (consts[i][j] != table_unit(j) || consts[j][i] != table_unit(j)) {
        ok = false;
        break;
      }
    if (ok) e = i;
  }
  if (e < 0) return fail("custom table has no identity basis element");
  try {
    out = custom_finite(name.empty() ? "custom" : name, labels, bar, consts, e);
  } catch (const std::exception& ex) {
    return fail(ex.what());
  }
  return true;
}

Report verify_table_axioms(const TableAlgebra& alg) {
  Report rep;
  rep.title = "table axioms: " + alg.name();
  const auto& W = alg.window();
  const int e = alg.identity_label();
  auto nm = [&](int i) { return alg.label_name(i); };

  for (int i : W) {
    rep.require("identity acts trivially", alg.mul(e, i) == table_unit(i) && alg.mul(i, e) == table_unit(i),
                "1*" + nm(i) + " or " + nm(i) + "*1 differs from " + nm(i));
  }
  for (int i : W)
    for (int j : W) {
      for (const auto& [k, c] : alg.mul(i, j)) {
        rep.require("structure constants nonnegative integers", c >= 0,
                    "coefficient of " + nm(k) + " in " + nm(i) + "*" + nm(j) + " is " + c.str());
      }
    }
  for (int i : W) {
    rep.require("bar is an involution of the basis", alg.bar(alg.bar(i)) == i,
                "bar^2(" + nm(i) + ") = " + nm(alg.bar(alg.bar(i))));
  }
  rep.require("bar fixes the identity", alg.bar(e) == e, "bar(1) = " + nm(alg.bar(e)));
  for (int i : W)
    for (int j : W) {
      TableElem lhs = alg.bar_elem(alg.mul(i, j));
      TableElem rhs = alg.multiply(table_unit(alg.bar(j)), table_unit(alg.bar(i)));
      rep.require("bar is an anti-automorphism", lhs == rhs,
                  "bar(" + nm(i) + "*" + nm(j) + ") != bar(" + nm(j) + ")*bar(" + nm(i) + ")");
    }
  for (int m : W)
    for (int i : W)
      for (int j : W) {
        const Int lhs = alg.kappa(m, i, j);
        const Int rhs = alg.kappa(i, m, alg.bar(j));
        rep.require("normalization of kappa", lhs == rhs,
                    "kappa(" + nm(m) + "," + nm(i) + "*" + nm(j) + ") = " + lhs.str() +
                        " but kappa(" + nm(i) + "," + nm(m) + "*" + nm(alg.bar(j)) + ") = " + rhs.str());
      }
  for (int i : W)
    for (int j : W)
      for (int k : W) {
        TableElem lhs = alg.multiply(alg.mul(i, j), table_unit(k));
        TableElem rhs = alg.multiply(table_unit(i), alg.mul(j, k));
        rep.require("associativity", lhs == rhs,
                    "(" + nm(i) + "*" + nm(j) + ")*" + nm(k) + " != " + nm(i) + "*(" + nm(j) + "*" +
                        nm(k) + ")");
      }
  for (int i : W)
    for (int j : W)
      for (int k : W) {
        // h(ab, c) = h(a, c * bar(b)) with a = b_i, b = b_j, c = b_k
        const Int lhs = TableAlgebra::form_h(alg.mul(i, j), table_unit(k));
        const Int rhs = TableAlgebra::form_h(table_unit(i), alg.mul(k, alg.bar(j)));
        rep.require("h-form adjunction", lhs == rhs,
                    "h(" + nm(i) + "*" + nm(j) + "," + nm(k) + ") = " + lhs.str() + " != " + rhs.str());
      }
  for (int i : W)
    for (int j : W) {
      const Int lhs = alg.kappa(e, i, j);
      const Int rhs = alg.kappa(e, j, i);
      rep.require("kappa(1,xy) = kappa(1,yx)", lhs == rhs,
                  "kappa(1," + nm(i) + "*" + nm(j) + ") = " + lhs.str() + " != " + rhs.str());
    }
  return rep;
}

namespace {

// Fraction-free determinant (Bareiss).
Int det_bareiss(std::vector<std::vector<Int>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return Int(1);
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return Int(0);
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

bool semisimple_over_Q(const TableAlgebra& alg, std::string* detail) {
  if (!alg.finite()) throw std::invalid_argument("semisimple_over_Q: infinite basis");
  const int r = alg.rank();
  if (r > 12) throw std::invalid_argument("semisimple_over_Q: rank > 12");
  // left regular representation L_i[k][j] = coeff of b_k in b_i b_j
  std::vector<std::vector<std::vector<Int>>> L(r, std::vector<std::vector<Int>>(r, std::vector<Int>(r, Int(0))));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (const auto& [k, c] : alg.mul(i, j)) L[i][k][j] = c;
  std::vector<std::vector<Int>> tf(r, std::vector<Int>(r, Int(0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Int tr = 0;
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) tr += L[i][a][b] * L[j][b][a];
      tf[i][j] = tr;
    }
  const Int d = det_bareiss(tf);
  if (detail) *detail = "trace form determinant = " + d.str();
  return d != 0;
}

std::vector<Int> power_to_chebyshev(int k) {
  // x^0 = U_0; multiply by x via x U_m = U_{m-1} + U_{m+1} (x U_0 = U_1).
  std::vector<Int> cur{Int(1)};  // coeffs of U_m
  for (int step = 0; step < k; ++step) {
    std::vector<Int> next(cur.size() + 1, Int(0));
    for (size_t m = 0; m < cur.size(); ++m) {
      if (cur[m] == 0) continue;
      next[m + 1] += cur[m];
      if (m >= 1) next[m - 1] += cur[m];
    }
    cur = std::move(next);
  }
  cur.resize(k + 1, Int(0));
  return cur;
}

std::vector<Int> chebyshev_to_power(int k) {
  // U_0 = 1, U_1 = x, U_{m+1} = x U_m - U_{m-1}; coefficients of x^j.
  std::vector<std::vector<Int>> u(std::max(2, k + 1));
  u[0] = {Int(1)};
  if (k >= 1) u[1] = {Int(0), Int(1)};
  for (int m = 2; m <= k; ++m) {
    std::vector<Int> next(m + 1, Int(0));
    for (size_t j = 0; j < u[m - 1].size(); ++j) next[j + 1] += u[m - 1][j];
    for (size_t j = 0; j < u[m - 2].size(); ++j) next[j] -= u[m - 2][j];
    u[m] = std::move(next);
  }
  u[k].resize(k + 1, Int(0));
  return u[k];
}

}  // namespace tabular
