#include "tabular/tabular.hpp"

#include <sstream>
#include <stdexcept>

#include "tabular/parallel.hpp"
#include "tabular/report.hpp"

namespace tabular {

void elem_acc(Element& e, const Label& l, const Laurent& c) {
  if (c.is_zero()) return;
  auto it = e.find(l);
  if (it == e.end()) {
    e.emplace(l, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) e.erase(it);
  }
}

Element elem_add(Element a, const Element& b) {
  for (const auto& [l, c] : b) elem_acc(a, l, c);
  return a;
}

Element elem_scale(const Element& a, const Laurent& c) {
  Element out;
  if (c.is_zero()) return out;
  for (const auto& [l, p] : a) {
    Laurent q = p * c;
    if (!q.is_zero()) out.emplace(l, std::move(q));
  }
  return out;
}

Laurent elem_coeff(const Element& a, const Label& l) {
  auto it = a.find(l);
  return it == a.end() ? Laurent() : it->second;
}

bool elem_eq(const Element& a, const Element& b) { return a == b; }

void TabularInstance::finalize() {
  if (!raw_mul) throw std::logic_error(name + ": no multiplication oracle");
  const int nc = n_cells();
  if (static_cast<int>(strictly_less.size()) != nc)
    throw std::logic_error(name + ": poset size mismatch");
  for (const auto& row : strictly_less)
    if (static_cast<int>(row.size()) != nc) throw std::logic_error(name + ": poset row mismatch");
  for (int a = 0; a < nc; ++a) {
    if (strictly_less[a][a]) throw std::logic_error(name + ": poset not irreflexive");
    for (int b = 0; b < nc; ++b)
      for (int c = 0; c < nc; ++c)
        if (strictly_less[a][b] && strictly_less[b][c] && !strictly_less[a][c])
          throw std::logic_error(name + ": poset not transitive");
  }
  window_.clear();
  for (int lam = 0; lam < nc; ++lam) {
    const auto& cd = cells[lam];
    if (cd.tableaux.empty()) throw std::logic_error(name + ": cell without tableaux");
    for (int S = 0; S < static_cast<int>(cd.tableaux.size()); ++S)
      for (int b : cd.b_window)
        for (int T = 0; T < static_cast<int>(cd.tableaux.size()); ++T)
          window_.push_back(Label{lam, S, b, T});
  }
  for (const Label& l : window_)
    if (!valid_label(l)) throw std::logic_error(name + ": invalid window label");
}

std::vector<Label> TabularInstance::cell_window(int lam) const {
  std::vector<Label> out;
  for (const Label& l : window_)
    if (l.lam == lam) out.push_back(l);
  return out;
}

bool TabularInstance::valid_label(const Label& l) const {
  if (l.lam < 0 || l.lam >= n_cells()) return false;
  const auto& cd = cells[l.lam];
  const int m = static_cast<int>(cd.tableaux.size());
  return l.S >= 0 && l.S < m && l.T >= 0 && l.T < m && cd.gamma.valid_label(l.b);
}

Element TabularInstance::mul(const Label& x, const Label& y) const {
  {
    std::lock_guard<std::mutex> g(memo_->mu);
    auto it = memo_->products.find({x, y});
    if (it != memo_->products.end()) return it->second;
  }
  Element p = raw_mul(x, y);
  std::lock_guard<std::mutex> g(memo_->mu);
  memo_->products.emplace(std::make_pair(x, y), p);
  return p;
}

Element TabularInstance::mul_elems(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [lx, cx] : x)
    for (const auto& [ly, cy] : y) {
      const Laurent c = cx * cy;
      for (const auto& [lz, cz] : mul(lx, ly)) elem_acc(out, lz, c * cz);
    }
  return out;
}

Label TabularInstance::structural_star(const Label& l) const {
  return Label{l.lam, l.T, cells[l.lam].gamma.bar(l.b), l.S};
}

Label TabularInstance::star(const Label& l) const {
  return star_fn ? star_fn(l) : structural_star(l);
}

Element TabularInstance::star_elem(const Element& e) const {
  Element out;
  for (const auto& [l, c] : e) elem_acc(out, star(l), c);
  return out;
}

Laurent TabularInstance::trace(const Label& l) const {
  if (!trace_fn) throw std::logic_error(name + ": no trace shipped");
  return trace_fn(l);
}

Laurent TabularInstance::trace_elem(const Element& e) const {
  Laurent s;
  for (const auto& [l, c] : e) s += c * trace(l);
  return s;
}

Element TabularInstance::reduce_mod_lower(const Element& e, int lam) const {
  Element out;
  for (const auto& [l, c] : e)
    if (!cell_lower(l.lam, lam)) out.emplace(l, c);
  return out;
}

std::string TabularInstance::label_str(const Label& l) const {
  if (label_str_fn) return label_str_fn(l);
  std::ostringstream os;
  const auto& cd = cells[l.lam];
  os << "C[" << cd.name << ";" << cd.tableaux[l.S] << "," << cd.tableaux[l.T] << ";"
     << cd.gamma.label_name(l.b) << "]";
  return os.str();
}

std::optional<Label> TabularInstance::label_parse(const std::string& s) const {
  if (label_parse_fn) return label_parse_fn(s);
  // generic form printed by label_str above
  if (s.size() < 4 || s.rfind("C[", 0) != 0 || s.back() != ']') return std::nullopt;
  const std::string body = s.substr(2, s.size() - 3);
  const auto p1 = body.find(';');
  const auto p2 = body.rfind(';');
  if (p1 == std::string::npos || p2 == p1) return std::nullopt;
  const std::string cell_name = body.substr(0, p1);
  const std::string st = body.substr(p1 + 1, p2 - p1 - 1);
  const std::string bname = body.substr(p2 + 1);
  const auto comma = st.find(',');
  if (comma == std::string::npos) return std::nullopt;
  for (int lam = 0; lam < n_cells(); ++lam) {
    const auto& cd = cells[lam];
    if (cd.name != cell_name) continue;
    int S = -1, T = -1;
    for (int i = 0; i < static_cast<int>(cd.tableaux.size()); ++i) {
      if (cd.tableaux[i] == st.substr(0, comma)) S = i;
      if (cd.tableaux[i] == st.substr(comma + 1)) T = i;
    }
    auto b = cd.gamma.label_by_name(bname);
    if (S >= 0 && T >= 0 && b) return Label{lam, S, *b, T};
    return std::nullopt;
  }
  return std::nullopt;
}

std::string TabularInstance::elem_str(const Element& e) const {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [l, c] : e) {
    if (!first) os << " + ";
    first = false;
    os << "(" << laurent_str(c) << ")*" << label_str(l);
  }
  return os.str();
}

void TabularInstance::precompute_products(unsigned threads) const {
  {
    std::lock_guard<std::mutex> g(memo_->mu);
    if (memo_->full) return;
  }
  const auto& W = window_;
  const std::size_t n = W.size();
  std::vector<Element> row(n * n);
  parallel_for(n * n, threads, [&](std::size_t idx) {
    const Label& x = W[idx / n];
    const Label& y = W[idx % n];
    row[idx] = raw_mul(x, y);
  });
  std::lock_guard<std::mutex> g(memo_->mu);
  for (std::size_t idx = 0; idx < n * n; ++idx)
    memo_->products.emplace(std::make_pair(W[idx / n], W[idx % n]), std::move(row[idx]));
  memo_->full = true;
}

AValues compute_a_values(const TabularInstance& inst, Report* rep, unsigned threads) {
  const auto& W = inst.window();
  inst.precompute_products(threads);
  // max degree reaching each target label
  std::map<Label, Degree> best;
  for (const Label& z : W) best[z] = Degree::neg_infinity();
  for (const Label& x : W)
    for (const Label& y : W)
      for (const auto& [z, g] : inst.mul(x, y)) {
        auto it = best.find(z);
        if (it == best.end()) continue;  // outside window: sweeps ignore it
        if (it->second < g.degree()) it->second = g.degree();
      }
  AValues out;
  out.per_cell.assign(inst.n_cells(), 0);
  for (int lam = 0; lam < inst.n_cells(); ++lam) {
    const auto cw = inst.cell_window(lam);
    Degree cell_max = Degree::neg_infinity();
    bool constant = true;
    for (const Label& z : cw) {
      if (best[z].is_neg_infinity()) continue;
      if (cell_max.is_neg_infinity()) {
        cell_max = best[z];
      } else if (!(best[z] == cell_max)) {
        constant = false;
        if (best[z] > cell_max) cell_max = best[z];
      }
    }
    const auto& cd = inst.cells[lam];
    if (cd.a_override) {
      out.per_cell[lam] = *cd.a_override;
      if (rep) {
        rep->require("a override matches windowed sweep (cell " + cd.name + ")",
                     constant && !cell_max.is_neg_infinity() && cell_max == Degree::finite(*cd.a_override),
                     "declared " + std::to_string(*cd.a_override) + ", sweep found " + cell_max.str() +
                         (constant ? "" : " (not constant)"));
      }
    } else {
      if (cell_max.is_neg_infinity()) {
        // no product reaches this cell inside the window; a stays 0 for the
        // identity-like cells where only the unit lands
        out.per_cell[lam] = 0;
        if (rep)
          rep->require("a sweep reaches cell " + cd.name, false,
                       "no window product has a component in this cell");
        continue;
      }
      out.per_cell[lam] = cell_max.value();
      if (rep)
        rep->require("a constant on cell " + cd.name, constant,
                     "cell " + cd.name + " has nonconstant label maxima");
    }
  }
  return out;
}

Int gamma_coeff(const TabularInstance& inst, const AValues& a, const Label& x, const Label& y,
                const Label& z) {
  return elem_coeff(inst.mul(x, y), z).coeff(a.of_label(z));
}

}  // namespace tabular
