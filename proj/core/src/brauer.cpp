// Brauer diagrams, the triple codec, closure trace and the table datum.
#include "tabular/brauer.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tabular {

namespace {

void check_shape(const BrauerDiagram& d, const char* who) {
  const int n = d.n;
  if (n < 1 || static_cast<int>(d.match.size()) != 2 * n)
    throw std::invalid_argument(std::string(who) + ": malformed diagram");
  for (int p = 0; p < 2 * n; ++p) {
    const int q = d.match[p];
    if (q < 0 || q >= 2 * n || q == p || d.match[q] != p)
      throw std::invalid_argument(std::string(who) + ": not a perfect matching");
  }
}

}  // namespace

BrauerDiagram BrauerDiagram::identity(int n) {
  BrauerDiagram d;
  d.n = n;
  d.match.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    d.match[i] = n + i;
    d.match[n + i] = i;
  }
  return d;
}

std::string brauer_str(const BrauerDiagram& d) {
  auto pt = [&](int p) {
    return p < d.n ? std::to_string(p + 1) : std::to_string(p - d.n + 1) + "'";
  };
  std::ostringstream os;
  bool first = true;
  for (int p = 0; p < 2 * d.n; ++p) {
    if (d.match[p] < p) continue;
    if (!first) os << ",";
    first = false;
    os << pt(p) << "-" << pt(d.match[p]);
  }
  return os.str();
}

BrauerTriple to_triple(const BrauerDiagram& d) {
  check_shape(d, "to_triple");
  const int n = d.n;
  std::vector<int> i1(n), i2(n);
  std::vector<int> fx1, fx2;
  for (int p = 0; p < n; ++p) {
    i1[p] = d.match[p] < n ? d.match[p] : p;
    if (d.match[p] >= n) fx1.push_back(p);
  }
  for (int p = n; p < 2 * n; ++p) {
    i2[p - n] = d.match[p] >= n ? d.match[p] - n : p - n;
    if (d.match[p] < n) fx2.push_back(p - n);
  }
  std::vector<int> south_slot(n, -1);
  for (std::size_t b = 0; b < fx2.size(); ++b) south_slot[fx2[b]] = static_cast<int>(b);
  std::vector<int> wim(fx1.size());
  for (std::size_t a = 0; a < fx1.size(); ++a) wim[a] = south_slot[d.match[fx1[a]] - n];
  return BrauerTriple{Perm(i1), Perm(i2), Perm(wim)};
}

BrauerDiagram from_triple(int n, const BrauerTriple& t) {
  if (t.s1.size() != n || t.s2.size() != n || !t.s1.is_involution() || !t.s2.is_involution())
    throw std::invalid_argument("from_triple: S1, S2 must be involutions on n letters");
  if (t.s1.fixed_points() != t.s2.fixed_points() || t.w.size() != t.s1.fixed_points())
    throw std::invalid_argument("from_triple: w must permute the common fixed points");
  BrauerDiagram d;
  d.n = n;
  d.match.assign(2 * n, -1);
  std::vector<int> fx1, fx2;
  for (int i = 0; i < n; ++i) {
    if (t.s1(i) > i) {
      d.match[i] = t.s1(i);
      d.match[t.s1(i)] = i;
    }
    if (t.s1(i) == i) fx1.push_back(i);
    if (t.s2(i) > i) {
      d.match[n + i] = n + t.s2(i);
      d.match[n + t.s2(i)] = n + i;
    }
    if (t.s2(i) == i) fx2.push_back(i);
  }
  for (std::size_t a = 0; a < fx1.size(); ++a) {
    const int dst = n + fx2[t.w(static_cast<int>(a))];
    d.match[fx1[a]] = dst;
    d.match[dst] = fx1[a];
  }
  return d;
}

BrauerDiagram brauer_flip(const BrauerDiagram& d) {
  check_shape(d, "brauer_flip");
  const int n = d.n;
  auto rf = [n](int p) { return p < n ? p + n : p - n; };
  BrauerDiagram out;
  out.n = n;
  out.match.resize(2 * n);
  for (int p = 0; p < 2 * n; ++p) out.match[rf(p)] = rf(d.match[p]);
  return out;
}

BrCombo br_combo_add(const BrCombo& a, const BrCombo& b) {
  BrCombo out = a;
  for (const auto& [d, c] : b) {
    Laurent& slot = out[d];
    slot = slot + c;
    if (slot.is_zero()) out.erase(d);
  }
  return out;
}

BrCombo brauer_multiply(const BrauerDiagram& A, const BrauerDiagram& B) {
  check_shape(A, "brauer_multiply");
  check_shape(B, "brauer_multiply");
  if (A.n != B.n) throw std::invalid_argument("brauer_multiply: string counts differ");
  const int n = A.n;
  std::vector<std::vector<bool>> seen(2, std::vector<bool>(2 * n, false));

  // side 0 = A on top, side 1 = B below; A's south point g meets B's north
  // point g.  A walk follows one product edge to its far endpoint, which is
  // already a product coordinate (A north or B south).
  auto walk = [&](int side, int p) {
    while (true) {
      const BrauerDiagram& D = side == 0 ? A : B;
      seen[side][p] = true;
      const int q = D.match[p];
      seen[side][q] = true;
      if (side == 0 && q < n) return q;
      if (side == 1 && q >= n) return q;
      const int g = side == 0 ? q - n : q;
      side = 1 - side;
      p = side == 1 ? g : n + g;
    }
  };

  BrauerDiagram out;
  out.n = n;
  out.match.assign(2 * n, -1);
  for (int p = 0; p < 2 * n; ++p) {
    const int side = p < n ? 0 : 1;
    if (seen[side][p]) continue;
    const int q = walk(side, p);
    out.match[p] = q;
    out.match[q] = p;
  }

  // untouched glue points chain into closed middle loops
  int loops = 0;
  for (int g = 0; g < n; ++g) {
    if (seen[0][n + g]) continue;
    ++loops;
    int side = 0, p = n + g;
    while (!seen[side][p]) {
      const BrauerDiagram& D = side == 0 ? A : B;
      seen[side][p] = true;
      const int q = D.match[p];
      seen[side][q] = true;
      const int gg = side == 0 ? q - n : q;
      side = 1 - side;
      p = side == 1 ? gg : n + gg;
    }
  }

  return BrCombo{{std::move(out), loop_delta_pow(loops)}};
}

BrCombo brauer_multiply(const BrCombo& a, const BrCombo& b) {
  BrCombo out;
  for (const auto& [da, ca] : a)
    for (const auto& [db, cb] : b)
      for (const auto& [d, c] : brauer_multiply(da, db)) {
        Laurent& slot = out[d];
        slot = slot + c * ca * cb;
        if (slot.is_zero()) out.erase(d);
      }
  return out;
}

BrClosure brauer_closure(const BrauerDiagram& d) {
  check_shape(d, "brauer_closure");
  const int n = d.n;
  std::vector<bool> seen(2 * n, false);
  BrClosure out;
  for (int s = 0; s < 2 * n; ++s) {
    if (seen[s]) continue;
    int w = 0;
    int p = s;
    while (!seen[p]) {
      seen[p] = true;
      const int q = d.match[p];
      seen[q] = true;
      if (q < n) {
        ++w;
        p = q + n;
      } else {
        --w;
        p = q - n;
      }
    }
    if (w == 0)
      ++out.null_loops;
    else if (w == 1 || w == -1)
      ++out.around_loops;
    else
      ++out.high_loops;
  }
  return out;
}

Laurent brauer_trace(const BrauerDiagram& d) {
  const BrClosure c = brauer_closure(d);
  if (c.high_loops > 0) return Laurent();
  return loop_delta_pow(c.null_loops) * Laurent::v_pow(c.around_loops - d.n);
}

namespace {

struct BrShared {
  int n = 0;
  std::vector<int> cell_t;
  std::map<int, int> t2cell;
  std::vector<std::vector<Perm>> invs;
  std::vector<std::map<Perm, int>> inv_idx;
  std::vector<std::vector<Perm>> ws;
  std::vector<std::map<Perm, int>> w_idx;
  std::vector<std::vector<int>> bar_b;
  std::vector<int> id_b;

  BrauerDiagram diagram(const Label& l) const {
    return from_triple(n, BrauerTriple{invs[l.lam][l.S], invs[l.lam][l.T], ws[l.lam][l.b]});
  }

  Label decode(const BrauerTriple& t) const {
    const int lam = t2cell.at(t.s1.fixed_points());
    return Label{lam, inv_idx[lam].at(t.s1), w_idx[lam].at(t.w), inv_idx[lam].at(t.s2)};
  }
};

}  // namespace

BrauerDiagram BrauerInstance::diagram_of(const Label& l) const {
  const int t = cell_t[l.lam];
  const Perm w = t == 0 ? Perm() : all_perms(t)[l.b];
  return from_triple(n, BrauerTriple{invs[l.lam][l.S], invs[l.lam][l.T], w});
}

std::optional<Label> BrauerInstance::label_of(const BrauerDiagram& d) const {
  for (const Label& l : inst.window())
    if (diagram_of(l) == d) return l;
  return std::nullopt;
}

BrauerInstance build_brauer(int n) {
  if (n < 1) throw std::invalid_argument("build_brauer: need at least one string");
  auto sh = std::make_shared<BrShared>();
  sh->n = n;
  for (int t = n; t >= 0; t -= 2) sh->cell_t.push_back(t);

  BrauerInstance out;
  out.n = n;
  TabularInstance& inst = out.inst;
  inst.name = "brauer" + std::to_string(n);
  inst.finite_rank = true;

  for (std::size_t c = 0; c < sh->cell_t.size(); ++c) {
    const int t = sh->cell_t[c];
    sh->t2cell[t] = static_cast<int>(c);
    sh->invs.push_back(involutions_with_fixed(n, t));
    sh->inv_idx.emplace_back();
    for (std::size_t i = 0; i < sh->invs.back().size(); ++i)
      sh->inv_idx.back()[sh->invs.back()[i]] = static_cast<int>(i);
    sh->ws.push_back(t == 0 ? std::vector<Perm>{Perm()} : all_perms(t));
    sh->w_idx.emplace_back();
    for (std::size_t i = 0; i < sh->ws.back().size(); ++i)
      sh->w_idx.back()[sh->ws.back()[i]] = static_cast<int>(i);

    CellData cd;
    cd.name = "t" + std::to_string(t);
    for (const auto& s : sh->invs.back()) cd.tableaux.push_back(s.cycle_str());
    cd.gamma = t == 0 ? TableAlgebra::cyclic_group(1) : TableAlgebra::symmetric_group(t);
    cd.b_window = cd.gamma.window();
    cd.a_override = (n - t) / 2;
    sh->id_b.push_back(cd.gamma.identity_label());
    sh->bar_b.emplace_back();
    for (int b : cd.b_window) sh->bar_b.back().push_back(cd.gamma.bar(b));
    inst.cells.push_back(std::move(cd));
  }

  const int nc = static_cast<int>(inst.cells.size());
  inst.strictly_less.assign(nc, std::vector<bool>(nc, false));
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      if (sh->cell_t[i] < sh->cell_t[j]) inst.strictly_less[i][j] = true;

  inst.raw_mul = [sh](const Label& x, const Label& y) {
    Element out;
    for (const auto& [d, c] : brauer_multiply(sh->diagram(x), sh->diagram(y)))
      elem_acc(out, sh->decode(to_triple(d)), c);
    return out;
  };
  inst.star_fn = [sh](const Label& l) {
    return Label{l.lam, l.T, sh->bar_b[l.lam][l.b], l.S};
  };
  inst.trace_fn = [sh](const Label& l) { return brauer_trace(sh->diagram(l)); };

  const Label unit_label{0, 0, sh->id_b[0], 0};
  inst.idempotents.push_back(unit_label);
  inst.unit.emplace(unit_label, Laurent::unit());

  inst.label_str_fn = [sh](const Label& l) {
    return "[" + sh->invs[l.lam][l.S].cycle_str() + ";" + sh->invs[l.lam][l.T].cycle_str() +
           ";" + sh->ws[l.lam][l.b].cycle_str() + "]";
  };
  inst.label_parse_fn = [sh](const std::string& s) -> std::optional<Label> {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
    const std::string body = s.substr(1, s.size() - 2);
    const auto p1 = body.find(';');
    if (p1 == std::string::npos) return std::nullopt;
    const auto p2 = body.find(';', p1 + 1);
    if (p2 == std::string::npos || body.find(';', p2 + 1) != std::string::npos)
      return std::nullopt;
    const auto s1 = Perm::parse_cycles(body.substr(0, p1), sh->n);
    const auto s2 = Perm::parse_cycles(body.substr(p1 + 1, p2 - p1 - 1), sh->n);
    if (!s1 || !s2 || !s1->is_involution() || !s2->is_involution()) return std::nullopt;
    if (s1->fixed_points() != s2->fixed_points()) return std::nullopt;
    const int t = s1->fixed_points();
    const auto ct = sh->t2cell.find(t);
    if (ct == sh->t2cell.end()) return std::nullopt;
    const auto w = Perm::parse_cycles(body.substr(p2 + 1), t == 0 ? 0 : t);
    if (!w) return std::nullopt;
    const int lam = ct->second;
    const auto iw = sh->w_idx[lam].find(*w);
    if (iw == sh->w_idx[lam].end()) return std::nullopt;
    return Label{lam, sh->inv_idx[lam].at(*s1), iw->second, sh->inv_idx[lam].at(*s2)};
  };

  inst.finalize();

  Report& rep = out.build_report;
  rep.title = inst.name + ": triple datum";

  std::map<BrauerDiagram, Label> image;
  bool distinct = true, roundtrip = true, starred = true;
  for (const Label& l : inst.window()) {
    const BrauerDiagram d = sh->diagram(l);
    if (!image.emplace(d, l).second) distinct = false;
    if (!(sh->decode(to_triple(d)) == l)) roundtrip = false;
    if (!(sh->diagram(inst.star(l)) == brauer_flip(d))) starred = false;
  }
  rep.add("the codec is injective", distinct);
  rep.add("triples decode back to their labels", roundtrip);
  rep.add("star reflects the diagrams", starred);
  rep.add("the unit is the identity diagram",
          sh->diagram(unit_label) == BrauerDiagram::identity(n));

  out.a = compute_a_values(inst, &rep);
  out.cell_t = sh->cell_t;
  out.invs = sh->invs;
  return out;
}

}  // namespace tabular
