#include "tabular/tl_h.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace tabular {

namespace {

// Boundary position once the frame is cut open at the west face: north
// nodes stay put, south nodes continue east to west.
int bpos(int m, int p) { return p < m ? p : 3 * m - 1 - p; }

bool is_prop(int m, int p, int q) { return (p < m) != (q < m); }

Int fib(int k) {
  Int a = 0, b = 1;
  for (int i = 0; i < k; ++i) {
    Int c = a + b;
    a = b;
    b = c;
  }
  return a;
}

struct Interval {
  int lo, hi;
};

std::vector<Interval> edge_intervals(const HDiagram& d) {
  std::vector<Interval> out;
  for (int p = 0; p < 2 * d.m; ++p) {
    if (d.match[p] <= p) continue;
    int a = bpos(d.m, p), b = bpos(d.m, d.match[p]);
    if (a > b) std::swap(a, b);
    out.push_back({a, b});
  }
  return out;
}

bool shape_ok(const HDiagram& d) {
  const int N = 2 * d.m;
  if (d.m <= 0 || static_cast<int>(d.match.size()) != N ||
      static_cast<int>(d.dec.size()) != N)
    return false;
  for (int p = 0; p < N; ++p) {
    int q = d.match[p];
    if (q < 0 || q >= N || q == p || d.match[q] != p) return false;
    if (d.dec[p] < 0 || d.dec[p] != d.dec[q]) return false;
  }
  const auto iv = edge_intervals(d);
  for (std::size_t i = 0; i < iv.size(); ++i)
    for (std::size_t j = i + 1; j < iv.size(); ++j) {
      const auto &a = iv[i], &b = iv[j];
      const bool disjoint = a.hi < b.lo || b.hi < a.lo;
      const bool nested = (a.lo < b.lo && b.hi < a.hi) || (b.lo < a.lo && a.hi < b.hi);
      if (!disjoint && !nested) return false;
    }
  return true;
}

// Decoration of the arc {i, i+1} on one face, or -1 when absent.
int pair_dec(const HDiagram& d, int base, int i) {
  if (d.match[base + i] != base + i + 1) return -1;
  return d.dec[base + i];
}

// A face with arcs must show a decorated westmost pair or an undecorated
// adjacent pair further east.
bool face_ok(const HDiagram& d, int base) {
  for (int i = 0; i + 1 < d.m; ++i) {
    const int dec = pair_dec(d, base, i);
    if (i == 0 && dec == 1) return true;
    if (i >= 1 && dec == 0) return true;
  }
  return false;
}

}  // namespace

HDiagram HDiagram::identity(int m) {
  HDiagram d;
  d.m = m;
  d.match.resize(2 * m);
  d.dec.assign(2 * m, 0);
  for (int i = 0; i < m; ++i) {
    d.match[i] = m + i;
    d.match[m + i] = i;
  }
  return d;
}

std::string h_diagram_str(const HDiagram& d) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int p = 0; p < 2 * d.m; ++p) {
    if (d.match[p] <= p) continue;
    if (!first) os << " ";
    first = false;
    auto node = [&](int q) {
      os << (q < d.m ? "n" : "s") << (q < d.m ? q + 1 : q - d.m + 1);
    };
    node(p);
    node(d.match[p]);
    for (int k = 0; k < d.dec[p]; ++k) os << "*";
  }
  os << "}";
  return os.str();
}

bool h_west_exposed(const HDiagram& d, int p) {
  int a = bpos(d.m, p), b = bpos(d.m, d.match[p]);
  if (a > b) std::swap(a, b);
  for (const auto& iv : edge_intervals(d))
    if (iv.lo < a && b < iv.hi) return false;
  return true;
}

bool h_admissible(const HDiagram& d) {
  if (!shape_ok(d)) return false;
  bool any_arc = false;
  for (int p = 0; p < 2 * d.m; ++p) {
    if (d.match[p] < p) continue;
    if (!is_prop(d.m, p, d.match[p])) any_arc = true;
    if (d.dec[p] > 1) return false;
    if (d.dec[p] == 1 && !h_west_exposed(d, p)) return false;
  }
  if (!any_arc) {
    for (int p = 0; p < 2 * d.m; ++p)
      if (d.dec[p] != 0) return false;
    return true;
  }
  return face_ok(d, 0) && face_ok(d, d.m);
}

HCombo h_combo_add(HCombo a, const HCombo& b) {
  for (const auto& [d, c] : b) {
    auto it = a.find(d);
    if (it == a.end())
      a.emplace(d, c);
    else {
      it->second += c;
      if (it->second.is_zero()) a.erase(it);
    }
  }
  return a;
}

HCombo h_combo_scale(const HCombo& a, const Laurent& c) {
  HCombo out;
  if (c.is_zero()) return out;
  for (const auto& [d, k] : a) out.emplace(d, k * c);
  return out;
}

HCombo h_multiply(const HDiagram& A, const HDiagram& B) {
  if (A.m != B.m) throw std::invalid_argument("h_multiply: strand counts differ");
  if (!shape_ok(A) || !shape_ok(B)) throw std::invalid_argument("h_multiply: malformed diagram");
  const int m = A.m;

  // Stack A over B.  Endpoint space: side 0 walks in A, side 1 in B; A south
  // node g and B north node g meet at glue node g.
  std::vector<std::vector<bool>> seen(2, std::vector<bool>(2 * m, false));
  auto walk = [&](int side, int p) {
    // Follows edges through the glue layer; returns the far endpoint in
    // product space (A north or B south) and the decorations collected.
    int total = 0;
    while (true) {
      const HDiagram& D = side == 0 ? A : B;
      seen[side][p] = true;
      total += D.dec[p];
      const int q = D.match[p];
      seen[side][q] = true;
      if (side == 0 && q < m) return std::pair<int, int>(q, total);
      if (side == 1 && q >= m) return std::pair<int, int>(q, total);
      const int g = side == 0 ? q - m : q;
      side = 1 - side;
      p = side == 1 ? g : m + g;
    }
  };

  std::map<std::pair<int, int>, int> edges;  // product endpoints -> decorations
  auto record = [&](int from, int to, int total) {
    int a = from, b = to;
    if (a > b) std::swap(a, b);
    edges[{a, b}] = total;
  };
  for (int i = 0; i < m; ++i) {
    if (seen[0][i]) continue;
    const auto [end, total] = walk(0, i);
    record(i, end, total);
  }
  for (int i = m; i < 2 * m; ++i) {
    if (seen[1][i]) continue;
    const auto [end, total] = walk(1, i);
    record(i, end, total);
  }

  // Unvisited edges form closed loops inside the glue layer, alternating
  // south arcs of A with north arcs of B.
  int plain_loops = 0;
  Int loop_mult = 1;
  for (int p = m; p < 2 * m; ++p) {
    if (seen[0][p]) continue;
    int s = 0, q = p, total = 0;
    while (!seen[s][q]) {
      const HDiagram& D = s == 0 ? A : B;
      seen[s][q] = true;
      total += D.dec[q];
      const int r = D.match[q];
      seen[s][r] = true;
      const int g = s == 0 ? r - m : r;
      s = 1 - s;
      q = s == 1 ? g : m + g;
    }
    // a loop with d decorations is worth F(d-1) copies of the plain loop
    ++plain_loops;
    if (total > 0) loop_mult *= fib(total - 1);
  }

  HCombo out;
  if (loop_mult == 0) return out;
  const Laurent scalar = loop_delta_pow(plain_loops).scaled(loop_mult);

  HDiagram base;
  base.m = m;
  base.match.assign(2 * m, -1);
  base.dec.assign(2 * m, 0);
  std::vector<std::pair<int, int>> split;  // endpoint, decoration total
  for (const auto& [e, dtot] : edges) {
    base.match[e.first] = e.second;
    base.match[e.second] = e.first;
    if (dtot >= 2)
      split.push_back({e.first, dtot});
    else
      base.dec[e.first] = base.dec[e.second] = dtot;
  }

  const std::size_t ways = std::size_t(1) << split.size();
  for (std::size_t mask = 0; mask < ways; ++mask) {
    HDiagram d = base;
    Int mult = 1;
    for (std::size_t k = 0; k < split.size(); ++k) {
      const auto [p, dtot] = split[k];
      const bool keep = mask & (std::size_t(1) << k);
      mult *= keep ? fib(dtot) : fib(dtot - 1);
      d.dec[p] = d.dec[d.match[p]] = keep ? 1 : 0;
    }
    if (mult == 0) continue;
    if (!h_admissible(d))
      throw std::logic_error("h_multiply: reduction left the diagram basis: " + h_diagram_str(d));
    Laurent c = scalar.scaled(mult);
    auto it = out.find(d);
    if (it == out.end())
      out.emplace(std::move(d), std::move(c));
    else
      it->second += c;
  }
  return out;
}

HCombo h_multiply(const HCombo& a, const HCombo& b) {
  HCombo out;
  for (const auto& [da, ca] : a)
    for (const auto& [db, cb] : b)
      out = h_combo_add(std::move(out), h_combo_scale(h_multiply(da, db), ca * cb));
  return out;
}

std::vector<HDiagram> h_generators(int n) {
  if (n < 2) throw std::invalid_argument("h_generators: rank must be at least 2");
  const int m = n + 1;
  std::vector<HDiagram> gens;
  for (int i = 0; i < n; ++i) {
    // cup/cap at nodes i, i+1; the remaining strands keep their vertical
    // edges from the identity
    HDiagram d = HDiagram::identity(m);
    d.match[i] = i + 1;
    d.match[i + 1] = i;
    d.match[m + i] = m + i + 1;
    d.match[m + i + 1] = m + i;
    if (i == 0) d.dec[0] = d.dec[1] = d.dec[m] = d.dec[m + 1] = 1;
    if (!h_admissible(d)) throw std::logic_error("h_generators: generator not admissible");
    gens.push_back(std::move(d));
  }
  return gens;
}

Report h_presentation_check(int n) {
  Report rep;
  rep.title = "type H rank " + std::to_string(n) + ": generator presentation";
  const auto gens = h_generators(n);
  auto one = [&](int i) { return HCombo{{gens[i], Laurent::unit()}}; };
  for (int i = 0; i < n; ++i)
    rep.require("squares give the loop multiple",
                h_multiply(gens[i], gens[i]) == h_combo_scale(one(i), loop_delta()),
                "b" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::string w = "b" + std::to_string(i + 1) + " b" + std::to_string(j + 1);
      if (i - j > 1 || j - i > 1)
        rep.require("distant generators commute",
                    h_multiply(gens[i], gens[j]) == h_multiply(gens[j], gens[i]), w);
      if ((i - j == 1 || j - i == 1) && i >= 1 && j >= 1)
        rep.require("adjacent sandwiches collapse",
                    h_multiply(h_multiply(gens[i], gens[j]), one(i)) == one(i),
                    w + " b" + std::to_string(i + 1));
    }
  for (int first = 0; first < 2; ++first) {
    const int i = first, j = 1 - first;
    const HCombo iji = h_multiply(h_multiply(gens[i], gens[j]), one(i));
    const HCombo lhs = h_multiply(h_multiply(iji, one(j)), one(i));
    const HCombo rhs = h_combo_add(h_combo_scale(iji, Laurent::constant(3)),
                                   h_combo_scale(one(i), -Laurent::unit()));
    rep.require("the west end satisfies the length five relation", lhs == rhs,
                "b" + std::to_string(i + 1) + " b" + std::to_string(j + 1) + " ...");
  }
  return rep;
}

HClosure h_cylinder_closure(const HDiagram& d) {
  if (!shape_ok(d)) throw std::invalid_argument("h_cylinder_closure: malformed diagram");
  const int m = d.m;
  HClosure out;
  int plain_loops = 0;
  Int contract_mult = 1;  // contractible loops collapse to a scalar
  Int around_mult = 1;    // winding loops keep only their plain branch
  int branch_terms = 1;
  std::vector<bool> seen(2 * m, false);
  for (int s = 0; s < 2 * m; ++s) {
    if (seen[s]) continue;
    // Walk the loop through the glued seam.  Crossing from a north node to
    // its south partner goes upward around the cylinder, the reverse goes
    // downward; the net count classifies the loop.
    int p = s, w = 0, decs = 0;
    while (!seen[p]) {
      seen[p] = true;
      decs += d.dec[p];
      const int q = d.match[p];
      seen[q] = true;
      if (q < m) {
        w += 1;
        p = m + q;
      } else {
        w -= 1;
        p = q - m;
      }
    }
    if (w == 0) {
      ++plain_loops;
      if (decs > 0) contract_mult *= fib(decs - 1);
    } else {
      ++out.around;
      if (decs > 0) {
        ++out.decorated_around;
        around_mult *= fib(decs - 1);
        if (decs >= 2) branch_terms *= 2;
      }
    }
  }
  out.terms = contract_mult == 0 ? 0 : branch_terms;
  const Int mult = contract_mult * around_mult;
  out.value = mult == 0 ? Laurent()
                        : loop_delta_pow(plain_loops).scaled(mult) * Laurent::v_pow(out.around - m);
  return out;
}

Laurent h_cylinder_trace(const HDiagram& d) { return h_cylinder_closure(d).value; }

std::string h_half_str(const HalfConfig& h) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < h.m; ++i) {
    if (h.match[i] <= i) continue;
    if (!first) os << ".";
    first = false;
    os << i + 1 << h.match[i] + 1;
    if (h.dec[i]) os << "*";
  }
  return first ? "e" : os.str();
}

namespace {

bool half_exposed(const HalfConfig& h, int i) {
  const int j = h.match[i];
  for (int k = 0; k < i; ++k) {
    if (h.match[k] == -1) return false;           // a propagating node west of the arc
    if (h.match[k] > k && j < h.match[k]) return false;  // nested inside a wider arc
  }
  return true;
}

bool half_face_ok(const HalfConfig& h) {
  bool any = false;
  for (int i = 0; i < h.m; ++i)
    if (h.match[i] >= 0) any = true;
  if (!any) return true;
  for (int i = 0; i + 1 < h.m; ++i) {
    if (h.match[i] != i + 1) continue;
    if (i == 0 && h.dec[i] == 1) return true;
    if (i >= 1 && h.dec[i] == 0) return true;
  }
  return false;
}

void close_segments(std::vector<std::pair<int, int>> segs, std::vector<int>& match,
                    std::vector<std::vector<int>>& done) {
  while (!segs.empty() && segs.back().first >= segs.back().second) segs.pop_back();
  if (segs.empty()) {
    done.push_back(match);
    return;
  }
  const auto [lo, hi] = segs.back();
  segs.pop_back();
  for (int j = lo + 1; j < hi; j += 2) {
    match[lo] = j;
    match[j] = lo;
    auto next = segs;
    next.push_back({j + 1, hi});
    next.push_back({lo + 1, j});
    close_segments(std::move(next), match, done);
  }
}

}  // namespace

std::vector<HalfConfig> h_half_configs(int m, int t) {
  std::vector<HalfConfig> out;
  if (t < 0 || t > m || (m - t) % 2 != 0) return out;
  // Propagating nodes sit at the top nesting level, so arcs fill the even
  // length runs between them.
  for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
    if (__builtin_popcountll(mask) != t) continue;
    std::vector<std::pair<int, int>> segs;
    int start = 0;
    bool ok = true;
    for (int i = 0; i <= m; ++i) {
      if (i == m || ((mask >> i) & 1)) {
        if ((i - start) % 2 != 0) ok = false;
        if (i > start) segs.push_back({start, i});
        start = i + 1;
      }
    }
    if (!ok) continue;
    std::vector<int> match(m, -1);
    std::vector<std::vector<int>> matchings;
    close_segments(segs, match, matchings);
    for (const auto& mm : matchings) {
      HalfConfig h;
      h.m = m;
      h.match = mm;
      h.dec.assign(m, 0);
      std::vector<int> exposed;
      for (int i = 0; i < m; ++i)
        if (h.match[i] > i && half_exposed(h, i)) exposed.push_back(i);
      for (std::size_t dm = 0; dm < (std::size_t(1) << exposed.size()); ++dm) {
        HalfConfig g = h;
        for (std::size_t k = 0; k < exposed.size(); ++k)
          if ((dm >> k) & 1) g.dec[exposed[k]] = g.dec[g.match[exposed[k]]] = 1;
        if (!half_face_ok(g)) continue;
        out.push_back(std::move(g));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

HDiagram h_assemble(const HalfConfig& S, int dec, const HalfConfig& T) {
  if (S.m != T.m) throw std::invalid_argument("h_assemble: sizes differ");
  const int m = S.m;
  HDiagram d;
  d.m = m;
  d.match.assign(2 * m, -1);
  d.dec.assign(2 * m, 0);
  std::vector<int> fs, ft;
  for (int i = 0; i < m; ++i) {
    if (S.match[i] == -1)
      fs.push_back(i);
    else if (S.match[i] > i) {
      d.match[i] = S.match[i];
      d.match[S.match[i]] = i;
      d.dec[i] = d.dec[S.match[i]] = S.dec[i];
    }
    if (T.match[i] == -1)
      ft.push_back(i);
    else if (T.match[i] > i) {
      d.match[m + i] = m + T.match[i];
      d.match[m + T.match[i]] = m + i;
      d.dec[m + i] = d.dec[m + T.match[i]] = T.dec[i];
    }
  }
  if (fs.size() != ft.size()) throw std::invalid_argument("h_assemble: propagating counts differ");
  for (std::size_t k = 0; k < fs.size(); ++k) {
    d.match[fs[k]] = m + ft[k];
    d.match[m + ft[k]] = fs[k];
  }
  if (dec) {
    if (fs.empty()) throw std::logic_error("h_assemble: no propagating edge to decorate");
    d.dec[fs[0]] = d.dec[d.match[fs[0]]] = 1;
  }
  if (!h_admissible(d))
    throw std::logic_error("h_assemble: configuration is not admissible: " + h_diagram_str(d));
  return d;
}

namespace {

struct HShared {
  int m = 0;
  std::vector<int> cell_t;
  std::map<int, int> t2cell;
  std::vector<std::vector<HalfConfig>> halves;
  std::vector<std::map<HalfConfig, int>> hidx;
  std::vector<int> id_b;  // identity label of each cell's table algebra
  std::vector<int> x_b;   // decorated label, or -1 on trivial cells

  HDiagram diagram(const Label& l) const {
    return h_assemble(halves[l.lam][l.S], l.b == id_b[l.lam] ? 0 : 1, halves[l.lam][l.T]);
  }

  std::optional<Label> decode(const HDiagram& d) const {
    int t = 0;
    for (int p = 0; p < m; ++p)
      if (d.match[p] >= m) ++t;
    const auto ct = t2cell.find(t);
    if (ct == t2cell.end()) return std::nullopt;
    const int lam = ct->second;
    HalfConfig S, T;
    S.m = T.m = m;
    S.match.assign(m, -1);
    S.dec.assign(m, 0);
    T.match.assign(m, -1);
    T.dec.assign(m, 0);
    int bdec = 0;
    bool west_prop_seen = false;
    for (int p = 0; p < m; ++p) {
      const int q = d.match[p];
      if (q < m) {
        S.match[p] = q;
        S.dec[p] = S.dec[q] = d.dec[p];
      } else if (!west_prop_seen) {
        west_prop_seen = true;
        bdec = d.dec[p];
      }
    }
    for (int p = m; p < 2 * m; ++p) {
      const int q = d.match[p];
      if (q >= m) {
        T.match[p - m] = q - m;
        T.dec[p - m] = T.dec[q - m] = d.dec[p];
      }
    }
    const auto is = hidx[lam].find(S);
    const auto it = hidx[lam].find(T);
    if (is == hidx[lam].end() || it == hidx[lam].end()) return std::nullopt;
    if (bdec != 0 && x_b[lam] < 0) return std::nullopt;
    return Label{lam, is->second, bdec == 0 ? id_b[lam] : x_b[lam], it->second};
  }
};

}  // namespace

HDiagram TLHInstance::diagram_of(const Label& l) const {
  return h_assemble(halves[l.lam][l.S],
                    l.b == inst.cells[l.lam].gamma.identity_label() ? 0 : 1, halves[l.lam][l.T]);
}

std::optional<Label> TLHInstance::label_of(const HDiagram& d) const {
  for (const Label& l : inst.window())
    if (diagram_of(l) == d) return l;
  return std::nullopt;
}

TLHInstance build_tl_h(int n) {
  if (n < 2) throw std::invalid_argument("build_tl_h: rank must be at least 2");
  const int m = n + 1;
  auto sh = std::make_shared<HShared>();
  sh->m = m;
  for (int t = m; t >= 0; t -= 2) sh->cell_t.push_back(t);

  TLHInstance out;
  out.n = n;
  TabularInstance& inst = out.inst;
  inst.name = "tl_h" + std::to_string(n);
  inst.finite_rank = true;

  for (std::size_t c = 0; c < sh->cell_t.size(); ++c) {
    const int t = sh->cell_t[c];
    sh->t2cell[t] = static_cast<int>(c);
    sh->halves.push_back(h_half_configs(m, t));
    sh->hidx.emplace_back();
    for (std::size_t i = 0; i < sh->halves.back().size(); ++i)
      sh->hidx.back()[sh->halves.back()[i]] = static_cast<int>(i);

    CellData cd;
    cd.name = "t" + std::to_string(t);
    for (const auto& h : sh->halves.back()) cd.tableaux.push_back(h_half_str(h));
    cd.gamma = (t == 0 || t == m) ? TableAlgebra::cyclic_group(1) : TableAlgebra::golden();
    cd.b_window = cd.gamma.window();
    cd.a_override = (m - t) / 2;
    sh->id_b.push_back(cd.gamma.identity_label());
    sh->x_b.push_back((t == 0 || t == m) ? -1 : 1 - cd.gamma.identity_label());
    inst.cells.push_back(std::move(cd));
  }

  const int nc = static_cast<int>(inst.cells.size());
  inst.strictly_less.assign(nc, std::vector<bool>(nc, false));
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      if (sh->cell_t[i] < sh->cell_t[j]) inst.strictly_less[i][j] = true;

  inst.raw_mul = [sh](const Label& x, const Label& y) {
    Element out;
    for (const auto& [d, c] : h_multiply(sh->diagram(x), sh->diagram(y))) {
      const auto l = sh->decode(d);
      if (!l) throw std::logic_error("tl_h: product diagram fails to decode: " + h_diagram_str(d));
      elem_acc(out, *l, c);
    }
    return out;
  };
  inst.star_fn = [](const Label& l) { return Label{l.lam, l.T, l.b, l.S}; };
  inst.trace_fn = [sh](const Label& l) { return h_cylinder_trace(sh->diagram(l)); };

  const Label unit_label{0, 0, sh->id_b[0], 0};
  inst.idempotents.push_back(unit_label);
  inst.unit.emplace(unit_label, Laurent::unit());

  inst.label_str_fn = [sh](const Label& l) {
    const std::string b = l.b == sh->id_b[l.lam] ? "1" : "x";
    return "C[" + h_half_str(sh->halves[l.lam][l.S]) + ";" + b + ";" +
           h_half_str(sh->halves[l.lam][l.T]) + "]";
  };
  inst.label_parse_fn = [sh](const std::string& s) -> std::optional<Label> {
    if (s.size() < 7 || s.substr(0, 2) != "C[" || s.back() != ']') return std::nullopt;
    const std::string body = s.substr(2, s.size() - 3);
    const auto p1 = body.find(';');
    if (p1 == std::string::npos) return std::nullopt;
    const auto p2 = body.find(';', p1 + 1);
    if (p2 == std::string::npos) return std::nullopt;
    const std::string stag = body.substr(0, p1);
    const std::string btag = body.substr(p1 + 1, p2 - p1 - 1);
    const std::string ttag = body.substr(p2 + 1);
    if (btag != "1" && btag != "x") return std::nullopt;
    for (std::size_t c = 0; c < sh->halves.size(); ++c) {
      int si = -1, ti = -1;
      for (std::size_t i = 0; i < sh->halves[c].size(); ++i) {
        if (h_half_str(sh->halves[c][i]) == stag) si = static_cast<int>(i);
        if (h_half_str(sh->halves[c][i]) == ttag) ti = static_cast<int>(i);
      }
      if (si < 0 || ti < 0) continue;
      if (btag == "x" && sh->x_b[c] < 0) return std::nullopt;
      return Label{static_cast<int>(c), si, btag == "x" ? sh->x_b[c] : sh->id_b[c], ti};
    }
    return std::nullopt;
  };

  inst.finalize();

  Report& rep = out.build_report;
  rep.title = inst.name + ": diagram datum";

  std::map<HDiagram, Label> image;
  bool all_adm = true, all_distinct = true, roundtrip = true;
  for (const Label& l : inst.window()) {
    HDiagram d = sh->diagram(l);
    if (!h_admissible(d)) all_adm = false;
    if (!image.emplace(d, l).second) all_distinct = false;
    const auto back = sh->decode(d);
    if (!back || !(*back == l)) roundtrip = false;
  }
  rep.add("assembled labels are admissible diagrams", all_adm);
  rep.add("the codec is injective", all_distinct);
  rep.add("diagrams decode back to their labels", roundtrip);

  out.a = compute_a_values(inst, &rep);
  out.cell_t = sh->cell_t;
  out.halves = sh->halves;
  return out;
}

}  // namespace tabular
