#include "tabular/verify.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "tabular/parallel.hpp"

namespace tabular {
namespace {

Element single(const Label& l) {
  Element e;
  e.emplace(l, Laurent::unit());
  return e;
}

std::string pair_str(const TabularInstance& inst, const Label& x, const Label& y) {
  return inst.label_str(x) + " , " + inst.label_str(y);
}

std::string triple_str(const TabularInstance& inst, const Label& x, const Label& y,
                       const Label& z) {
  return inst.label_str(x) + " , " + inst.label_str(y) + " -> " + inst.label_str(z);
}

}  // namespace

Report verify_a1_a3(const TabularInstance& inst, unsigned threads) {
  Report rep;
  rep.title = inst.name + ": idempotents, star and row action";
  inst.precompute_products(threads);
  const auto& W = inst.window();

  {
    std::set<Label> seen;
    bool distinct = true, valid = true;
    Label bad{};
    for (const Label& l : W) {
      if (!seen.insert(l).second) {
        distinct = false;
        bad = l;
      }
      if (!inst.valid_label(l)) {
        valid = false;
        bad = l;
      }
    }
    rep.add("window labels are distinct", distinct, distinct ? "" : inst.label_str(bad));
    rep.add("window labels are valid", valid, valid ? "" : inst.label_str(bad));
  }

  for (const Label& x : W) {
    const Element ex = single(x);
    rep.require("unit is a two-sided identity",
                elem_eq(inst.mul_elems(inst.unit, ex), ex) &&
                    elem_eq(inst.mul_elems(ex, inst.unit), ex),
                inst.label_str(x));
  }

  {
    bool ok = !inst.idempotents.empty();
    std::string w = ok ? "" : "empty family";
    for (const Label& e : inst.idempotents)
      if (!inst.valid_label(e)) {
        ok = false;
        w = inst.label_str(e);
      }
    rep.add("idempotent labels are valid", ok, w);
  }
  for (const Label& e : inst.idempotents)
    for (const Label& f : inst.idempotents) {
      const Element want = (e == f) ? single(e) : Element{};
      rep.require("idempotent family is orthogonal", elem_eq(inst.mul(e, f), want),
                  pair_str(inst, e, f));
    }

  // every basis element equals 1_e X 1_f for exactly one pair; with
  // orthogonality in place this pins down the corner decomposition
  for (const Label& x : W) {
    Element total;
    int live = 0;
    for (const Label& e : inst.idempotents) {
      const Element left = inst.mul(e, x);
      if (left.empty()) continue;
      for (const Label& f : inst.idempotents) {
        Element p = inst.mul_elems(left, single(f));
        if (p.empty()) continue;
        ++live;
        total = elem_add(std::move(total), p);
      }
    }
    rep.require("idempotent corners recover each basis element",
                live == 1 && elem_eq(total, single(x)), inst.label_str(x));
  }

  for (const Label& x : W) {
    const Label sx = inst.star(x);
    rep.require("star lands on valid labels", inst.valid_label(sx), inst.label_str(x));
    rep.require("star is an involution", inst.star(sx) == x, inst.label_str(x));
    rep.require("star transposes tableaux and bars the decoration",
                sx == inst.structural_star(x), inst.label_str(x));
  }
  for (const Label& x : W)
    for (const Label& y : W) {
      const Element lhs = inst.star_elem(inst.mul(x, y));
      const Element rhs = inst.mul(inst.star(y), inst.star(x));
      rep.require("star reverses products", elem_eq(lhs, rhs), pair_str(inst, x, y));
    }

  // Left multiplication acts on rows: a . C_{S,T}^g lies in the span of
  // C_{S',T}^{r(S')g} modulo lower cells, with r read off at one column and
  // one decoration, then required to work for all of them.
  for (const Label& a : W) {
    for (int lam = 0; lam < inst.n_cells(); ++lam) {
      const auto& cd = inst.cells[lam];
      const int m = static_cast<int>(cd.tableaux.size());
      const int id = cd.gamma.identity_label();
      for (int S = 0; S < m; ++S) {
        std::map<int, GammaLaurent> r;
        bool shaped = true;
        Label leak{};
        for (const auto& [z, c] : inst.reduce_mod_lower(inst.mul(a, Label{lam, S, id, 0}), lam)) {
          if (z.lam != lam || z.T != 0) {
            shaped = false;
            leak = z;
            break;
          }
          r[z.S][z.b] = c;
        }
        rep.require("left action preserves cell and column",
                    shaped,
                    inst.label_str(a) + " times C[" + cd.name + ";" + cd.tableaux[S] +
                        ",...] leaks " + (shaped ? "" : inst.label_str(leak)));
        if (!shaped) continue;
        for (int T = 0; T < m; ++T)
          for (int g : cd.b_window) {
            const Element got =
                inst.reduce_mod_lower(inst.mul(a, Label{lam, S, g, T}), lam);
            Element want;
            for (const auto& [S2, rg] : r)
              for (const auto& [b, c] : rg)
                for (const auto& [b2, k] : cd.gamma.mul(b, g))
                  elem_acc(want, Label{lam, S2, b2, T}, c.scaled(k));
            rep.require("row coefficients are independent of column and decoration",
                        elem_eq(got, want),
                        inst.label_str(a) + " at cell " + cd.name + ", S=" + cd.tableaux[S] +
                            ", T=" + cd.tableaux[T] + ", g=" + cd.gamma.label_name(g));
          }
      }
    }
  }
  return rep;
}

Report verify_a4(const TabularInstance& inst, const AValues& a, unsigned threads) {
  Report rep;
  rep.title = inst.name + ": degree bound and top coefficients";
  inst.precompute_products(threads);
  const auto& W = inst.window();
  const std::size_t n = W.size();

  struct Fail {
    int kind = 0;  // 1 degree bound, 2 attainment pattern, 3 top coefficient
    std::string w;
  };
  std::vector<Fail> fails(n * n);
  parallel_for(n * n, threads, [&](std::size_t idx) {
    const Label& x = W[idx / n];
    const Label& y = W[idx % n];
    Fail f;
    const Element p = inst.mul(x, y);
    std::set<Label> expect;
    const bool chained = x.lam == y.lam && x.T == y.S;
    if (chained)
      for (const auto& [b2, k] : inst.cells[x.lam].gamma.mul(x.b, y.b)) {
        (void)k;
        expect.insert(Label{x.lam, x.S, b2, y.T});
      }
    for (const auto& [z, g] : p) {
      const Degree bound = Degree::finite(a.of_label(z));
      if (bound < g.degree()) {
        f = {1, triple_str(inst, x, y, z) + " has degree " + g.degree().str()};
        break;
      }
      if ((g.degree() == bound) != (expect.count(z) > 0)) {
        f = {2, triple_str(inst, x, y, z) + " has degree " + g.degree().str()};
        break;
      }
    }
    if (f.kind == 0)
      for (const Label& z : expect)
        if (elem_coeff(p, z).degree() != Degree::finite(a.of_label(z))) {
          f = {2, triple_str(inst, x, y, z) + " misses the bound"};
          break;
        }
    if (f.kind == 0 && chained) {
      const int id = inst.cells[x.lam].gamma.identity_label();
      if (x.b == id && y.b == id) {
        const Label z0{x.lam, x.S, id, y.T};
        if (elem_coeff(p, z0).coeff(a.of_label(z0)) != 1)
          f = {3, triple_str(inst, x, y, z0)};
      }
    }
    fails[idx] = std::move(f);
  });
  rep.add("structure-constant degrees respect the cell bound", true);
  rep.add("top degree attained exactly on matched chains", true);
  rep.add("top coefficient is 1 at identity decorations", true);
  for (const Fail& f : fails) {
    if (f.kind == 1) rep.require("structure-constant degrees respect the cell bound", false, f.w);
    if (f.kind == 2) rep.require("top degree attained exactly on matched chains", false, f.w);
    if (f.kind == 3) rep.require("top coefficient is 1 at identity decorations", false, f.w);
  }
  return rep;
}

Report verify_a5(const TabularInstance& inst, const AValues& a, unsigned threads) {
  Report rep;
  rep.title = inst.name + ": trace axioms";
  if (!inst.has_trace()) {
    rep.add("instance ships a trace", false, "no trace provided");
    return rep;
  }
  rep.add("instance ships a trace", true);
  inst.precompute_products(threads);
  const auto& W = inst.window();
  for (const Label& x : W)
    rep.require("trace is star invariant", inst.trace(x) == inst.trace(inst.star(x)),
                inst.label_str(x));
  for (const Label& x : W)
    for (const Label& y : W)
      rep.require("trace is commutative",
                  inst.trace_elem(inst.mul(x, y)) == inst.trace_elem(inst.mul(y, x)),
                  pair_str(inst, x, y));
  for (const Label& x : W) {
    Laurent p = inst.trace(x).times_v_pow(a.of_label(x));
    if (x.S == x.T && x.b == inst.cells[x.lam].gamma.identity_label()) p -= Laurent::unit();
    rep.require("rescaled trace is unitriangular on the basis", p.supported_below(-1),
                inst.label_str(x) + " gives " + laurent_str(p));
  }
  return rep;
}

GammaLaurent bracket(const TabularInstance& inst, int lam, int T, int U) {
  const int id = inst.cells[lam].gamma.identity_label();
  GammaLaurent out;
  const Element p =
      inst.reduce_mod_lower(inst.mul(Label{lam, 0, id, T}, Label{lam, U, id, 0}), lam);
  for (const auto& [z, c] : p) {
    if (z.lam != lam || z.S != 0 || z.T != 0) continue;  // shape failures are the verifier's job
    out[z.b] = c;
  }
  return out;
}

Report verify_bracket(const TabularInstance& inst, const AValues& a) {
  Report rep;
  rep.title = inst.name + ": cell bracket";
  for (int lam = 0; lam < inst.n_cells(); ++lam) {
    const auto& cd = inst.cells[lam];
    const int m = static_cast<int>(cd.tableaux.size());
    const int id = cd.gamma.identity_label();
    const Degree alam = Degree::finite(a.of_cell(lam));
    for (int T = 0; T < m; ++T)
      for (int U = 0; U < m; ++U) {
        {
          const Element p =
              inst.reduce_mod_lower(inst.mul(Label{lam, 0, id, T}, Label{lam, U, id, 0}), lam);
          bool shaped = true;
          Label bad{};
          for (const auto& [z, c] : p) {
            (void)c;
            if (z.lam != lam || z.S != 0 || z.T != 0) {
              shaped = false;
              bad = z;
              break;
            }
          }
          rep.require("bracket product stays on the chosen flanks", shaped,
                      cd.name + " T=" + cd.tableaux[T] + " U=" + cd.tableaux[U] + " leaks " +
                          (shaped ? "" : inst.label_str(bad)));
          if (!shaped) continue;
        }
        const GammaLaurent brk = bracket(inst, lam, T, U);
        for (int S = 0; S < m; ++S)
          for (int V = 0; V < m; ++V)
            for (int b : cd.b_window)
              for (int b2 : cd.b_window) {
                const Element got = inst.reduce_mod_lower(
                    inst.mul(Label{lam, S, b, T}, Label{lam, U, b2, V}), lam);
                Element want;
                for (const auto& [bb, c] : brk)
                  for (const auto& [b3, k3] : cd.gamma.mul(b, bb))
                    for (const auto& [b4, k4] : cd.gamma.mul(b3, b2))
                      elem_acc(want, Label{lam, S, b4, V}, c.scaled(k3 * k4));
                rep.require("bracket is independent of flanking data", elem_eq(got, want),
                            cd.name + " T=" + cd.tableaux[T] + " U=" + cd.tableaux[U] +
                                " at S=" + cd.tableaux[S] + " V=" + cd.tableaux[V] +
                                " b=" + cd.gamma.label_name(b) + " b'=" + cd.gamma.label_name(b2));
              }
        if (T == U) {
          const auto it = brk.find(id);
          const bool monic = it != brk.end() && it->second.degree() == alam &&
                             it->second.leading_coeff() == 1;
          rep.require("diagonal bracket is monic at the cell degree", monic,
                      cd.name + " T=" + cd.tableaux[T]);
          for (const auto& [bb, c] : brk)
            if (bb != id)
              rep.require("non-identity bracket parts stay below the cell degree",
                          c.degree() < alam,
                          cd.name + " T=" + cd.tableaux[T] + " part " + cd.gamma.label_name(bb));
        } else {
          for (const auto& [bb, c] : brk)
            rep.require("off-diagonal brackets stay below the cell degree", c.degree() < alam,
                        cd.name + " T=" + cd.tableaux[T] + " U=" + cd.tableaux[U] + " part " +
                            cd.gamma.label_name(bb));
        }
      }
  }
  return rep;
}

Report verify_bilinear(const TabularInstance& inst, const AValues& a, int samples) {
  (void)a;
  Report rep;
  rep.title = inst.name + ": trace form";
  if (!inst.has_trace()) {
    rep.add("instance ships a trace", false, "no trace provided");
    return rep;
  }
  const auto& W = inst.window();
  const long n = static_cast<long>(W.size());
  for (const Label& x : W)
    for (const Label& y : W) {
      Laurent g = inst.trace_elem(inst.mul(x, inst.star(y)));
      if (x == y) g -= Laurent::unit();
      rep.require("basis is almost orthonormal for the trace form", g.supported_below(-1),
                  pair_str(inst, x, y));
      Laurent f = inst.trace_elem(inst.mul(x, y));
      const bool transpose = x.lam == y.lam && x.S == y.T && x.T == y.S &&
                             inst.cells[x.lam].gamma.bar(x.b) == y.b;
      if (transpose) f -= Laurent::unit();
      rep.require("pairing against the transpose is unitriangular", f.supported_below(-1),
                  pair_str(inst, x, y));
    }
  const long total = n * n * n;
  const long step = std::max(1L, total / std::max(1, samples));
  for (long t = 0; t < total; t += step) {
    const Label& x = W[static_cast<std::size_t>(t / (n * n))];
    const Label& y = W[static_cast<std::size_t>((t / n) % n)];
    const Label& z = W[static_cast<std::size_t>(t % n)];
    const Element yz = inst.mul(y, z);
    const Laurent lhs = inst.trace_elem(inst.mul_elems(single(x), inst.star_elem(yz)));
    const Laurent rhs =
        inst.trace_elem(inst.mul_elems(inst.mul(x, inst.star(z)), single(inst.star(y))));
    rep.require("form is adjoint to right multiplication", lhs == rhs,
                triple_str(inst, x, y, z));
    const Laurent f1 = inst.trace_elem(inst.mul_elems(inst.mul(x, y), single(z)));
    const Laurent f2 = inst.trace_elem(inst.mul_elems(single(x), yz));
    rep.require("trace form is associative", f1 == f2, triple_str(inst, x, y, z));
  }
  return rep;
}

CellsResult compute_cells(const TabularInstance& inst, unsigned threads) {
  CellsResult res;
  res.report.title = inst.name + ": two-sided cells";
  inst.precompute_products(threads);
  const auto& W = inst.window();
  const int n = static_cast<int>(W.size());
  std::map<Label, int> idx;
  for (int i = 0; i < n; ++i) idx.emplace(W[i], i);

  // One-step edges x -> z for z appearing in Kx or xK.  Chains of one-sided
  // steps generate the same preorder as two-sided sandwiches, since the
  // idempotent corners keep every label reachable from itself.
  std::vector<std::set<int>> out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      for (const auto& [z, c] : inst.mul(W[k], W[i])) {
        (void)c;
        res.report.require("products never climb the declared order",
                           z.lam == W[i].lam || inst.cell_lower(z.lam, W[i].lam),
                           triple_str(inst, W[k], W[i], z));
        const auto it = idx.find(z);
        if (it != idx.end()) out[i].insert(it->second);
      }
      for (const auto& [z, c] : inst.mul(W[i], W[k])) {
        (void)c;
        res.report.require("products never climb the declared order",
                           z.lam == W[i].lam || inst.cell_lower(z.lam, W[i].lam),
                           triple_str(inst, W[i], W[k], z));
        const auto it = idx.find(z);
        if (it != idx.end()) out[i].insert(it->second);
      }
    }

  // Tarjan strongly connected components, iterative.
  std::vector<int> order(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> onstack(n, false);
  std::vector<int> stck;
  int next_order = 0, ncomp = 0;
  for (int root = 0; root < n; ++root) {
    if (order[root] >= 0) continue;
    std::vector<std::pair<int, std::set<int>::const_iterator>> dfs;
    order[root] = low[root] = next_order++;
    stck.push_back(root);
    onstack[root] = true;
    dfs.push_back({root, out[root].begin()});
    while (!dfs.empty()) {
      const int u = dfs.back().first;
      auto& it = dfs.back().second;
      if (it != out[u].end()) {
        const int w = *it;
        ++it;  // advance before any push: push_back may invalidate the reference
        if (order[w] < 0) {
          order[w] = low[w] = next_order++;
          stck.push_back(w);
          onstack[w] = true;
          dfs.push_back({w, out[w].begin()});
        } else if (onstack[w]) {
          low[u] = std::min(low[u], order[w]);
        }
      } else {
        if (low[u] == order[u]) {
          while (true) {
            const int w = stck.back();
            stck.pop_back();
            onstack[w] = false;
            comp[w] = ncomp;
            if (w == u) break;
          }
          ++ncomp;
        }
        dfs.pop_back();
        if (!dfs.empty()) low[dfs.back().first] = std::min(low[dfs.back().first], low[u]);
      }
    }
  }

  // Classes sorted by least member for a stable external numbering.
  std::vector<std::vector<int>> members(ncomp);
  for (int i = 0; i < n; ++i) members[comp[i]].push_back(i);
  std::vector<int> class_order(ncomp);
  for (int c = 0; c < ncomp; ++c) class_order[c] = c;
  std::sort(class_order.begin(), class_order.end(),
            [&](int a, int b) { return W[members[a].front()] < W[members[b].front()]; });
  std::vector<int> new_id(ncomp);
  for (int pos = 0; pos < ncomp; ++pos) new_id[class_order[pos]] = pos;
  res.classes.assign(ncomp, {});
  for (int c = 0; c < ncomp; ++c)
    for (int i : members[c]) res.classes[new_id[c]].push_back(W[i]);

  // Partition must match the declared cells on the window.
  std::vector<int> class_of_cell(inst.n_cells(), -1);
  for (int lam = 0; lam < inst.n_cells(); ++lam) {
    std::set<int> found;
    std::set<Label> declared;
    for (const Label& l : inst.cell_window(lam)) {
      declared.insert(l);
      found.insert(new_id[comp[idx[l]]]);
    }
    bool match = found.size() == 1;
    if (match) {
      class_of_cell[lam] = *found.begin();
      const auto& cls = res.classes[class_of_cell[lam]];
      match = declared == std::set<Label>(cls.begin(), cls.end());
    }
    res.report.require("components match the declared cells", match,
                       "cell " + inst.cells[lam].name);
  }

  // Condensation reachability versus the declared strict order.
  std::vector<std::set<int>> cedges(ncomp);
  for (int i = 0; i < n; ++i)
    for (int j : out[i])
      if (new_id[comp[i]] != new_id[comp[j]]) cedges[new_id[comp[i]]].insert(new_id[comp[j]]);
  std::vector<std::vector<bool>> reach(ncomp, std::vector<bool>(ncomp, false));
  for (int s = 0; s < ncomp; ++s) {
    std::deque<int> q{s};
    reach[s][s] = true;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int w : cedges[u])
        if (!reach[s][w]) {
          reach[s][w] = true;
          q.push_back(w);
        }
    }
  }
  for (int a = 0; a < ncomp; ++a)
    for (int b = 0; b < ncomp; ++b)
      if (a != b && reach[b][a]) res.strict_pairs.push_back({a, b});
  if (res.report.all_pass()) {
    for (int l1 = 0; l1 < inst.n_cells(); ++l1)
      for (int l2 = 0; l2 < inst.n_cells(); ++l2) {
        if (l1 == l2) continue;
        const bool declared = inst.cell_lower(l1, l2);
        const bool derived = reach[class_of_cell[l2]][class_of_cell[l1]];
        res.report.require("reachability matches the declared order", derived == declared,
                           "cells " + inst.cells[l1].name + " vs " + inst.cells[l2].name +
                               (derived ? " (derived only)" : " (declared only)"));
      }
  }
  return res;
}

Report verify_lusztig_a(const TabularInstance& inst, const AValues& a) {
  Report rep;
  rep.title = inst.name + ": minimal-shift degree agreement";
  for (int lam = 0; lam < inst.n_cells(); ++lam) {
    const auto cw = inst.cell_window(lam);
    const int alam = a.of_cell(lam);

    // Smallest nonnegative shift pulling Z times the nonpositive lattice of
    // the cell back into the lattice.
    for (const Label& z : cw) {
      int best = 0;
      for (const Label& x : cw)
        for (const auto& [w, g] : inst.mul(z, x))
          if (w.lam == lam && Degree::finite(best) < g.degree()) best = g.degree().value();
      rep.require("minimal-shift degree equals the cell degree", best == alam,
                  inst.label_str(z) + " gives " + std::to_string(best));
    }

    // The same maximum appears whichever of the three slots ranges over the
    // cell pair: target, middle factor, or left factor.
    std::map<Label, int> as_target, as_left, as_mid;
    for (const Label& z : cw) {
      as_target[z] = as_left[z] = as_mid[z] = -1;
    }
    for (const Label& x : cw)
      for (const Label& y : cw)
        for (const auto& [w, g] : inst.mul(x, y)) {
          if (w.lam != lam) continue;
          const int d = g.degree().value();
          if (auto it = as_target.find(w); it != as_target.end() && it->second < d)
            it->second = d;
          if (as_left[x] < d) as_left[x] = d;
          if (as_mid[y] < d) as_mid[y] = d;
        }
    for (const Label& z : cw) {
      // a windowed sweep can miss a target of an infinite-rank cell, never of
      // a finite one
      rep.require("cell-pair maxima agree as target",
                  as_target[z] == alam || (!inst.finite_rank && as_target[z] < 0),
                  inst.label_str(z) + " gives " + std::to_string(as_target[z]));
      rep.require("cell-pair maxima agree as left factor", as_left[z] == alam,
                  inst.label_str(z) + " gives " + std::to_string(as_left[z]));
      rep.require("cell-pair maxima agree as middle factor", as_mid[z] == alam,
                  inst.label_str(z) + " gives " + std::to_string(as_mid[z]));
    }
  }
  return rep;
}

Report verify_p123(const TabularInstance& inst, const AValues& a) {
  Report rep;
  rep.title = inst.name + ": asymptotic prerequisites";
  const auto& W = inst.window();

  // finiteness, and constancy on every column class cut out by an idempotent
  for (int lam = 0; lam < inst.n_cells(); ++lam)
    rep.require("a is finite and nonnegative", a.of_cell(lam) >= 0,
                "cell " + inst.cells[lam].name);
  {
    std::map<Label, Degree> best;
    for (const Label& x : W)
      for (const Label& y : W)
        for (const auto& [z, g] : inst.mul(x, y)) {
          auto it = best.find(z);
          if (it == best.end())
            best.emplace(z, g.degree());
          else if (it->second < g.degree())
            it->second = g.degree();
        }
    for (int lam = 0; lam < inst.n_cells(); ++lam)
      for (const Label& e : inst.idempotents) {
        Degree common = Degree::neg_infinity();
        bool constant = true;
        Label odd{};
        for (const Label& x : inst.cell_window(lam)) {
          if (inst.mul(x, e).empty()) continue;
          const auto it = best.find(x);
          const Degree d = it == best.end() ? Degree::neg_infinity() : it->second;
          if (common.is_neg_infinity())
            common = d;
          else if (!(common == d)) {
            constant = false;
            odd = x;
          }
        }
        rep.require("a is constant on idempotent column classes", constant,
                    "cell " + inst.cells[lam].name + " at " + inst.label_str(e) + " near " +
                        (constant ? "" : inst.label_str(odd)));
      }
  }

  // diagonal identity labels act as a generalized unit at top degree
  for (int lam = 0; lam < inst.n_cells(); ++lam) {
    const auto& cd = inst.cells[lam];
    const int m = static_cast<int>(cd.tableaux.size());
    const int id = cd.gamma.identity_label();
    const int alam = a.of_cell(lam);
    std::vector<Label> D;
    for (int i = 0; i < m; ++i) D.push_back(Label{lam, i, id, i});
    auto top_profile = [&](const Label& x, const Label& y) {
      std::map<Label, Int> prof;
      for (const auto& [z, g] : inst.mul(x, y)) {
        if (z.lam != lam) continue;
        Int c = g.coeff(alam);
        if (c != 0) prof.emplace(z, std::move(c));
      }
      return prof;
    };
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        std::map<Label, Int> want;
        if (i == j) want.emplace(D[i], 1);
        rep.require("diagonal identity labels are orthogonal top idempotents",
                    top_profile(D[i], D[j]) == want, pair_str(inst, D[i], D[j]));
      }
    for (const Label& x : inst.cell_window(lam))
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          std::map<Label, Int> got;
          for (const auto& [zu, cu] : top_profile(D[i], x))
            for (const auto& [z2, c2] : top_profile(zu, D[j])) {
              Int c = cu * c2;
              auto it = got.find(z2);
              if (it == got.end())
                got.emplace(z2, std::move(c));
              else {
                it->second += c;
                if (it->second == 0) got.erase(it);
              }
            }
          std::map<Label, Int> want;
          if (x.S == i && x.T == j) want.emplace(x, 1);
          rep.require("each label sits in exactly one idempotent corner", got == want,
                      inst.label_str(x) + " between " + pair_str(inst, D[i], D[j]));
        }
  }

  // module structures in two independent indeterminates commute
  using VV = std::map<std::pair<int, int>, Int>;
  for (int lam = 0; lam < inst.n_cells(); ++lam) {
    const auto cw = inst.cell_window(lam);
    for (const Label& x : W)
      for (const Label& m : cw)
        for (const Label& y : W) {
          std::map<Label, VV> lhs, rhs;
          for (const auto& [w, g1] : inst.mul(x, m)) {
            if (w.lam != lam) continue;
            for (const auto& [u, g2] : inst.mul(w, y)) {
              if (u.lam != lam) continue;
              for (const auto& [e1, c1] : g1.terms())
                for (const auto& [e2, c2] : g2.terms()) {
                  Int& slot = lhs[u][{e1, e2}];
                  slot += c1 * c2;
                }
            }
          }
          for (const auto& [w, g2] : inst.mul(m, y)) {
            if (w.lam != lam) continue;
            for (const auto& [u, g1] : inst.mul(x, w)) {
              if (u.lam != lam) continue;
              for (const auto& [e1, c1] : g1.terms())
                for (const auto& [e2, c2] : g2.terms()) {
                  Int& slot = rhs[u][{e1, e2}];
                  slot += c1 * c2;
                }
            }
          }
          auto prune = [](std::map<Label, VV>& m2) {
            for (auto it = m2.begin(); it != m2.end();) {
              auto& vv = it->second;
              for (auto jt = vv.begin(); jt != vv.end();)
                jt = (jt->second == 0) ? vv.erase(jt) : std::next(jt);
              it = vv.empty() ? m2.erase(it) : std::next(it);
            }
          };
          prune(lhs);
          prune(rhs);
          rep.require("left and right module structures commute", lhs == rhs,
                      triple_str(inst, x, m, y));
        }
  }
  return rep;
}

}  // namespace tabular
