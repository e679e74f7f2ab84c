#include "tabular/tl_ade.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tabular {

namespace {

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

CoxeterGraph CoxeterGraph::type_a(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
  return from_edges(n, e);
}

CoxeterGraph CoxeterGraph::type_d(int n) {
  if (n < 4) throw std::invalid_argument("bifurcated chain needs at least 4 nodes");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i + 1 < n; ++i) e.push_back({i, i + 1});
  e.push_back({n - 2, n});
  return from_edges(n, e);
}

CoxeterGraph CoxeterGraph::type_e(int n) {
  if (n < 6) throw std::invalid_argument("branched chain needs at least 6 nodes");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i + 1 < n; ++i) e.push_back({i, i + 1});
  e.push_back({3, n});
  return from_edges(n, e);
}

CoxeterGraph CoxeterGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
  CoxeterGraph g;
  g.n_ = n;
  g.adj_.assign(n, std::vector<bool>(n, false));
  int ne = 0;
  for (auto [a, b] : edges) {
    if (a < 1 || a > n || b < 1 || b > n || a == b)
      throw std::invalid_argument("bad edge endpoints");
    if (g.adj_[a - 1][b - 1]) throw std::invalid_argument("duplicate edge");
    g.adj_[a - 1][b - 1] = g.adj_[b - 1][a - 1] = true;
    ++ne;
  }
  if (ne != n - 1) throw std::invalid_argument("graph is not a tree");
  std::vector<bool> seen(n, false);
  std::deque<int> q{0};
  seen[0] = true;
  int found = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v = 0; v < n; ++v)
      if (g.adj_[u][v] && !seen[v]) {
        seen[v] = true;
        ++found;
        q.push_back(v);
      }
  }
  if (found != n) throw std::invalid_argument("graph is not connected");

  int branch = -1;
  for (int u = 0; u < n; ++u) {
    int deg = 0;
    for (int v = 0; v < n; ++v)
      if (g.adj_[u][v]) ++deg;
    if (deg > 3) throw std::invalid_argument("node of degree above three");
    if (deg == 3) {
      if (branch != -1) throw std::invalid_argument("more than one branch node");
      branch = u;
    }
  }
  if (branch == -1) {
    g.shape_ = "A";
    return g;
  }
  std::vector<int> lens;
  for (int v = 0; v < n; ++v) {
    if (!g.adj_[branch][v]) continue;
    int len = 1, prev = branch, cur = v;
    for (;;) {
      int next = -1;
      for (int w = 0; w < n; ++w)
        if (g.adj_[cur][w] && w != prev) next = w;
      if (next == -1) break;
      ++len;
      prev = cur;
      cur = next;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  if (lens[0] == 1 && lens[1] == 1)
    g.shape_ = "D";
  else if (lens[0] == 1 && lens[1] == 2)
    g.shape_ = "E";
  else
    throw std::invalid_argument("branch profile outside the supported shapes");
  return g;
}

std::string word_str(const CoxeterGraph& g, const Word& w) {
  if (w.empty()) return "e";
  std::ostringstream os;
  bool dotted = g.nodes() > 9;
  for (size_t k = 0; k < w.size(); ++k) {
    if (dotted && k) os << '.';
    os << w[k];
  }
  return os.str();
}

std::optional<Word> word_parse(const CoxeterGraph& g, const std::string& s) {
  if (s == "e") return Word{};
  if (s.empty()) return std::nullopt;
  Word w;
  if (g.nodes() > 9) {
    size_t pos = 0;
    while (pos <= s.size()) {
      size_t dot = s.find('.', pos);
      std::string tok = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
      if (tok.empty()) return std::nullopt;
      int v = 0;
      for (char c : tok) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + (c - '0');
      }
      if (v < 1 || v > g.nodes()) return std::nullopt;
      w.push_back(v);
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }
  } else {
    for (char c : s) {
      if (c < '1' || c > '9') return std::nullopt;
      int v = c - '0';
      if (v > g.nodes()) return std::nullopt;
      w.push_back(v);
    }
  }
  return w;
}

Word canonical_word(const CoxeterGraph& g, Word w) {
  // Greedy front extraction gives the lexicographically least member of the
  // commutation class.  A letter is available when everything before it
  // commutes with it; equal letters block each other.
  Word out;
  out.reserve(w.size());
  std::vector<bool> used(w.size(), false);
  for (size_t step = 0; step < w.size(); ++step) {
    int best = -1;
    for (size_t p = 0; p < w.size(); ++p) {
      if (used[p]) continue;
      bool free = true;
      for (size_t q = 0; q < p && free; ++q)
        if (!used[q] && (w[q] == w[p] || g.adjacent(w[q], w[p]))) free = false;
      if (free && (best == -1 || w[p] < w[best])) best = static_cast<int>(p);
    }
    out.push_back(w[best]);
    used[best] = true;
  }
  return out;
}

bool word_is_fc(const CoxeterGraph& g, const Word& w) {
  // Between consecutive occurrences of a letter there must be at least two
  // of its neighbors: zero lets them cancel, one lets a braid through.
  for (size_t k = 0; k < w.size(); ++k) {
    for (size_t p = k; p-- > 0;) {
      if (w[p] != w[k]) continue;
      int t = 0;
      for (size_t q = p + 1; q < k; ++q)
        if (g.adjacent(w[q], w[k])) ++t;
      if (t < 2) return false;
      break;
    }
  }
  return true;
}

Word star_word(const CoxeterGraph& g, const Word& w) {
  return canonical_word(g, Word(w.rbegin(), w.rend()));
}

namespace {

// Rewrites a concatenation of generator letters to its normal form.  Each
// step removes a consecutive equal pair's obstruction: with no neighbor
// between them the two letters merge and emit a loop factor, with exactly
// one neighbor the sandwich collapses onto that neighbor's slot.  Both moves
// preserve [2]^m times the product of the letters, and each shortens the
// word, so the loop terminates on a fully commutative normal form.
std::pair<int, Word> reduce_product_word(const CoxeterGraph& g, Word w) {
  int m = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < w.size() && !changed; ++k) {
      for (size_t p = k; p-- > 0;) {
        if (w[p] != w[k]) continue;
        int nb = -1, cnt = 0;
        for (size_t q = p + 1; q < k; ++q)
          if (g.adjacent(w[q], w[k])) {
            nb = static_cast<int>(q);
            ++cnt;
          }
        if (cnt == 0) {
          w.erase(w.begin() + k);
          ++m;
          changed = true;
        } else if (cnt == 1) {
          w.erase(w.begin() + k);
          w.erase(w.begin() + nb);
          changed = true;
        }
        break;
      }
    }
  }
  return {m, std::move(w)};
}

}  // namespace

std::pair<int, Word> mul_generator(const CoxeterGraph& g, int i, const Word& w) {
  if (i < 1 || i > g.nodes()) throw std::invalid_argument("generator index out of range");
  Word c;
  c.reserve(w.size() + 1);
  c.push_back(i);
  c.insert(c.end(), w.begin(), w.end());
  auto [m, z] = reduce_product_word(g, std::move(c));
  if (!word_is_fc(g, z)) throw std::logic_error("product rewriting left the basis");
  return {m, canonical_word(g, std::move(z))};
}

std::pair<int, Word> mul_monomials(const CoxeterGraph& g, const Word& x, const Word& y) {
  Word c;
  c.reserve(x.size() + y.size());
  c.insert(c.end(), x.begin(), x.end());
  c.insert(c.end(), y.begin(), y.end());
  auto [m, z] = reduce_product_word(g, std::move(c));
  if (!word_is_fc(g, z)) throw std::logic_error("product rewriting left the basis");
  return {m, canonical_word(g, std::move(z))};
}

WcSet enumerate_wc(const CoxeterGraph& g, int length_cap, int size_budget) {
  WcSet out;
  std::set<Word> seen;
  std::deque<Word> frontier;
  seen.insert(Word{});
  frontier.push_back(Word{});
  bool truncated = false;
  while (!frontier.empty() && !truncated) {
    Word w = frontier.front();
    frontier.pop_front();
    for (int i = 1; i <= g.nodes(); ++i) {
      Word c = w;
      c.push_back(i);
      if (!word_is_fc(g, c)) continue;
      Word z = canonical_word(g, std::move(c));
      if (seen.count(z)) continue;
      if (static_cast<int>(w.size()) >= length_cap ||
          static_cast<int>(seen.size()) >= size_budget) {
        truncated = true;
        break;
      }
      seen.insert(z);
      frontier.push_back(std::move(z));
    }
  }
  out.words.assign(seen.begin(), seen.end());
  std::sort(out.words.begin(), out.words.end(), shortlex_less);
  out.complete = !truncated;
  return out;
}

namespace {

// Index-level facts shared by the instance closures.
struct TLShared {
  CoxeterGraph g;
  std::vector<Word> words;
  std::map<Word, int> index;
  std::vector<int> star_of;
  std::vector<Label> label_of;
  std::map<Label, int> lab2idx;
};

std::vector<std::vector<int>> reach_closure(int N, const std::vector<std::set<int>>& step) {
  // per-source breadth-first sweep; reach[x] always contains x
  std::vector<std::vector<int>> reach(N);
  for (int s = 0; s < N; ++s) {
    std::vector<bool> vis(N, false);
    std::deque<int> q{s};
    vis[s] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : step[u])
        if (!vis[v]) {
          vis[v] = true;
          q.push_back(v);
        }
    }
    for (int v = 0; v < N; ++v)
      if (vis[v]) reach[s].push_back(v);
  }
  return reach;
}

// Mutual-reachability classes, ordered by least member.
std::vector<int> components(int N, const std::vector<std::vector<int>>& reach,
                            std::vector<std::vector<int>>* members) {
  std::vector<std::vector<bool>> rb(N, std::vector<bool>(N, false));
  for (int u = 0; u < N; ++u)
    for (int v : reach[u]) rb[u][v] = true;
  std::vector<int> comp(N, -1);
  members->clear();
  for (int x = 0; x < N; ++x) {
    if (comp[x] != -1) continue;
    int id = static_cast<int>(members->size());
    members->push_back({x});
    comp[x] = id;
    for (int y = x + 1; y < N; ++y)
      if (comp[y] == -1 && rb[x][y] && rb[y][x]) {
        comp[y] = id;
        members->back().push_back(y);
      }
  }
  return comp;
}

}  // namespace

TLAdeInstance build_tl_ade(const CoxeterGraph& g, int length_cap, int size_budget) {
  WcSet wc = enumerate_wc(g, length_cap, size_budget);
  if (!wc.complete)
    throw std::invalid_argument("monomial basis did not close within the caps: " + g.name());

  auto sh = std::make_shared<TLShared>();
  sh->g = g;
  sh->words = std::move(wc.words);
  const int N = static_cast<int>(sh->words.size());
  for (int i = 0; i < N; ++i) sh->index[sh->words[i]] = i;
  sh->star_of.resize(N);
  for (int i = 0; i < N; ++i) sh->star_of[i] = sh->index.at(star_word(g, sh->words[i]));

  // One-sided generator steps generate the full multiplication preorders:
  // every monomial product factors through a chain of them.
  std::vector<std::set<int>> lstep(N), rstep(N), bstep(N);
  for (int x = 0; x < N; ++x) {
    for (int i = 1; i <= g.nodes(); ++i) {
      int zl = sh->index.at(mul_generator(g, i, sh->words[x]).second);
      int zr = sh->star_of[sh->index.at(mul_generator(g, i, sh->words[sh->star_of[x]]).second)];
      lstep[x].insert(zl);
      rstep[x].insert(zr);
      bstep[x].insert(zl);
      bstep[x].insert(zr);
    }
  }
  auto reach2 = reach_closure(N, bstep);
  auto reachl = reach_closure(N, lstep);
  std::vector<std::vector<int>> cells2, lcells;
  std::vector<int> comp = components(N, reach2, &cells2);
  components(N, reachl, &lcells);
  const int nc = static_cast<int>(cells2.size());

  // reach2[u] holds everything at or below u, so cell a sits strictly below
  // cell b when a's representative is reachable from b's.
  std::vector<std::vector<bool>> rb(N, std::vector<bool>(N, false));
  for (int u = 0; u < N; ++u)
    for (int v : reach2[u]) rb[u][v] = true;
  std::vector<std::vector<bool>> below(nc, std::vector<bool>(nc, false));
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      if (a != b && rb[cells2[b][0]][cells2[a][0]]) below[a][b] = true;

  // Left classes within each cell, ordered by least member; the column of a
  // basis element is its left class, the row the left class of its reversal.
  std::vector<int> tcol(N, -1), srow(N, -1);
  std::vector<std::vector<std::string>> tabnames(nc);
  std::vector<std::vector<int>> lcells_of(nc);
  for (int lc = 0; lc < static_cast<int>(lcells.size()); ++lc) {
    int cell = comp[lcells[lc][0]];
    int local = static_cast<int>(lcells_of[cell].size());
    lcells_of[cell].push_back(lc);
    tabnames[cell].push_back(word_str(g, sh->words[lcells[lc][0]]));
    for (int x : lcells[lc]) tcol[x] = local;
  }
  for (int x = 0; x < N; ++x) srow[x] = tcol[sh->star_of[x]];

  Report rep;
  rep.title = "build TL(" + g.name() + ")";
  for (int c = 0; c < nc; ++c) {
    int k = static_cast<int>(lcells_of[c].size());
    std::ostringstream w;
    w << "cell " << word_str(g, sh->words[cells2[c][0]]) << ": " << cells2[c].size()
      << " elements, " << k << " left classes";
    rep.require("cells split into left class squares",
                static_cast<int>(cells2[c].size()) == k * k, w.str());
    std::set<std::pair<int, int>> pairs;
    for (int x : cells2[c]) pairs.insert({srow[x], tcol[x]});
    rep.require("row and column classes pair off the basis",
                static_cast<int>(pairs.size()) == static_cast<int>(cells2[c].size()), w.str());
    bool starfix = true;
    for (int x : cells2[c])
      if (comp[sh->star_of[x]] != c) starfix = false;
    rep.require("reversal fixes each cell", starfix, w.str());
  }
  {
    bool invol = true;
    for (int x = 0; x < N && invol; ++x)
      if (sh->star_of[sh->star_of[x]] != x) invol = false;
    rep.require("reversal is an involution on the basis", invol, g.name());
  }

  sh->label_of.assign(N, Label{});
  for (int x = 0; x < N; ++x) {
    sh->label_of[x] = Label{comp[x], srow[x], 0, tcol[x]};
    sh->lab2idx[sh->label_of[x]] = x;
  }

  TabularInstance inst;
  inst.name = "TL(" + g.name() + ")";
  for (int c = 0; c < nc; ++c) {
    CellData cd;
    cd.name = word_str(g, sh->words[cells2[c][0]]);
    cd.tableaux = tabnames[c];
    cd.gamma = TableAlgebra::cyclic_group(1);
    cd.b_window = {0};
    inst.cells.push_back(std::move(cd));
  }
  inst.strictly_less = below;
  inst.raw_mul = [sh](const Label& la, const Label& lb) {
    int x = sh->lab2idx.at(la), y = sh->lab2idx.at(lb);
    auto [m, z] = mul_monomials(sh->g, sh->words[x], sh->words[y]);
    Element e;
    e[sh->label_of[sh->index.at(z)]] = loop_delta_pow(m);
    return e;
  };
  inst.star_fn = [sh](const Label& l) { return sh->label_of[sh->star_of[sh->lab2idx.at(l)]]; };
  inst.idempotents = {sh->label_of[0]};
  inst.unit = Element{{sh->label_of[0], Laurent::unit()}};
  inst.label_str_fn = [sh](const Label& l) {
    return "b[" + word_str(sh->g, sh->words[sh->lab2idx.at(l)]) + "]";
  };
  inst.label_parse_fn = [sh](const std::string& s) -> std::optional<Label> {
    if (s.size() < 3 || s.substr(0, 2) != "b[" || s.back() != ']') return std::nullopt;
    auto w = word_parse(sh->g, s.substr(2, s.size() - 3));
    if (!w || !word_is_fc(sh->g, *w)) return std::nullopt;
    auto it = sh->index.find(canonical_word(sh->g, *w));
    if (it == sh->index.end()) return std::nullopt;
    return sh->label_of[it->second];
  };
  inst.finite_rank = true;
  inst.finalize();

  AValues a = compute_a_values(inst, &rep);

  // Trace: weight each cell's module trace by v^{-2a}.  On the column-zero
  // basis a monomial contributes exactly when multiplication reproduces the
  // same element, with its loop factor as the diagonal entry.
  std::vector<std::vector<int>> col0(nc);
  for (int c = 0; c < nc; ++c) {
    col0[c].resize(lcells_of[c].size());
    for (int x : cells2[c])
      if (tcol[x] == 0) col0[c][srow[x]] = x;
  }
  std::vector<int> av = a.per_cell;
  inst.trace_fn = [sh, col0, av](const Label& l) {
    int z = sh->lab2idx.at(l);
    Laurent tot;
    for (size_t c = 0; c < col0.size(); ++c)
      for (int x : col0[c]) {
        auto [m, zw] = mul_monomials(sh->g, sh->words[z], sh->words[x]);
        if (sh->index.at(zw) == x) tot += Laurent::v_pow(-2 * av[c]) * loop_delta_pow(m);
      }
    return tot;
  };

  TLAdeInstance out;
  out.graph = g;
  out.inst = std::move(inst);
  out.basis = sh->words;
  out.index = sh->index;
  out.label_of = sh->label_of;
  out.a = std::move(a);
  out.build_report = std::move(rep);
  return out;
}

CellModuleRep cell_module(const TLAdeInstance& t, int lam) {
  const int k = static_cast<int>(t.inst.cells[lam].tableaux.size());
  const int n = t.graph.nodes();
  std::vector<int> col0(k, -1);
  for (int x = 0; x < static_cast<int>(t.basis.size()); ++x) {
    const Label& l = t.label_of[x];
    if (l.lam == lam && l.T == 0) col0[l.S] = x;
  }
  for (int S = 0; S < k; ++S)
    if (col0[S] < 0) throw std::logic_error("cell is missing a column representative");
  CellModuleRep rep;
  rep.lam = lam;
  rep.gen.assign(n, std::vector<std::vector<Laurent>>(k, std::vector<Laurent>(k)));
  for (int i = 1; i <= n; ++i)
    for (int S = 0; S < k; ++S) {
      auto [m, zw] = mul_generator(t.graph, i, t.basis[col0[S]]);
      const Label& L = t.label_of[t.index.at(zw)];
      if (L.lam != lam) continue;  // dropped to a lower cell
      if (L.T != 0) throw std::logic_error("left action left the column");
      rep.gen[i - 1][L.S][S] += loop_delta_pow(m);
    }
  return rep;
}

namespace {

using Mat = std::vector<std::vector<Laurent>>;

Mat mat_mul(const Mat& A, const Mat& B) {
  size_t n = A.size();
  Mat C(n, std::vector<Laurent>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (A[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

Mat mat_scale(const Mat& A, const Laurent& c) {
  Mat C = A;
  for (auto& row : C)
    for (auto& x : row) x = x * c;
  return C;
}

bool mat_eq(const Mat& A, const Mat& B) {
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A.size(); ++j)
      if (!(A[i][j] == B[i][j])) return false;
  return true;
}

Mat mat_identity(size_t n) {
  Mat C(n, std::vector<Laurent>(n));
  for (size_t i = 0; i < n; ++i) C[i][i] = Laurent::unit();
  return C;
}

}  // namespace

Report verify_cell_module(const TLAdeInstance& t, const CellModuleRep& rep) {
  Report r;
  r.title = t.inst.name + " cell module " + t.inst.cells[rep.lam].name;
  const int n = t.graph.nodes();
  const int k = static_cast<int>(t.inst.cells[rep.lam].tableaux.size());

  for (int i = 1; i <= n; ++i) {
    const Mat& M = rep.gen[i - 1];
    std::string w = "generator " + std::to_string(i);
    r.require("generator matrices square to the loop multiple",
              mat_eq(mat_mul(M, M), mat_scale(M, loop_delta())), w);
    for (int j = i + 1; j <= n; ++j) {
      const Mat& Mj = rep.gen[j - 1];
      std::string wp = "generators " + std::to_string(i) + "," + std::to_string(j);
      if (t.graph.adjacent(i, j)) {
        r.require("adjacent sandwich products collapse",
                  mat_eq(mat_mul(mat_mul(M, Mj), M), M) &&
                      mat_eq(mat_mul(mat_mul(Mj, M), Mj), Mj),
                  wp);
      } else {
        r.require("distant generator matrices commute", mat_eq(mat_mul(M, Mj), mat_mul(Mj, M)),
                  wp);
      }
    }
  }

  // Re-extract the action from every column; the matrices must agree.
  {
    std::vector<std::vector<int>> col(k, std::vector<int>(k, -1));
    for (int x = 0; x < static_cast<int>(t.basis.size()); ++x) {
      const Label& l = t.label_of[x];
      if (l.lam == rep.lam) col[l.T][l.S] = x;
    }
    for (int T = 0; T < k; ++T) {
      bool same = true;
      for (int i = 1; i <= n && same; ++i) {
        Mat M(k, std::vector<Laurent>(k));
        for (int S = 0; S < k; ++S) {
          auto [m, zw] = mul_generator(t.graph, i, t.basis[col[T][S]]);
          const Label& L = t.label_of[t.index.at(zw)];
          if (L.lam != rep.lam) continue;
          if (L.T != T) {
            same = false;
            break;
          }
          M[L.S][S] += loop_delta_pow(m);
        }
        if (same && !mat_eq(M, rep.gen[i - 1])) same = false;
      }
      r.require("the action is independent of the extraction column", same,
                "column " + std::to_string(T));
    }
  }

  // Folding a basis word through the matrices must reproduce the diagonal
  // count that feeds the shipped trace.
  {
    bool ok = true;
    std::string wit;
    for (int z = 0; z < static_cast<int>(t.basis.size()) && ok; ++z) {
      Mat M = mat_identity(k);
      for (int letter : t.basis[z]) M = mat_mul(M, rep.gen[letter - 1]);
      Laurent tr;
      for (int S = 0; S < k; ++S) tr += M[S][S];
      Laurent direct;
      for (int x = 0; x < static_cast<int>(t.basis.size()); ++x) {
        const Label& l = t.label_of[x];
        if (l.lam != rep.lam || l.T != 0) continue;
        auto [m, zw] = mul_monomials(t.graph, t.basis[z], t.basis[x]);
        if (t.index.at(zw) == x) direct += loop_delta_pow(m);
      }
      if (!(tr == direct)) {
        ok = false;
        wit = t.inst.label_str(t.label_of[z]);
      }
    }
    r.require("word products of the matrices reproduce the module trace", ok, wit);
  }
  return r;
}

}  // namespace tabular
