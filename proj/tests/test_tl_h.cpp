// Decorated tangle algebras of type H: admissible diagrams against a rule
// literal oracle, the generator presentation, cylinder traces with a
// geometric winding oracle, and the table datum with the full axiom suite.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tabular/asymptotic.hpp"
#include "tabular/tl_h.hpp"
#include "tabular/verify.hpp"

using namespace tabular;

namespace {

void expect_all_pass(const Report& r) {
  INFO(r.to_text());
  CHECK(r.all_pass());
}

// ---------------------------------------------------------------------------
// Oracle: a literal restatement of the diagram rules, sharing no code with
// the production checker.  Positions run around the frame cut open at the
// west face, so exposure is the absence of a strictly containing edge.

int opos(int m, int p) { return p < m ? p : 3 * m - 1 - p; }

struct OracleEdge {
  int lo, hi, dec;
  bool prop;
};

std::vector<OracleEdge> oracle_edges(const HDiagram& d) {
  std::vector<OracleEdge> out;
  for (int p = 0; p < 2 * d.m; ++p) {
    if (d.match[p] <= p) continue;
    int a = opos(d.m, p), b = opos(d.m, d.match[p]);
    if (a > b) std::swap(a, b);
    out.push_back({a, b, d.dec[p], (p < d.m) != (d.match[p] < d.m)});
  }
  return out;
}

bool oracle_planar(const HDiagram& d) {
  const auto ed = oracle_edges(d);
  for (size_t i = 0; i < ed.size(); ++i)
    for (size_t j = 0; j < ed.size(); ++j) {
      if (i == j) continue;
      if (ed[i].lo < ed[j].lo && ed[j].lo < ed[i].hi && ed[i].hi < ed[j].hi) return false;
    }
  return true;
}

bool oracle_exposed(const std::vector<OracleEdge>& ed, size_t i) {
  for (size_t j = 0; j < ed.size(); ++j)
    if (j != i && ed[j].lo < ed[i].lo && ed[i].hi < ed[j].hi) return false;
  return true;
}

// north nodes are 1..m west to east, south nodes likewise; the face rule
// wants a decorated {1,2} arc or an undecorated {i,i+1} arc with i > 1
bool oracle_face(const HDiagram& d, bool north) {
  const int base = north ? 0 : d.m;
  for (int i = 0; i + 1 < d.m; ++i) {
    if (d.match[base + i] != base + i + 1) continue;
    if (i == 0 && d.dec[base + i] == 1) return true;
    if (i > 0 && d.dec[base + i] == 0) return true;
  }
  return false;
}

bool oracle_admissible(const HDiagram& d) {
  if (!oracle_planar(d)) return false;
  const auto ed = oracle_edges(d);
  bool all_prop = true;
  for (const auto& e : ed)
    if (!e.prop) all_prop = false;
  for (size_t i = 0; i < ed.size(); ++i) {
    if (ed[i].dec > 1) return false;
    if (ed[i].dec == 1 && all_prop) return false;
    if (ed[i].dec == 1 && !oracle_exposed(ed, i)) return false;
  }
  if (all_prop) return true;
  return oracle_face(d, true) && oracle_face(d, false);
}

void gen_matchings(std::vector<int>& match, std::vector<std::vector<int>>& out) {
  const int N = static_cast<int>(match.size());
  int p = 0;
  while (p < N && match[p] >= 0) ++p;
  if (p == N) {
    out.push_back(match);
    return;
  }
  for (int q = p + 1; q < N; ++q) {
    if (match[q] >= 0) continue;
    match[p] = q;
    match[q] = p;
    gen_matchings(match, out);
    match[p] = -1;
    match[q] = -1;
  }
}

// every diagram with at most one decoration per edge
std::vector<HDiagram> all_candidates(int m) {
  std::vector<int> work(2 * m, -1);
  std::vector<std::vector<int>> matchings;
  gen_matchings(work, matchings);
  std::vector<HDiagram> out;
  for (const auto& mm : matchings) {
    std::vector<int> reps;
    for (int p = 0; p < 2 * m; ++p)
      if (mm[p] > p) reps.push_back(p);
    for (size_t mask = 0; mask < (size_t(1) << reps.size()); ++mask) {
      HDiagram d;
      d.m = m;
      d.match = mm;
      d.dec.assign(2 * m, 0);
      for (size_t k = 0; k < reps.size(); ++k)
        if ((mask >> k) & 1) d.dec[reps[k]] = d.dec[mm[reps[k]]] = 1;
      out.push_back(std::move(d));
    }
  }
  return out;
}

HDiagram diag(int m, std::vector<std::pair<int, int>> arcs, std::vector<int> decorated = {}) {
  HDiagram d;
  d.m = m;
  d.match.assign(2 * m, -1);
  d.dec.assign(2 * m, 0);
  for (const auto& [p, q] : arcs) {
    d.match[p] = q;
    d.match[q] = p;
  }
  for (int p : decorated) d.dec[p] = d.dec[d.match[p]] = 1;
  return d;
}

// ---------------------------------------------------------------------------
// Geometric winding oracle: lay the glued loop on an annulus whose angular
// direction is the seam crossing, sample it as a polygon and count turns
// around the origin with atan2.

struct LoopInfo {
  int accum = 0;  // net seam crossings
  int turns = 0;  // polygon winding around the annulus core
};

std::vector<LoopInfo> walk_loops(const HDiagram& d) {
  const int m = d.m;
  std::vector<bool> seen(2 * m, false);
  std::vector<LoopInfo> out;
  for (int s = 0; s < 2 * m; ++s) {
    if (seen[s]) continue;
    LoopInfo info;
    std::vector<std::pair<double, double>> pts;  // (west-east x, lifted y)
    int p = s;
    double lift = 0;
    while (!seen[p]) {
      seen[p] = true;
      const int q = d.match[p];
      seen[q] = true;
      // the edge from p to q stays inside one copy of the strip
      const double xp = p < m ? p : p - m;
      const double xq = q < m ? q : q - m;
      const double yp = p < m ? 1.0 : 0.0;
      const double yq = q < m ? 1.0 : 0.0;
      pts.push_back({xp, lift + yp});
      pts.push_back({(xp + xq) / 2, lift + (yp + yq) / 2 + 0.21});
      pts.push_back({xq, lift + yq});
      if (q < m) {
        info.accum += 1;
        lift += 1;  // leave through the north face, re-enter from the south
        p = m + q;
      } else {
        info.accum -= 1;
        lift -= 1;
        p = q - m;
      }
    }
    // map to the annulus and accumulate the angle swept around the origin
    double total = 0;
    const double pi = 3.14159265358979323846;
    auto point = [&](double x, double y) {
      const double r = 1.0 + (x + 1) / (m + 2);
      const double th = 2 * pi * y;
      return std::pair<double, double>(r * std::cos(th), r * std::sin(th));
    };
    std::vector<std::pair<double, double>> poly;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
      for (int k = 0; k < 12; ++k) {
        const double u = k / 12.0;
        poly.push_back(point(pts[i].first + u * (pts[i + 1].first - pts[i].first),
                             pts[i].second + u * (pts[i + 1].second - pts[i].second)));
      }
    poly.push_back(point(pts[0].first, pts[0].second));
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
      const auto [x1, y1] = poly[i];
      const auto [x2, y2] = poly[i + 1];
      total += std::atan2(x1 * y2 - y1 * x2, x1 * x2 + y1 * y2);
    }
    info.turns = static_cast<int>(std::lround(total / (2 * pi)));
    out.push_back(info);
  }
  return out;
}

Element elem_of(const Label& l) { return Element{{l, Laurent::unit()}}; }

}  // namespace

TEST_CASE("admissible diagrams are exactly the codec image") {
  for (int n : {2, 3}) {
    const int m = n + 1;
    CAPTURE(n);
    std::set<HDiagram> oracle_set;
    for (const auto& d : all_candidates(m)) {
      const bool ok = oracle_admissible(d);
      CHECK(h_admissible(d) == ok);
      if (ok) oracle_set.insert(d);
    }
    CHECK(oracle_set.size() == (n == 2 ? 9u : 44u));

    const auto t = build_tl_h(n);
    std::set<HDiagram> image;
    for (const Label& l : t.inst.window()) image.insert(t.diagram_of(l));
    CHECK(image == oracle_set);
  }
}

TEST_CASE("half configurations carry the face and exposure rules") {
  const auto t2 = build_tl_h(2);
  CHECK(t2.cell_t == std::vector<int>{3, 1});
  CHECK(t2.inst.cells[0].tableaux == std::vector<std::string>{"e"});
  CHECK(t2.inst.cells[1].tableaux == std::vector<std::string>{"23", "12*"});

  const auto t3 = build_tl_h(3);
  CHECK(t3.cell_t == std::vector<int>{4, 2, 0});
  CHECK(t3.inst.cells[1].tableaux == std::vector<std::string>{"34", "23", "12*"});
  CHECK(t3.inst.cells[2].tableaux ==
        std::vector<std::string>{"12.34", "12*.34", "12*.34*", "14.23", "14*.23"});

  // the undecorated westmost pair alone is not a face, and decorating a
  // nested or blocked arc is not allowed
  for (const auto& h : t3.halves[2]) {
    CHECK(h_half_str(h) != "12.34*");
    CHECK(h_half_str(h) != "14.23*");
  }
  for (const auto& h : t2.halves[1]) CHECK(h_half_str(h) != "12");

  // exposure on full diagrams: a nested arc is hidden, parallel arcs and the
  // westmost propagating edge are not
  const auto nested = diag(4, {{0, 3}, {1, 2}, {4, 7}, {5, 6}});
  CHECK_FALSE(h_west_exposed(nested, 1));
  CHECK(h_west_exposed(nested, 0));
  const auto parallel = diag(4, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  for (int p : {0, 2, 4, 6}) CHECK(h_west_exposed(parallel, p));
  const auto ident = HDiagram::identity(4);
  CHECK(h_west_exposed(ident, 0));
  CHECK_FALSE(h_west_exposed(ident, 1));
}

TEST_CASE("generator presentation holds on the diagrams") {
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    expect_all_pass(h_presentation_check(n));
  }

  // b1 b2 is the single decorated diagram joining the faces
  const auto g = h_generators(2);
  const auto p12 = h_multiply(g[0], g[1]);
  const auto want = diag(3, {{0, 1}, {2, 3}, {4, 5}}, {0, 2});
  REQUIRE(p12.size() == 1);
  CHECK(p12.begin()->first == want);
  CHECK(p12.begin()->second == Laurent::unit());

  // b1 b2 b1 opens into the decorated and the plain return diagram
  const auto p121 = h_multiply(p12, HCombo{{g[0], Laurent::unit()}});
  const auto d_plain = diag(3, {{0, 1}, {3, 4}, {2, 5}}, {0, 3});
  const auto d_dec = diag(3, {{0, 1}, {3, 4}, {2, 5}}, {0, 3, 2});
  REQUIRE(p121.size() == 2);
  CHECK(p121.at(d_plain) == Laurent::unit());
  CHECK(p121.at(d_dec) == Laurent::unit());

  // a doubly decorated loop is worth one plain loop
  const auto cup = diag(2, {{0, 1}, {2, 3}}, {0, 2});
  const auto sq = h_multiply(cup, cup);
  REQUIRE(sq.size() == 1);
  CHECK(sq.at(cup) == loop_delta());

  // a singly decorated glue loop kills the term: the decorated cap of the
  // west generator against a plain cup
  const auto west = h_generators(3)[0];
  const auto plain = diag(4, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}, {4});
  CHECK(h_admissible(plain));
  CHECK(h_multiply(west, plain).empty());
}

TEST_CASE("cylinder closures and the trace") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const int m = n + 1;
    const auto id_close = h_cylinder_closure(HDiagram::identity(m));
    CHECK(id_close.around == m);
    CHECK(id_close.terms == 1);
    CHECK(id_close.value == Laurent::unit());
    for (const auto& gen : h_generators(n))
      CHECK(h_cylinder_trace(gen) == loop_delta() * Laurent::v_pow(-2));
  }

  const auto t2 = build_tl_h(2);
  const std::vector<std::pair<std::string, Laurent>> frozen = {
      {"C[e;1;e]", Laurent::unit()},
      {"C[23;1;23]", Laurent::v_pow(-1) + Laurent::v_pow(-3)},
      {"C[23;1;12*]", Laurent()},
      {"C[23;x;23]", Laurent()},
      {"C[23;x;12*]", Laurent::v_pow(-2)},
      {"C[12*;1;23]", Laurent()},
      {"C[12*;1;12*]", Laurent::v_pow(-1) + Laurent::v_pow(-3)},
      {"C[12*;x;23]", Laurent::v_pow(-2)},
      {"C[12*;x;12*]", Laurent()},
  };
  for (const auto& [name, want] : frozen) {
    CAPTURE(name);
    const auto l = t2.inst.label_parse(name);
    REQUIRE(l.has_value());
    CHECK(t2.inst.trace(*l) == want);
  }

  for (int n : {2, 3}) {
    CAPTURE(n);
    const auto t = build_tl_h(n);
    const auto& W = t.inst.window();
    // the rescaled diagonal identity labels evaluate to the golden power
    for (int lam = 0; lam < t.inst.n_cells(); ++lam) {
      const int a = t.a.of_cell(lam);
      const int id = t.inst.cells[lam].gamma.identity_label();
      Laurent want = Laurent::unit();
      for (int k = 0; k < a; ++k) want = want * (Laurent::unit() + Laurent::v_pow(-2));
      for (int S = 0; S < static_cast<int>(t.inst.cells[lam].tableaux.size()); ++S)
        CHECK(t.inst.trace(Label{lam, S, id, S}) * Laurent::v_pow(a) == want);
    }
    for (const Label& l : W) CHECK(t.inst.trace(l) == t.inst.trace(t.inst.star(l)));
    // symmetry through products
    for (const Label& x : W)
      for (const Label& y : W)
        CHECK(t.inst.trace_elem(t.inst.mul(x, y)) == t.inst.trace_elem(t.inst.mul(y, x)));
    // closures stay within two trace diagram terms, one decorated loop
    for (const Label& x : W) {
      const auto ci = h_cylinder_closure(t.diagram_of(x));
      CHECK(ci.terms <= 2);
      CHECK(ci.decorated_around <= 1);
      CHECK((t.cell_t[x.lam] - ci.around) % 2 == 0);
    }
  }
}

TEST_CASE("seam crossings agree with the geometric winding oracle") {
  std::mt19937 rng(20260823);
  std::vector<HDiagram> pool;
  for (int n : {2, 3}) {
    for (const auto& gen : h_generators(n)) pool.push_back(gen);
    pool.push_back(HDiagram::identity(n + 1));
    const auto gens = h_generators(n);
    for (int trial = 0; trial < 25; ++trial) {
      HCombo acc{{HDiagram::identity(n + 1), Laurent::unit()}};
      const int len = 1 + static_cast<int>(rng() % 5);
      for (int k = 0; k < len; ++k)
        acc = h_multiply(acc, HCombo{{gens[rng() % gens.size()], Laurent::unit()}});
      for (const auto& [d, c] : acc) {
        (void)c;
        pool.push_back(d);
      }
    }
  }
  int around_loops = 0;
  for (const auto& d : pool) {
    const auto loops = walk_loops(d);
    int wound = 0;
    for (const auto& li : loops) {
      CHECK(std::abs(li.turns) <= 1);
      CHECK((li.accum != 0) == (li.turns != 0));
      if (li.accum != 0) ++wound;
    }
    CHECK(h_cylinder_closure(d).around == wound);
    around_loops += wound;
  }
  CHECK(around_loops > 0);
}

TEST_CASE("the table datum carries the axiom suite") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const auto t = build_tl_h(n);
    const auto& inst = t.inst;
    expect_all_pass(t.build_report);
    CHECK(inst.window().size() == (n == 2 ? 9u : 44u));
    const std::vector<int> want_a = n == 2 ? std::vector<int>{0, 1} : std::vector<int>{0, 1, 2};
    CHECK(t.a.per_cell == want_a);

    inst.precompute_products(4);
    expect_all_pass(verify_a1_a3(inst, 4));
    expect_all_pass(verify_a4(inst, t.a, 4));
    expect_all_pass(verify_a5(inst, t.a, 4));
    expect_all_pass(verify_bracket(inst, t.a));
    expect_all_pass(verify_bilinear(inst, t.a));
    const auto cr = compute_cells(inst, 4);
    expect_all_pass(cr.report);
    std::set<std::pair<int, int>> want_pairs;
    for (int i = 0; i < inst.n_cells(); ++i)
      for (int j = 0; j < i; ++j) want_pairs.insert({i, j});  // total order by cell index
    CHECK(std::set<std::pair<int, int>>(cr.strict_pairs.begin(), cr.strict_pairs.end()) ==
          want_pairs);
    expect_all_pass(verify_lusztig_a(inst, t.a));
    expect_all_pass(verify_p123(inst, t.a));
    const auto as = build_asymptotic(inst, t.a);
    expect_all_pass(verify_asymptotic(as));
    expect_all_pass(matrix_iso_check(as));
    expect_all_pass(phi_check(inst, t.a));

    // seeding the column with the diagonal identity rescales by the full
    // loop power
    for (int lam = 0; lam < inst.n_cells(); ++lam) {
      const int id = inst.cells[lam].gamma.identity_label();
      const int nt = static_cast<int>(inst.cells[lam].tableaux.size());
      for (int S = 0; S < nt; ++S)
        for (int T = 0; T < nt; ++T)
          for (int b : inst.cells[lam].b_window) {
            const Label d{lam, S, b, T};
            CHECK(elem_eq(inst.mul(Label{lam, S, id, S}, d),
                          elem_scale(elem_of(d), loop_delta_pow(t.a.of_cell(lam)))));
          }
    }
  }
}

TEST_CASE("golden arithmetic surfaces in the decorated cell") {
  const auto t = build_tl_h(2);
  const auto& inst = t.inst;
  const auto cx = inst.label_parse("C[12*;x;12*]");
  const auto c1 = inst.label_parse("C[12*;1;12*]");
  REQUIRE((cx.has_value() && c1.has_value()));
  // x * x = 1 + x scaled by the loop power of the cell
  Element want = elem_add(elem_of(*cx), elem_of(*c1));
  want = elem_scale(want, loop_delta());
  CHECK(elem_eq(inst.mul(*cx, *cx), want));

  CHECK(inst.star(*inst.label_parse("C[23;x;12*]")) == *inst.label_parse("C[12*;x;23]"));
  for (const Label& l : inst.window()) {
    const auto back = inst.label_parse(inst.label_str(l));
    REQUIRE(back.has_value());
    CHECK(*back == l);
  }
  CHECK_FALSE(inst.label_parse("C[zz;1;e]").has_value());
  CHECK_FALSE(inst.label_parse("C[12*;y;23]").has_value());
  CHECK_FALSE(inst.label_parse("C[e;x;e]").has_value());
  CHECK_FALSE(inst.label_parse("b[12]").has_value());
}

TEST_CASE("malformed inputs and inadmissible assemblies are rejected") {
  CHECK_THROWS_AS(build_tl_h(1), std::invalid_argument);
  CHECK_THROWS_AS(h_generators(1), std::invalid_argument);
  CHECK_THROWS_AS(h_multiply(HDiagram::identity(3), HDiagram::identity(4)),
                  std::invalid_argument);

  // decorating the propagating edge of the full identity violates the
  // all-propagating rule
  HalfConfig empty3;
  empty3.m = 3;
  empty3.match.assign(3, -1);
  empty3.dec.assign(3, 0);
  CHECK_THROWS_AS(h_assemble(empty3, 1, empty3), std::logic_error);

  HalfConfig none0;
  none0.m = 2;
  none0.match = {1, 0};
  none0.dec = {0, 0};
  // no propagating edge to decorate at all
  CHECK_THROWS_AS(h_assemble(none0, 1, none0), std::logic_error);
}

TEST_CASE("tampered instances are caught by the verifiers") {
  auto t = build_tl_h(2);
  {
    TabularInstance broken = t.inst;
    broken.strictly_less[1][0] = false;
    const auto cr = compute_cells(broken, 2);
    CHECK_FALSE(cr.report.all_pass());
  }
  {
    TabularInstance broken = t.inst;
    broken.trace_fn = [](const Label&) { return Laurent(); };
    CHECK_FALSE(verify_a5(broken, t.a, 2).all_pass());
  }
  {
    auto fresh = build_tl_h(2);
    fresh.inst.cells[1].a_override = 0;
    Report rep;
    compute_a_values(fresh.inst, &rep);
    CHECK_FALSE(rep.all_pass());
  }
}
