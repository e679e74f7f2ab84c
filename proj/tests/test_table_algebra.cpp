#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "tabular/table_algebra.hpp"

using namespace tabular;

namespace {

// Test-side oracle for the golden ring: arithmetic in Z[x] reduced mod
// x^2 = x + 1, coefficients (c0, c1) for c0 + c1 x.
using GoldenPair = std::pair<Int, Int>;
GoldenPair golden_mul(GoldenPair a, GoldenPair b) {
  // (a0 + a1 x)(b0 + b1 x) = a0 b0 + (a0 b1 + a1 b0) x + a1 b1 (x + 1)
  return {a.first * b.first + a.second * b.second,
          a.first * b.second + a.second * b.first + a.second * b.second};
}

// Test-side oracle for the Chebyshev-like basis: build U_k in Z[x] from the
// recurrence, multiply polynomials, then peel leading U terms off again.
std::vector<Int> u_poly(int k) {
  std::vector<std::vector<Int>> u(k + 2);
  u[0] = {Int(1)};
  u[1] = {Int(0), Int(1)};
  for (int m = 2; m <= k; ++m) {
    std::vector<Int> next(m + 1, Int(0));
    for (size_t j = 0; j < u[m - 1].size(); ++j) next[j + 1] += u[m - 1][j];
    for (size_t j = 0; j < u[m - 2].size(); ++j) next[j] -= u[m - 2][j];
    u[m] = std::move(next);
  }
  return u[k];
}

std::map<int, Int> u_expand(std::vector<Int> poly) {
  std::map<int, Int> out;
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  while (!poly.empty()) {
    const int k = static_cast<int>(poly.size()) - 1;
    const Int lead = poly.back();
    if (lead != 0) out[k] = lead;
    auto uk = u_poly(k);
    for (size_t j = 0; j < uk.size(); ++j) poly[j] -= lead * uk[j];
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
  }
  return out;
}

std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TEST_CASE("golden ring products") {
  TableAlgebra g = TableAlgebra::golden();
  CHECK(g.rank() == 2);
  CHECK(g.identity_label() == 0);
  // x * x = 1 + x
  CHECK(g.mul(1, 1) == TableElem{{0, Int(1)}, {1, Int(1)}});
  // frozen from the oracle: (1 + x) * x = 1 + 2x
  auto oracle = golden_mul({Int(1), Int(1)}, {Int(0), Int(1)});
  CHECK(oracle == GoldenPair{Int(1), Int(2)});
  TableElem lhs = g.multiply(TableElem{{0, Int(1)}, {1, Int(1)}}, table_unit(1));
  CHECK(lhs == TableElem{{0, Int(1)}, {1, Int(2)}});
  CHECK(g.bar(1) == 1);
  CHECK(verify_table_axioms(g).all_pass());
  std::string detail;
  CHECK(semisimple_over_Q(g, &detail));
  CHECK(detail == "trace form determinant = 5");
}

TEST_CASE("chebyshev linearization against recurrence oracle") {
  TableAlgebra ch = TableAlgebra::chebyshev(8);
  CHECK(ch.window().size() == 9);
  CHECK(!ch.finite());
  // frozen: U2 * U3 = U1 + U3 + U5
  CHECK(ch.mul(2, 3) == TableElem{{1, Int(1)}, {3, Int(1)}, {5, Int(1)}});
  for (int k = 0; k <= 8; ++k)
    for (int l = 0; l <= 8; ++l) {
      auto prod = u_expand(poly_mul(u_poly(k), u_poly(l)));
      TableElem got = ch.mul(k, l);
      TableElem want;
      for (auto& [m, c] : prod) want[m] = c;
      CHECK_MESSAGE(got == want, "U", k, " * U", l);
    }
  CHECK(verify_table_axioms(ch).all_pass());
}

TEST_CASE("chebyshev basis change") {
  // frozen: x^4 = 2 U0 + 3 U2 + U4, so the U0 coefficient of x^4 is 2
  auto c = power_to_chebyshev(4);
  CHECK(c == std::vector<Int>{Int(2), Int(0), Int(3), Int(0), Int(1)});
  CHECK(power_to_chebyshev(1) == std::vector<Int>{Int(0), Int(1)});
  for (int k = 0; k <= 10; ++k) {
    // expanding x^k over U and substituting the power form of each U returns x^k
    auto over_u = power_to_chebyshev(k);
    std::vector<Int> back(k + 1, Int(0));
    for (int m = 0; m <= k; ++m) {
      if (over_u[m] == 0) continue;
      auto um = chebyshev_to_power(m);
      for (size_t j = 0; j < um.size(); ++j) back[j] += over_u[m] * um[j];
    }
    std::vector<Int> expect(k + 1, Int(0));
    expect[k] = 1;
    CHECK(back == expect);
  }
}

TEST_CASE("integer laurent basis") {
  TableAlgebra il = TableAlgebra::integer_laurent(8);
  CHECK(il.window().size() == 17);
  CHECK(il.mul(3, -5) == table_unit(-2));
  CHECK(il.bar(4) == -4);
  CHECK(il.label_name(-2) == "x^-2");
  CHECK(il.label_by_name("x^-2") == -2);
  CHECK(verify_table_axioms(il).all_pass());
}

TEST_CASE("group rings pass the axioms") {
  for (int m = 2; m <= 6; ++m) {
    TableAlgebra z = TableAlgebra::cyclic_group(m);
    CHECK(verify_table_axioms(z).all_pass());
    CHECK(semisimple_over_Q(z));
  }
  TableAlgebra s3 = TableAlgebra::symmetric_group(3);
  CHECK(s3.rank() == 6);
  CHECK(verify_table_axioms(s3).all_pass());
  CHECK(semisimple_over_Q(s3));
  // bar really is inversion
  auto tr = s3.label_by_name("(1,2,3)");
  REQUIRE(tr.has_value());
  CHECK(s3.label_name(s3.bar(*tr)) == "(1,3,2)");
}

TEST_CASE("identity involution on a nonabelian group breaks normalization") {
  // Rebuild the S3 ring but declare bar = id; the kappa normalization must
  // fail with a witness naming the offending triple.
  TableAlgebra s3 = TableAlgebra::symmetric_group(3);
  const int r = s3.rank();
  std::vector<std::vector<TableElem>> consts(r, std::vector<TableElem>(r));
  std::vector<std::string> labels(r);
  std::vector<int> bar_id(r);
  for (int i = 0; i < r; ++i) {
    labels[i] = s3.label_name(i);
    bar_id[i] = i;
    for (int j = 0; j < r; ++j) consts[i][j] = s3.mul(i, j);
  }
  TableAlgebra broken = TableAlgebra::custom_finite("S3-bar-id", labels, bar_id, consts, s3.identity_label());
  Report rep = verify_table_axioms(broken);
  CHECK(!rep.all_pass());
  bool t3_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "normalization of kappa" && !c.pass && !c.witness.empty()) t3_failed = true;
  CHECK(t3_failed);
}

TEST_CASE("invalid group tables are rejected with a witness") {
  // 2x2 table with no identity
  std::vector<std::vector<int>> bad = {{1, 0}, {1, 0}};
  TableAlgebra out;
  std::string err;
  CHECK(!TableAlgebra::group_ring_checked("bad", bad, {"a", "b"}, out, &err));
  CHECK(err == "no identity element");
  // non-associative quasigroup on 3 elements (row/col latin, not a group)
  std::vector<std::vector<int>> nonassoc = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  nonassoc[1][1] = 0;
  nonassoc[1][2] = 2;  // break structure
  CHECK(!TableAlgebra::group_ring_checked("bad2", nonassoc, {"e", "a", "b"}, out, &err));
  CHECK(!err.empty());
}

TEST_CASE("spec text roundtrip") {
  for (TableAlgebra alg :
       {TableAlgebra::golden(), TableAlgebra::cyclic_group(4), TableAlgebra::symmetric_group(3)}) {
    std::string text = alg.spec_text();
    TableAlgebra back;
    std::string err;
    REQUIRE_MESSAGE(TableAlgebra::from_spec_text(text, back, &err), err);
    CHECK(back.rank() == alg.rank());
    CHECK(back.identity_label() == alg.identity_label());
    for (int i = 0; i < alg.rank(); ++i)
      for (int j = 0; j < alg.rank(); ++j) CHECK(back.mul(i, j) == alg.mul(i, j));
    for (int i = 0; i < alg.rank(); ++i) CHECK(back.bar(i) == alg.bar(i));
  }
  TableAlgebra ch = TableAlgebra::chebyshev(5);
  TableAlgebra back;
  std::string err;
  REQUIRE(TableAlgebra::from_spec_text(ch.spec_text(), back, &err));
  CHECK(back.kind() == "chebyshev");
  CHECK(back.window().size() == 6);
}

TEST_CASE("spec text rejects malformed input") {
  TableAlgebra out;
  std::string err;
  CHECK(!TableAlgebra::from_spec_text("nonsense", out, &err));
  CHECK(!TableAlgebra::from_spec_text("table-spec v1\nkind custom\nrank 2\nconsts\n5 0 0 1\nend\n",
                                      out, &err));
  CHECK(!err.empty());
}

TEST_CASE("h-form spot checks") {
  TableAlgebra s3 = TableAlgebra::symmetric_group(3);
  TableElem a = table_unit(1);
  TableElem b = TableElem{{2, Int(3)}, {4, Int(-1)}};
  CHECK(TableAlgebra::form_h(a, a) == 1);
  CHECK(TableAlgebra::form_h(a, b) == 0);
  CHECK(TableAlgebra::form_h(b, b) == 10);
  // h(ab, c) = h(a, c bar(b)) on a random-ish triple
  TableElem ab = s3.multiply(a, b);
  TableElem c = TableElem{{0, Int(2)}, {5, Int(7)}};
  CHECK(TableAlgebra::form_h(ab, c) == TableAlgebra::form_h(a, s3.multiply(c, s3.bar_elem(b))));
}
