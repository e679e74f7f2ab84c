#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tabular/laurent.hpp"

using namespace tabular;

namespace {

// Independent of operator*: multiplies by (v + 1/v) via two shifts and an add.
Laurent shift_add_delta_times(const Laurent& p) {
  return p.times_v_pow(1) + p.times_v_pow(-1);
}

Laurent from_terms(std::initializer_list<std::pair<int, long long>> ts) {
  Laurent p;
  for (auto [e, c] : ts) p += Laurent::term(e, Int(c));
  return p;
}

}  // namespace

TEST_CASE("degree sentinel") {
  CHECK(Laurent().degree().is_neg_infinity());
  CHECK(Laurent().is_zero());
  CHECK(Degree::neg_infinity() < Degree::finite(-1000000));
  CHECK(!(Degree::neg_infinity() < Degree::neg_infinity()));
  CHECK(Degree::neg_infinity() == Degree::neg_infinity());
  CHECK(Degree::finite(3) + Degree::neg_infinity() == Degree::neg_infinity());
  CHECK(Degree::finite(3) + Degree::finite(-5) == Degree::finite(-2));
  CHECK(Degree::neg_infinity().str() == "-inf");
  CHECK(Laurent::term(4, Int(0)).is_zero());
  CHECK_THROWS_AS(Degree::neg_infinity().value(), std::logic_error);
}

TEST_CASE("delta powers against shift-add oracle") {
  const Laurent d = loop_delta();
  CHECK(d == from_terms({{1, 1}, {-1, 1}}));

  // frozen: (v + 1/v)^2 = v^2 + 2 + v^-2
  const Laurent d2 = d * d;
  CHECK(d2 == from_terms({{2, 1}, {0, 2}, {-2, 1}}));
  CHECK(d2 == shift_add_delta_times(d));

  // frozen: (v + 1/v)^3 = v^3 + 3v + 3v^-1 + v^-3
  const Laurent d3 = d2 * d;
  CHECK(d3 == from_terms({{3, 1}, {1, 3}, {-1, 3}, {-3, 1}}));
  CHECK(d3 == shift_add_delta_times(d2));

  Laurent oracle = Laurent::unit();
  for (int k = 0; k < 9; ++k) oracle = shift_add_delta_times(oracle);
  CHECK(loop_delta_pow(9) == oracle);
  CHECK(loop_delta_pow(9).leading_coeff() == 1);
  CHECK(loop_delta_pow(9).degree() == Degree::finite(9));
  CHECK(loop_delta_pow(9).coeff(1) == 126);  // binomial(9,4), frozen
}

TEST_CASE("ring identities") {
  const Laurent a = from_terms({{-3, 7}, {0, -2}, {5, 1}});
  const Laurent b = from_terms({{-1, 4}, {2, 3}});
  const Laurent c = from_terms({{-2, -6}, {1, 11}});
  CHECK(a * b == b * a);
  CHECK((a + b) * c == a * c + b * c);
  CHECK(a * (b * c) == (a * b) * c);
  CHECK(a - a == Laurent());
  CHECK((a * Laurent::unit()) == a);
  CHECK((a * Laurent()).is_zero());
  CHECK(a.times_v_pow(4) == a * Laurent::v_pow(4));
  CHECK(a.bar().bar() == a);
  CHECK((a * b).bar() == a.bar() * b.bar());
  CHECK(a.scaled(Int(-3)) == a * Laurent::constant(Int(-3)));
}

TEST_CASE("support flags") {
  const Laurent p = from_terms({{-4, 2}, {-1, 5}});
  CHECK(p.supported_below(0));
  CHECK(p.supported_below(-1));
  const Laurent q = from_terms({{-4, 2}, {0, 5}});
  CHECK(q.supported_below(0));
  CHECK(!q.supported_below(-1));
  CHECK(Laurent().supported_below(-1000));
  CHECK(q.low_exponent() == -4);
  CHECK(q.leading_coeff() == 5);
  CHECK(q.coeff(-4) == 2);
  CHECK(q.coeff(7) == 0);
}

TEST_CASE("canonical text form") {
  CHECK(laurent_str(Laurent()) == "0");
  CHECK(laurent_str(loop_delta()) == "v^1+v^-1");
  CHECK(laurent_str(loop_delta_pow(2)) == "v^2+2+v^-2");
  CHECK(laurent_str(from_terms({{2, 1}, {1, -1}})) == "v^2-v^1");
  CHECK(laurent_str(from_terms({{0, -3}})) == "-3");
  CHECK(laurent_str(from_terms({{-7, -12}})) == "-12v^-7");
}

TEST_CASE("parse canonical and lenient forms") {
  Laurent p;
  std::string err;
  REQUIRE(parse_laurent("v^1+v^-1", p, &err));
  CHECK(p == loop_delta());
  REQUIRE(parse_laurent("v", p));
  CHECK(p == Laurent::v_pow(1));
  REQUIRE(parse_laurent("-v^2 + 3*v - 4", p));
  CHECK(p == from_terms({{2, -1}, {1, 3}, {0, -4}}));
  REQUIRE(parse_laurent("0", p));
  CHECK(p.is_zero());
  REQUIRE(parse_laurent("2v^3+v^1-4+v^-2", p));
  CHECK(p == from_terms({{3, 2}, {1, 1}, {0, -4}, {-2, 1}}));

  CHECK(!parse_laurent("", p, &err));
  CHECK(!parse_laurent("v^", p, &err));
  CHECK(!parse_laurent("1++2", p, &err));
  CHECK(!parse_laurent("x^2", p, &err));
  CHECK(!parse_laurent("3v^2q", p, &err));
}

TEST_CASE("format/parse roundtrip on randomized polynomials") {
  std::mt19937_64 rng(20260823);
  std::uniform_int_distribution<int> nterms(0, 9), exp(-20, 20), coeff(-50, 50);
  for (int it = 0; it < 1000; ++it) {
    Laurent p;
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) p += Laurent::term(exp(rng), Int(coeff(rng)));
    Laurent q;
    std::string err;
    REQUIRE_MESSAGE(parse_laurent(laurent_str(p), q, &err), err);
    CHECK(q == p);
  }
}

TEST_CASE("big coefficients stay exact") {
  // (v + 1/v)^64 has central coefficient binomial(64, 32), which overflows
  // 64-bit arithmetic; frozen reference value computed by the shift-add oracle.
  Laurent oracle = Laurent::unit();
  for (int k = 0; k < 64; ++k) oracle = shift_add_delta_times(oracle);
  CHECK(loop_delta_pow(64) == oracle);
  CHECK(oracle.coeff(0) == Int("1832624140942590534"));
  Laurent sq = oracle * oracle;  // (v+1/v)^128
  CHECK(sq.coeff(0) == Int("23951146041928082866135587776380551750"));
  Laurent rt;
  REQUIRE(parse_laurent(laurent_str(sq), rt));
  CHECK(rt == sq);
}
