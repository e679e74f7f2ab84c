#pragma once

#include <map>

#include "tabular/report.hpp"
#include "tabular/tabular.hpp"

namespace tabular {

// Integer shadow of the algebra at large v: per cell, the t-basis indexed by
// cell labels multiplies through the top coefficients of the structure
// constants.
struct Asymptotic {
  const TabularInstance* inst = nullptr;
  AValues a;

  // Top-coefficient profile of x y restricted to the cell of the target.
  std::map<Label, Int> t_mul(const Label& x, const Label& y) const;
  Int gamma(const Label& x, const Label& y, const Label& z) const;
};

Asymptotic build_asymptotic(const TabularInstance& inst, const AValues& a);

// Associativity of the t-basis product and cyclic symmetry of the gamma
// tensor, swept over windowed cell triples.
Report verify_asymptotic(const Asymptotic& as);

// gamma(X, Y, Z) = kappa(Z.b, X.b Y.b) under the tableau chain condition and
// zero otherwise: each cell looks like matrix units over its table algebra.
Report matrix_iso_check(const Asymptotic& as);

// Leading-coefficient map into the asymptotic algebra: homomorphism on
// window pairs, leading-term normalization, and the image of the unit.
Report phi_check(const TabularInstance& inst, const AValues& a);

}  // namespace tabular
