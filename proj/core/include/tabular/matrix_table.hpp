#pragma once

#include "tabular/tabular.hpp"

namespace tabular {

// Deliberately broken variants used to prove the verifiers can reject.
enum class MatrixMutant {
  none,
  broken_star,         // transposes without barring the decoration
  broken_trace,        // extra off-diagonal trace mass, breaking symmetry
  dropped_idempotent,  // family misses the last diagonal corner
};

// n-by-n matrix units over a finite table algebra G: basis e_{ac} tensor b,
// one cell, star transposing and barring, trace picking the identity
// diagonal.  Every a value is 0.
TabularInstance make_matrix_table(int n, const TableAlgebra& G,
                                  MatrixMutant mutant = MatrixMutant::none);

}  // namespace tabular
