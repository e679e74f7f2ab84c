#include "tabular/matrix_table.hpp"

#include <stdexcept>

namespace tabular {

TabularInstance make_matrix_table(int n, const TableAlgebra& G, MatrixMutant mutant) {
  if (n < 1) throw std::invalid_argument("matrix_table: n must be positive");
  if (!G.finite()) throw std::invalid_argument("matrix_table: table algebra must be finite");

  TabularInstance inst;
  inst.name = "matrix(" + std::to_string(n) + ", " + G.name() + ")";
  CellData cd;
  cd.name = "0";
  for (int i = 1; i <= n; ++i) cd.tableaux.push_back(std::to_string(i));
  cd.gamma = G;
  cd.b_window = G.window();
  inst.cells.push_back(cd);
  inst.strictly_less = {{false}};
  inst.finite_rank = true;

  const TableAlgebra alg = G;  // the closures outlive the argument
  inst.raw_mul = [alg](const Label& x, const Label& y) {
    Element out;
    if (x.T != y.S) return out;
    for (const auto& [b2, k] : alg.mul(x.b, y.b))
      elem_acc(out, Label{0, x.S, b2, y.T}, Laurent::constant(k));
    return out;
  };

  if (mutant == MatrixMutant::broken_star)
    inst.star_fn = [](const Label& l) { return Label{l.lam, l.T, l.b, l.S}; };

  const int id = G.identity_label();
  inst.trace_fn = [id, mutant](const Label& l) {
    Laurent t;
    if (l.S == l.T && l.b == id) t += Laurent::unit();
    if (mutant == MatrixMutant::broken_trace && l.S == 0 && l.T == 1) t += Laurent::unit();
    return t;
  };

  for (int i = 0; i < n; ++i) {
    if (mutant == MatrixMutant::dropped_idempotent && i == n - 1) continue;
    inst.idempotents.push_back(Label{0, i, id, i});
  }
  for (int i = 0; i < n; ++i) inst.unit.emplace(Label{0, i, id, i}, Laurent::unit());

  inst.label_str_fn = [alg](const Label& l) {
    return "e[" + std::to_string(l.S + 1) + "," + std::to_string(l.T + 1) + "]|" +
           alg.label_name(l.b);
  };
  inst.label_parse_fn = [alg, n](const std::string& s) -> std::optional<Label> {
    if (s.rfind("e[", 0) != 0) return std::nullopt;
    const auto comma = s.find(',');
    const auto close = s.find(']');
    const auto pipe = s.find('|');
    if (comma == std::string::npos || close == std::string::npos || pipe != close + 1)
      return std::nullopt;
    int a = 0, c = 0;
    try {
      a = std::stoi(s.substr(2, comma - 2));
      c = std::stoi(s.substr(comma + 1, close - comma - 1));
    } catch (const std::exception&) {
      return std::nullopt;
    }
    const auto b = alg.label_by_name(s.substr(pipe + 1));
    if (!b || a < 1 || a > n || c < 1 || c > n) return std::nullopt;
    return Label{0, a - 1, *b, c - 1};
  };

  inst.finalize();
  return inst;
}

}  // namespace tabular
