#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace tabular {

// One named check with an optional failure witness.
struct Check {
  std::string name;
  bool pass = false;
  std::string witness;  // empty on pass; first counterexample on failure
};

struct Report {
  std::string title;
  std::vector<Check> checks;

  void add(std::string name, bool pass, std::string witness = "") {
    checks.push_back({std::move(name), pass, std::move(witness)});
  }
  // Record a pass, or a failure with the given witness, only once per name:
  // the first failure freezes the witness.
  void require(const std::string& name, bool cond, const std::string& witness) {
    for (auto& c : checks) {
      if (c.name == name) {
        if (c.pass && !cond) {
          c.pass = false;
          c.witness = witness;
        }
        return;
      }
    }
    add(name, cond, cond ? "" : witness);
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "# " << title << "\n";
    for (const auto& c : checks) {
      os << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
      if (!c.pass && !c.witness.empty()) os << "  [" << c.witness << "]";
      os << "\n";
    }
    os << (all_pass() ? "RESULT pass" : "RESULT fail") << "\n";
    return os.str();
  }
};

}  // namespace tabular
