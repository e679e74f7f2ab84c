#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tabular {

// Permutation of {0, ..., n-1} stored as the image vector.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);
  static Perm identity(int n);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  Perm then(const Perm& g) const;     // x -> g(this(x))
  Perm inverse() const;
  bool is_identity() const;
  bool is_involution() const;
  int fixed_points() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

  // Cycle notation on 1-based letters: "id", "(1,2)", "(1,2,3)(4,5)".
  std::string cycle_str() const;
  static std::optional<Perm> parse_cycles(const std::string& text, int n);

 private:
  std::vector<int> img_;
};

// All n! permutations in lexicographic image order.  Guarded for n <= 8.
std::vector<Perm> all_perms(int n);

// Involutions of {0..n-1} with the given number of fixed points,
// lexicographic image order.
std::vector<Perm> involutions_with_fixed(int n, int fixed);

}  // namespace tabular
