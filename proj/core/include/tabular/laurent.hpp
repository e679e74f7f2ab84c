#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tabular {

using Int = boost::multiprecision::cpp_int;

// Degree of a Laurent polynomial.  The zero polynomial has no top exponent;
// it carries the distinguished value below every integer.
class Degree {
 public:
  constexpr Degree() : finite_(false), v_(0) {}
  static constexpr Degree neg_infinity() { return Degree(); }
  static constexpr Degree finite(int v) { return Degree(true, v); }

  constexpr bool is_neg_infinity() const { return !finite_; }
  constexpr int value() const {
    if (!finite_) throw std::logic_error("Degree: value() of -inf");
    return v_;
  }

  friend constexpr bool operator==(Degree a, Degree b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
  }
  friend constexpr bool operator<(Degree a, Degree b) {
    if (!a.finite_) return b.finite_;
    if (!b.finite_) return false;
    return a.v_ < b.v_;
  }
  friend constexpr bool operator<=(Degree a, Degree b) { return a < b || a == b; }
  friend constexpr bool operator>(Degree a, Degree b) { return b < a; }
  friend constexpr bool operator>=(Degree a, Degree b) { return b <= a; }

  // deg(fg) = deg f + deg g, with -inf absorbing.
  friend constexpr Degree operator+(Degree a, Degree b) {
    if (!a.finite_ || !b.finite_) return neg_infinity();
    return finite(a.v_ + b.v_);
  }

  std::string str() const { return finite_ ? std::to_string(v_) : "-inf"; }

 private:
  constexpr Degree(bool f, int v) : finite_(f), v_(v) {}
  bool finite_;
  int v_;
};

// Sparse Laurent polynomial over the coefficient ring C.  Terms are kept
// sorted by ascending exponent with no zero coefficients.
template <class C>
class BasicLaurent {
 public:
  using Term = std::pair<int, C>;

  BasicLaurent() = default;

  static BasicLaurent term(int e, C c) {
    BasicLaurent p;
    if (!(c == C(0))) p.t_.push_back({e, std::move(c)});
    return p;
  }
  static BasicLaurent constant(C c) { return term(0, std::move(c)); }
  static BasicLaurent unit() { return constant(C(1)); }
  static BasicLaurent v_pow(int e) { return term(e, C(1)); }

  bool is_zero() const { return t_.empty(); }
  bool is_unit_one() const {
    return t_.size() == 1 && t_[0].first == 0 && t_[0].second == C(1);
  }

  Degree degree() const {
    return t_.empty() ? Degree::neg_infinity() : Degree::finite(t_.back().first);
  }
  // Lowest exponent; only meaningful on nonzero polynomials.
  int low_exponent() const {
    if (t_.empty()) throw std::logic_error("low_exponent of zero polynomial");
    return t_.front().first;
  }
  C leading_coeff() const { return t_.empty() ? C(0) : t_.back().second; }
  C coeff(int e) const {
    for (const auto& [ex, c] : t_)
      if (ex == e) return c;
    return C(0);
  }

  // True when every exponent is <= emax.  supported_below(0) is membership in
  // the nonpositive part, supported_below(-1) membership in its radical.
  bool supported_below(int emax) const {
    return t_.empty() || t_.back().first <= emax;
  }

  const std::vector<Term>& terms() const { return t_; }

  BasicLaurent& operator+=(const BasicLaurent& o) {
    std::vector<Term> out;
    out.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
      if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
        out.push_back(t_[i++]);
      } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
        out.push_back(o.t_[j++]);
      } else {
        C c = t_[i].second + o.t_[j].second;
        if (!(c == C(0))) out.push_back({t_[i].first, std::move(c)});
        ++i, ++j;
      }
    }
    t_ = std::move(out);
    return *this;
  }
  BasicLaurent& operator-=(const BasicLaurent& o) { return *this += -o; }

  friend BasicLaurent operator+(BasicLaurent a, const BasicLaurent& b) { return a += b; }
  friend BasicLaurent operator-(BasicLaurent a, const BasicLaurent& b) { return a -= b; }
  BasicLaurent operator-() const {
    BasicLaurent p = *this;
    for (auto& [e, c] : p.t_) c = -c;
    return p;
  }

  friend BasicLaurent operator*(const BasicLaurent& a, const BasicLaurent& b) {
    std::map<int, C> acc;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) acc[ea + eb] += ca * cb;
    BasicLaurent p;
    for (auto& [e, c] : acc)
      if (!(c == C(0))) p.t_.push_back({e, std::move(c)});
    return p;
  }
  BasicLaurent& operator*=(const BasicLaurent& o) { return *this = *this * o; }

  BasicLaurent times_v_pow(int k) const {
    BasicLaurent p = *this;
    for (auto& [e, c] : p.t_) e += k;
    return p;
  }
  BasicLaurent scaled(const C& s) const {
    BasicLaurent p;
    if (s == C(0)) return p;
    p.t_ = t_;
    for (auto& [e, c] : p.t_) c = c * s;
    return p;
  }
  // The involution v -> v^-1.
  BasicLaurent bar() const {
    BasicLaurent p;
    p.t_.reserve(t_.size());
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) p.t_.push_back({-it->first, it->second});
    return p;
  }

  friend bool operator==(const BasicLaurent& a, const BasicLaurent& b) { return a.t_ == b.t_; }
  friend bool operator!=(const BasicLaurent& a, const BasicLaurent& b) { return !(a == b); }
  // Total order usable as a map key (lexicographic on the term list).
  friend bool operator<(const BasicLaurent& a, const BasicLaurent& b) { return a.t_ < b.t_; }

 private:
  std::vector<Term> t_;
};

using Laurent = BasicLaurent<Int>;

// v + v^-1, the loop value shared by every diagram calculus here.
Laurent loop_delta();
// (v + v^-1)^k
Laurent loop_delta_pow(int k);

// Canonical text form: terms in descending exponent order, "v^e" for e != 0,
// bare integer for the constant term, +/- separators, "0" for zero.
std::string laurent_str(const Laurent& p);
// Parses the canonical form (leniently accepts "v" for "v^1" and an optional
// "*" between coefficient and v).  Returns false with a diagnostic on error.
bool parse_laurent(std::string_view text, Laurent& out, std::string* err = nullptr);

}  // namespace tabular
