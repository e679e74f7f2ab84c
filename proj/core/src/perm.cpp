#include "tabular/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tabular {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (int v : img_) {
    if (v < 0 || v >= size() || seen[v]) throw std::invalid_argument("Perm: not a permutation");
    seen[v] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Perm(std::move(v));
}

Perm Perm::then(const Perm& g) const {
  if (g.size() != size()) throw std::invalid_argument("Perm: size mismatch");
  std::vector<int> v(img_.size());
  for (int i = 0; i < size(); ++i) v[i] = g(img_[i]);
  return Perm(std::move(v));
}

Perm Perm::inverse() const {
  std::vector<int> v(img_.size());
  for (int i = 0; i < size(); ++i) v[img_[i]] = i;
  return Perm(std::move(v));
}

bool Perm::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

bool Perm::is_involution() const {
  for (int i = 0; i < size(); ++i)
    if (img_[img_[i]] != i) return false;
  return true;
}

int Perm::fixed_points() const {
  int c = 0;
  for (int i = 0; i < size(); ++i)
    if (img_[i] == i) ++c;
  return c;
}

std::string Perm::cycle_str() const {
  std::ostringstream os;
  std::vector<bool> seen(img_.size(), false);
  bool any = false;
  for (int i = 0; i < size(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    os << '(';
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ',';
      os << (j + 1);
      first = false;
      j = img_[j];
    }
    os << ')';
    any = true;
  }
  return any ? os.str() : "id";
}

std::optional<Perm> Perm::parse_cycles(const std::string& text, int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  if (text == "id") return Perm(std::move(img));
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '(') return std::nullopt;
    ++i;
    std::vector<int> cyc;
    while (true) {
      size_t j = i;
      while (j < text.size() && isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) return std::nullopt;
      int val = std::stoi(text.substr(i, j - i)) - 1;
      if (val < 0 || val >= n) return std::nullopt;
      cyc.push_back(val);
      i = j;
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      return std::nullopt;
    }
    for (size_t k = 0; k < cyc.size(); ++k) img[cyc[k]] = cyc[(k + 1) % cyc.size()];
  }
  Perm p(std::move(img));
  return p;
}

std::vector<Perm> all_perms(int n) {
  if (n < 0 || n > 8) throw std::invalid_argument("all_perms: n out of range");
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(Perm(v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<Perm> involutions_with_fixed(int n, int fixed) {
  std::vector<Perm> out;
  for (const Perm& p : all_perms(n))
    if (p.is_involution() && p.fixed_points() == fixed) out.push_back(p);
  return out;
}

}  // namespace tabular
