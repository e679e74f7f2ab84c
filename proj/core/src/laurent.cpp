#include "tabular/laurent.hpp"

#include <cctype>
#include <sstream>

namespace tabular {

Laurent loop_delta() { return Laurent::v_pow(1) + Laurent::v_pow(-1); }

Laurent loop_delta_pow(int k) {
  Laurent p = Laurent::unit();
  const Laurent d = loop_delta();
  for (int i = 0; i < k; ++i) p *= d;
  return p;
}

std::string laurent_str(const Laurent& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& ts = p.terms();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    const int e = it->first;
    Int c = it->second;
    if (c < 0) {
      os << '-';
      c = -c;
    } else if (!first) {
      os << '+';
    }
    first = false;
    if (e == 0) {
      os << c.str();
    } else {
      if (c != 1) os << c.str();
      os << "v^" << e;
    }
  }
  return os.str();
}

namespace {

bool fail(std::string* err, const std::string& msg) {
  if (err) *err = msg;
  return false;
}

}  // namespace

bool parse_laurent(std::string_view text, Laurent& out, std::string* err) {
  out = Laurent();
  size_t i = 0;
  const size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == n) return fail(err, "empty polynomial");
  bool any = false;
  while (true) {
    skip_ws();
    int sign = 1;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -1;
      ++i;
      skip_ws();
    } else if (any) {
      break;  // no separator: end of polynomial
    }
    if (i == n) return fail(err, "dangling sign");
    bool have_coeff = false;
    Int coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      coeff = Int(std::string(text.substr(i, j - i)));
      i = j;
      have_coeff = true;
      skip_ws();
      if (i < n && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    int exponent = 0;
    bool have_v = false;
    if (i < n && text[i] == 'v') {
      ++i;
      have_v = true;
      if (i < n && text[i] == '^') {
        ++i;
        int esign = 1;
        if (i < n && text[i] == '-') {
          esign = -1;
          ++i;
        }
        if (i == n || !std::isdigit(static_cast<unsigned char>(text[i])))
          return fail(err, "malformed exponent");
        size_t j = i;
        long long e = 0;
        while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) {
          e = e * 10 + (text[j] - '0');
          if (e > 1000000) return fail(err, "exponent out of range");
          ++j;
        }
        i = j;
        exponent = static_cast<int>(esign * e);
      } else {
        exponent = 1;
      }
    }
    if (!have_coeff && !have_v) return fail(err, "expected term at position " + std::to_string(i));
    out += Laurent::term(exponent, coeff * sign);
    any = true;
    skip_ws();
    if (i == n) break;
    if (text[i] != '+' && text[i] != '-')
      return fail(err, "unexpected character '" + std::string(1, text[i]) + "'");
  }
  skip_ws();
  if (i != n) return fail(err, "trailing garbage");
  return true;
}

}  // namespace tabular
