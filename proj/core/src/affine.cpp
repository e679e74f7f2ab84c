#include "tabular/affine.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <utility>

#include "tabular/table_algebra.hpp"

namespace tabular {

namespace {

// floor division, b > 0
int fdiv(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int pmod(int a, int b) { return a - fdiv(a, b) * b; }

std::optional<int> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) return std::nullopt;
  if (v < -1000000 || v > 1000000) return std::nullopt;
  return static_cast<int>(v);
}

// One row of a diagram: arcs as cover intervals with the left end in the
// fundamental domain, stubs as fundamental positions.
struct RowView {
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> stubs;
};

RowView row_view(const AffineDiagram& d, bool top) {
  RowView out;
  const int n = d.n;
  const int base = top ? 0 : n;
  for (int i = 0; i < n; ++i) {
    const int p = base + i;
    const int q = d.match[p];
    const bool same_row = top ? (q < n) : (q >= n);
    if (!same_row) {
      out.stubs.push_back(i);
      continue;
    }
    const int partner = (q - base) + d.shift[p] * n;
    if (partner > i) out.arcs.emplace_back(i, partner);
  }
  return out;
}

bool intervals_cross(std::pair<int, int> a, std::pair<int, int> b) {
  return (a.first < b.first && b.first < a.second && a.second < b.second) ||
         (b.first < a.first && a.first < b.second && b.second < a.second);
}

// nullptr when the row is planar over all translates
const char* row_fault(const RowView& r, int n) {
  for (const auto& [a, b] : r.arcs)
    if (b - a >= n) return "an arc spans a full period";
  for (std::size_t i = 0; i < r.arcs.size(); ++i)
    for (std::size_t j = i; j < r.arcs.size(); ++j)
      for (int c = -1; c <= 1; ++c) {
        if (i == j && c == 0) continue;
        const auto shifted = std::pair<int, int>{r.arcs[j].first + c * n, r.arcs[j].second + c * n};
        if (intervals_cross(r.arcs[i], shifted)) return "arcs cross";
      }
  for (int s : r.stubs)
    for (const auto& [a, b] : r.arcs)
      for (int c = -1; c <= 2; ++c)
        if (a < s + c * n && s + c * n < b) return "a stub sits under an arc";
  return nullptr;
}

}  // namespace

AffineDiagram AffineDiagram::identity(int n) {
  AffineDiagram d;
  d.n = n;
  d.match.resize(2 * n);
  d.shift.assign(2 * n, 0);
  for (int i = 0; i < n; ++i) {
    d.match[i] = n + i;
    d.match[n + i] = i;
  }
  return d;
}

int affine_prop(const AffineDiagram& d) {
  int t = 0;
  for (int i = 0; i < d.n; ++i)
    if (d.match[i] >= d.n) ++t;
  return t;
}

AffineDiagram affine_flip(const AffineDiagram& d) {
  AffineDiagram f;
  f.n = d.n;
  f.bands = d.bands;
  f.match.resize(2 * d.n);
  f.shift.resize(2 * d.n);
  auto sw = [&](int p) { return p < d.n ? p + d.n : p - d.n; };
  for (int p = 0; p < 2 * d.n; ++p) {
    f.match[sw(p)] = sw(d.match[p]);
    f.shift[sw(p)] = d.shift[p];
  }
  return f;
}

void affine_check(const AffineDiagram& d, const char* where) {
  auto fail = [&](const char* msg) {
    throw std::invalid_argument(std::string(where) + ": " + msg);
  };
  const int n = d.n;
  if (n < 1) fail("no nodes");
  if (static_cast<int>(d.match.size()) != 2 * n ||
      static_cast<int>(d.shift.size()) != 2 * n)
    fail("wrong node count");
  for (int p = 0; p < 2 * n; ++p) {
    const int q = d.match[p];
    if (q < 0 || q >= 2 * n) fail("match out of range");
    if (q == p) fail("node matched to itself");
    if (d.match[q] != p) fail("match is not an involution");
    if (d.shift[q] != -d.shift[p]) fail("shifts are not antisymmetric");
  }
  if (d.bands < 0) fail("negative band count");
  const int t = affine_prop(d);
  if (d.bands > 0 && t > 0) fail("bands beside propagating edges");
  for (bool top : {true, false})
    if (const char* msg = row_fault(row_view(d, top), n)) fail(msg);
  if (t >= 2) {
    std::vector<int> targets;
    for (int j = 0; j < n; ++j) {
      const int p = n + j;
      if (d.match[p] < n) targets.push_back(d.match[p] + d.shift[p] * n);
    }
    for (std::size_t r = 0; r + 1 < targets.size(); ++r)
      if (targets[r + 1] <= targets[r]) fail("propagating edges cross");
    if (targets.back() >= targets.front() + n) fail("propagating edges cross");
  }
}

std::string affine_str(const AffineDiagram& d) {
  const int n = d.n;
  auto offset_tag = [](int c) {
    return c == 0 ? std::string() : (c > 0 ? "+" : "") + std::to_string(c);
  };
  auto arcs_str = [&](bool top) {
    std::string s;
    for (const auto& [a, b] : row_view(d, top).arcs) {
      if (!s.empty()) s += ",";
      s += std::to_string(a + 1) + "-" + std::to_string(pmod(b, n) + 1) +
           offset_tag(fdiv(b, n));
    }
    return s.empty() ? std::string("-") : s;
  };
  std::string props;
  for (int j = 0; j < n; ++j) {
    if (d.match[n + j] >= n) continue;
    if (!props.empty()) props += ",";
    props += std::to_string(j + 1) + ">" + std::to_string(d.match[n + j] + 1) +
             offset_tag(d.shift[n + j]);
  }
  std::string out = std::to_string(n) + "; " + arcs_str(true) + "; " + arcs_str(false) +
                    "; " + (props.empty() ? "-" : props);
  out += affine_prop(d) > 0 ? " | w=" + std::to_string(winding_number(d))
                            : " | k=" + std::to_string(d.bands);
  return out;
}

namespace {

// "a-b", "a>b", both with an optional signed offset suffix
struct TextEdge {
  int a = 0, b = 0, c = 0;
};

std::optional<TextEdge> parse_edge(const std::string& part, char sep) {
  const std::size_t cut = part.find(sep);
  if (cut == std::string::npos || cut == 0) return std::nullopt;
  TextEdge e;
  const auto a = parse_int(part.substr(0, cut));
  if (!a) return std::nullopt;
  e.a = *a;
  std::size_t end = cut + 1;
  while (end < part.size() && std::isdigit(static_cast<unsigned char>(part[end]))) ++end;
  const auto b = parse_int(part.substr(cut + 1, end - cut - 1));
  if (!b) return std::nullopt;
  e.b = *b;
  if (end < part.size()) {
    const auto c = parse_int(part.substr(end));
    if (!c || *c == 0) return std::nullopt;
    e.c = *c;
  }
  return e;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find(sep, pos);
    out.push_back(text.substr(pos, next == std::string::npos ? std::string::npos
                                                             : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && s[a] == ' ') ++a;
  while (b > a && s[b - 1] == ' ') --b;
  return s.substr(a, b - a);
}

}  // namespace

std::optional<AffineDiagram> parse_affine_str(const std::string& text) {
  const std::size_t bar = text.find('|');
  if (bar == std::string::npos) return std::nullopt;
  const auto segs = split_list(text.substr(0, bar), ';');
  if (segs.size() != 4) return std::nullopt;
  const auto n_val = parse_int(trimmed(segs[0]));
  if (!n_val || *n_val < 1 || *n_val > 64) return std::nullopt;
  const int n = *n_val;

  AffineDiagram d;
  d.n = n;
  d.match.assign(2 * n, -1);
  d.shift.assign(2 * n, 0);
  auto connect = [&](int p, int q, int c) {
    if (d.match[p] != -1 || d.match[q] != -1) return false;
    d.match[p] = q;
    d.shift[p] = c;
    d.match[q] = p;
    d.shift[q] = -c;
    return true;
  };
  for (int row = 0; row < 2; ++row) {
    const std::string body = trimmed(segs[1 + row]);
    if (body == "-") continue;
    for (const std::string& part : split_list(body, ',')) {
      const auto e = parse_edge(trimmed(part), '-');
      if (!e || e->a < 1 || e->a > n || e->b < 1 || e->b > n) return std::nullopt;
      if (!connect(row * n + e->a - 1, row * n + e->b - 1, e->c)) return std::nullopt;
    }
  }
  const std::string props = trimmed(segs[3]);
  if (props != "-") {
    for (const std::string& part : split_list(props, ',')) {
      const auto e = parse_edge(trimmed(part), '>');
      if (!e || e->a < 1 || e->a > n || e->b < 1 || e->b > n) return std::nullopt;
      if (!connect(n + e->a - 1, e->b - 1, e->c)) return std::nullopt;
    }
  }

  const std::string tail = trimmed(text.substr(bar + 1));
  if (tail.size() < 3 || tail[1] != '=') return std::nullopt;
  const auto payload = parse_int(tail.substr(2));
  if (!payload) return std::nullopt;
  if (tail[0] == 'k') {
    if (*payload < 0) return std::nullopt;
    d.bands = *payload;
  } else if (tail[0] != 'w') {
    return std::nullopt;
  }

  for (int p = 0; p < 2 * n; ++p)
    if (d.match[p] == -1) return std::nullopt;
  try {
    affine_check(d, "parse_affine_str");
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  const int t = affine_prop(d);
  if (tail[0] == 'w') {
    if (t == 0 || winding_number(d) != *payload) return std::nullopt;
  } else if (t > 0) {
    return std::nullopt;
  }
  return d;
}

int winding_number(const AffineDiagram& d) {
  if (affine_prop(d) == 0)
    throw std::domain_error("winding_number: nothing propagates");
  // F(x) counts the seam copies left of cover position x; the contribution
  // of one strand is F at its top end minus F at its bottom end
  auto F = [&](int x) { return fdiv(2 * x + 1, 2 * d.n); };
  int w = 0;
  for (int j = 0; j < d.n; ++j) {
    const int p = d.n + j;
    if (d.match[p] >= d.n) continue;
    w += F(d.match[p] + d.shift[p] * d.n) - F(j);
  }
  return w;
}

bool is_annular(const Perm& s) {
  const int n = s.size();
  if (!s.is_involution()) return false;
  std::vector<int> fix;
  for (int i = 0; i < n; ++i)
    if (s(i) == i) fix.push_back(i);
  for (int i = 0; i < n; ++i) {
    const int j = s(i);
    if (j <= i) continue;
    for (int k = i; k <= j; ++k)
      if (s(k) < i || s(k) > j) return false;
    int inside = 0;
    for (int f : fix)
      if (i < f && f < j) ++inside;
    if (inside != 0 && inside != static_cast<int>(fix.size())) return false;
  }
  return true;
}

std::vector<Perm> annular_involutions(int n, int t) {
  std::vector<Perm> out;
  for (const Perm& s : involutions_with_fixed(n, t))
    if (is_annular(s)) out.push_back(s);
  return out;
}

namespace {

void matchings_rec(int n, std::vector<int>& pw, std::vector<char>& used,
                   std::vector<AnnularMatching>& out) {
  int i = 0;
  while (i < n && used[i]) ++i;
  if (i == n) {
    RowView r;
    for (int k = 0; k < n; ++k)
      if (pw[k] > k) r.arcs.emplace_back(k, pw[k]);
    if (row_fault(r, n) == nullptr) out.push_back(AnnularMatching{n, pw});
    return;
  }
  used[i] = 1;
  for (int q = i - n + 1; q <= i + n - 1; ++q) {
    if (q == i) continue;
    const int j = pmod(q, n);
    if (used[j]) continue;
    used[j] = 1;
    pw[i] = q;
    pw[j] = i - fdiv(q, n) * n;
    matchings_rec(n, pw, used, out);
    used[j] = 0;
  }
  used[i] = 0;
}

}  // namespace

std::vector<AnnularMatching> all_annular_matchings(int n) {
  std::vector<AnnularMatching> out;
  if (n < 2 || n % 2 != 0) return out;
  std::vector<int> pw(n, 0);
  std::vector<char> used(n, 0);
  matchings_rec(n, pw, used, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::string annular_matching_str(const AnnularMatching& m) {
  std::string out;
  for (int i = 0; i < m.n; ++i) {
    if (m.pair_with[i] <= i) continue;
    if (!out.empty()) out += ",";
    out += std::to_string(i + 1) + "-" + std::to_string(m.pair_with[i] + 1);
  }
  return out;
}

std::optional<AnnularMatching> parse_annular_matching(const std::string& text, int n) {
  if (n < 2 || n % 2 != 0) return std::nullopt;
  AnnularMatching m{n, std::vector<int>(n, 0)};
  std::vector<char> used(n, 0);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string part =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    const std::size_t dash = part.find('-');
    if (dash == std::string::npos) return std::nullopt;
    const auto a = parse_int(part.substr(0, dash));
    const auto b = parse_int(part.substr(dash + 1));
    if (!a || !b) return std::nullopt;
    const int i = *a - 1, q = *b - 1;
    if (i < 0 || i >= n || q <= i || q >= i + n) return std::nullopt;
    const int j = pmod(q, n);
    if (used[i] || used[j] || i == j) return std::nullopt;
    used[i] = used[j] = 1;
    m.pair_with[i] = q;
    m.pair_with[j] = i - fdiv(q, n) * n;
  }
  for (int i = 0; i < n; ++i)
    if (!used[i]) return std::nullopt;
  RowView r;
  for (int k = 0; k < n; ++k)
    if (m.pair_with[k] > k) r.arcs.emplace_back(k, m.pair_with[k]);
  if (row_fault(r, n) != nullptr) return std::nullopt;
  return m;
}

AffineTriple to_affine_triple(const AffineDiagram& d) {
  const int n = d.n;
  AffineTriple out;
  out.t = affine_prop(d);
  if (out.t > 0) {
    std::vector<int> im1(n), im2(n);
    for (int i = 0; i < n; ++i)
      im1[i] = d.match[i] < n ? d.match[i] : i;
    for (int j = 0; j < n; ++j)
      im2[j] = d.match[n + j] >= n ? d.match[n + j] - n : j;
    out.s1 = Perm(im1);
    out.s2 = Perm(im2);
    out.payload = winding_number(d);
  } else {
    out.m1 = AnnularMatching{n, std::vector<int>(n)};
    out.m2 = AnnularMatching{n, std::vector<int>(n)};
    for (int i = 0; i < n; ++i)
      out.m1.pair_with[i] = d.match[i] + d.shift[i] * n;
    for (int j = 0; j < n; ++j)
      out.m2.pair_with[j] = (d.match[n + j] - n) + d.shift[n + j] * n;
    out.payload = d.bands;
  }
  return out;
}

namespace {

// lays the arcs of one annular involution into the given row; a pair
// enclosing all the fixed points is drawn across the seam instead
void lay_arcs(AffineDiagram& d, const Perm& s, int base) {
  const int n = d.n;
  std::vector<int> fix;
  for (int i = 0; i < n; ++i)
    if (s(i) == i) fix.push_back(i);
  for (int i = 0; i < n; ++i) {
    const int j = s(i);
    if (j <= i) continue;
    bool inside = false;
    for (int f : fix)
      if (i < f && f < j) inside = true;
    if (!inside) {
      d.match[base + i] = base + j;
      d.match[base + j] = base + i;
    } else {
      d.match[base + j] = base + i;
      d.shift[base + j] = 1;
      d.match[base + i] = base + j;
      d.shift[base + i] = -1;
    }
  }
}

void lay_matching(AffineDiagram& d, const AnnularMatching& m, int base) {
  for (int i = 0; i < m.n; ++i) {
    const int q = m.pair_with[i];
    d.match[base + i] = base + pmod(q, m.n);
    d.shift[base + i] = fdiv(q, m.n);
  }
}

}  // namespace

AffineDiagram from_affine_triple(int n, const AffineTriple& t) {
  auto fail = [](const char* msg) {
    throw std::invalid_argument(std::string("from_affine_triple: ") + msg);
  };
  if (n < 1) fail("no nodes");
  AffineDiagram d;
  d.n = n;
  d.match.assign(2 * n, -1);
  d.shift.assign(2 * n, 0);

  if (t.t > 0) {
    if (t.s1.size() != n || t.s2.size() != n) fail("halves of the wrong size");
    if (!is_annular(t.s1) || !is_annular(t.s2)) fail("halves are not annular");
    if (t.s1.fixed_points() != t.t || t.s2.fixed_points() != t.t)
      fail("fixed points disagree with the propagating count");
    lay_arcs(d, t.s1, 0);
    lay_arcs(d, t.s2, n);
    std::vector<int> f1, f2;
    for (int i = 0; i < n; ++i) {
      if (t.s1(i) == i) f1.push_back(i);
      if (t.s2(i) == i) f2.push_back(i);
    }
    auto wire = [&](int rho) {
      for (int r = 0; r < t.t; ++r) {
        const int q = r + rho;
        const int top = f1[pmod(q, t.t)];
        const int c = fdiv(q, t.t);
        d.match[n + f2[r]] = top;
        d.shift[n + f2[r]] = c;
        d.match[top] = n + f2[r];
        d.shift[top] = -c;
      }
    };
    wire(0);
    // one step of rotation moves the winding by exactly one
    wire(t.payload - winding_number(d));
    affine_check(d, "from_affine_triple");
    if (winding_number(d) != t.payload)
      throw std::logic_error("from_affine_triple: rotation bookkeeping failed");
    return d;
  }

  if (n % 2 != 0) fail("odd size has no free half");
  if (t.payload < 0) fail("negative band count");
  auto check_half = [&](const AnnularMatching& m) {
    if (m.n != n || static_cast<int>(m.pair_with.size()) != n)
      fail("half of the wrong size");
    for (int i = 0; i < n; ++i) {
      const int q = m.pair_with[i];
      if (q == i || q <= i - n || q >= i + n) fail("half pairs out of range");
      if (m.pair_with[pmod(q, n)] != i - fdiv(q, n) * n)
        fail("half is not a pairing");
    }
  };
  check_half(t.m1);
  check_half(t.m2);
  lay_matching(d, t.m1, 0);
  lay_matching(d, t.m2, n);
  d.bands = t.payload;
  affine_check(d, "from_affine_triple");
  return d;
}

AffineDiagram affine_stack(const AffineDiagram& a, const AffineDiagram& b, int& delta_pow) {
  if (a.n != b.n || a.n < 1)
    throw std::invalid_argument("affine_stack: size mismatch");
  const int n = a.n;
  AffineDiagram out;
  out.n = n;
  out.match.assign(2 * n, -1);
  out.shift.assign(2 * n, 0);
  out.bands = a.bands + b.bands;

  std::vector<char> va(2 * n, 0), vb(2 * n, 0);

  // follow a strand from a surface node until it surfaces again; p names a
  // node of a when in_a, a node of b otherwise
  auto walk = [&](bool in_a, int p) {
    int c = 0;
    for (;;) {
      if (in_a) {
        va[p] = 1;
        const int q = a.match[p];
        va[q] = 1;
        c += a.shift[p];
        if (q < n) return std::pair<int, int>{q, c};
        in_a = false;
        p = q - n;
      } else {
        vb[p] = 1;
        const int q = b.match[p];
        vb[q] = 1;
        c += b.shift[p];
        if (q >= n) return std::pair<int, int>{q, c};
        in_a = true;
        p = n + q;
      }
    }
  };

  for (int p = 0; p < 2 * n; ++p) {
    if (out.match[p] != -1) continue;
    const auto [q, c] = walk(p < n, p);
    out.match[p] = q;
    out.shift[p] = c;
    out.match[q] = p;
    out.shift[q] = -c;
  }

  // untouched middle nodes lie on closed cycles; the net offset of a cycle
  // is its winding, and an embedded closed curve cannot wind further than
  // once around the cylinder
  for (int g = 0; g < n; ++g) {
    if (va[n + g]) continue;
    int c = 0;
    int p = n + g;
    do {
      va[p] = 1;
      const int q = a.match[p];
      va[q] = 1;
      if (q < n) throw std::logic_error("affine_stack: middle cycle leaks out");
      c += a.shift[p];
      const int bt = q - n;
      vb[bt] = 1;
      const int q2 = b.match[bt];
      vb[q2] = 1;
      if (q2 >= n) throw std::logic_error("affine_stack: middle cycle leaks out");
      c += b.shift[bt];
      p = n + q2;
    } while (p != n + g);
    if (c == 0)
      ++delta_pow;
    else if (c == 1 || c == -1)
      ++out.bands;
    else
      throw std::logic_error("affine_stack: middle cycle winds more than once");
  }

  if (out.bands > 0 && affine_prop(out) > 0)
    throw std::logic_error("affine_stack: band beside a propagating edge");
  affine_check(out, "affine_stack");
  return out;
}

AffCombo aff_combo_add(AffCombo a, const AffCombo& b) {
  for (const auto& [d, c] : b) {
    auto& slot = a[d];
    slot = slot + c;
    if (slot.is_zero()) a.erase(d);
  }
  return a;
}

AffCombo affine_multiply(const AffineDiagram& a, const AffineDiagram& b) {
  int k = 0;
  AffineDiagram d = affine_stack(a, b, k);
  AffCombo out;
  out.emplace(std::move(d), loop_delta_pow(k));
  return out;
}

AffCombo affine_multiply(const AffCombo& a, const AffCombo& b) {
  AffCombo out;
  for (const auto& [da, ca] : a)
    for (const auto& [db, cb] : b) {
      int k = 0;
      const AffineDiagram d = affine_stack(da, db, k);
      auto& slot = out[d];
      slot = slot + ca * cb * loop_delta_pow(k);
      if (slot.is_zero()) out.erase(d);
    }
  return out;
}

AffineDiagram affine_u(int n, int direction) {
  if (n < 1 || (direction != 1 && direction != -1))
    throw std::invalid_argument("affine_u: bad arguments");
  AffineDiagram d;
  d.n = n;
  d.match.assign(2 * n, 0);
  d.shift.assign(2 * n, 0);
  for (int j = 0; j < n; ++j) {
    const int top = pmod(j + direction, n);
    const int c = fdiv(j + direction, n);
    d.match[n + j] = top;
    d.shift[n + j] = c;
    d.match[top] = n + j;
    d.shift[top] = -c;
  }
  return d;
}

AffineDiagram affine_e(int n, int i) {
  if (n < 2 || i < 0 || i >= n)
    throw std::invalid_argument("affine_e: bad arguments");
  AffineDiagram d = AffineDiagram::identity(n);
  const int j = (i + 1) % n;
  const int wrap = (i + 1 == n) ? 1 : 0;
  d.match[i] = j;
  d.shift[i] = wrap;
  d.match[j] = i;
  d.shift[j] = -wrap;
  d.match[n + i] = n + j;
  d.shift[n + i] = wrap;
  d.match[n + j] = n + i;
  d.shift[n + j] = -wrap;
  return d;
}

Report affine_relations(int n) {
  if (n < 3)
    throw std::invalid_argument("affine_relations: need at least three nodes");
  Report rep;
  rep.title = "cylinder presentation, n = " + std::to_string(n);

  auto one = [](const AffineDiagram& d) {
    AffCombo c;
    c.emplace(d, Laurent::unit());
    return c;
  };
  const AffCombo u = one(affine_u(n, 1));
  const AffCombo ui = one(affine_u(n, -1));
  const AffCombo id = one(AffineDiagram::identity(n));
  std::vector<AffCombo> e;
  for (int i = 0; i < n; ++i) e.push_back(one(affine_e(n, i)));

  for (int i = 0; i < n; ++i) {
    AffCombo twice = e[i];
    twice.begin()->second = loop_delta();
    rep.require("a cup squares to [2] times itself",
                affine_multiply(e[i], e[i]) == twice, "cup " + std::to_string(i + 1));
  }
  bool any_distant = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int dist = std::min(j - i, n - (j - i));
      if (dist < 2) continue;
      any_distant = true;
      rep.require("distant cups commute",
                  affine_multiply(e[i], e[j]) == affine_multiply(e[j], e[i]),
                  "cups " + std::to_string(i + 1) + "," + std::to_string(j + 1));
    }
  if (!any_distant) rep.add("distant cups commute", true, "no distant pairs");
  for (int i = 0; i < n; ++i)
    for (int j : {(i + 1) % n, (i + n - 1) % n})
      rep.require("a cup absorbs its neighbours",
                  affine_multiply(affine_multiply(e[i], e[j]), e[i]) == e[i],
                  "cups " + std::to_string(i + 1) + "," + std::to_string(j + 1));
  rep.add("the rotation is invertible",
          affine_multiply(u, ui) == id && affine_multiply(ui, u) == id);
  for (int i = 0; i < n; ++i)
    rep.require("the rotation shifts the cups",
                affine_multiply(affine_multiply(u, e[i]), ui) == e[(i + 1) % n],
                "cup " + std::to_string(i + 1));

  const AffCombo ue = affine_multiply(u, e[0]);
  AffCombo lhs = ue;
  for (int k = 1; k < n - 1; ++k) lhs = affine_multiply(lhs, ue);
  AffCombo un = u;
  for (int k = 1; k < n; ++k) un = affine_multiply(un, u);
  rep.add("the long rotation identity", lhs == affine_multiply(un, ue));
  return rep;
}

bool tl_subalgebra(const AffineDiagram& d) {
  const int n = d.n;
  bool horizontal = d.bands > 0;
  for (int p = 0; p < 2 * n && !horizontal; ++p)
    if ((p < n) == (d.match[p] < n)) horizontal = true;
  if (!horizontal) return d == AffineDiagram::identity(n);
  for (int i = 0; i < n; ++i) {
    int crossings = d.bands;
    for (int p = 0; p < 2 * n; ++p) {
      if (d.match[p] < p) continue;
      const int P = p < n ? p : p - n;
      const int q = d.match[p];
      const int Q = (q < n ? q : q - n) + d.shift[p] * n;
      const int lo = std::min(P, Q), hi = std::max(P, Q);
      crossings += fdiv(i - lo, n) - fdiv(i - hi, n);
    }
    if (crossings % 2 != 0) return false;
  }
  return true;
}

Laurent torus_trace(const AffineDiagram& d) {
  const int n = d.n;
  int contractible = 0;
  int core = 0;             // passes the rows once, avoids the seam
  int meridian = d.bands;   // parallel to the seam
  bool pinned = false;      // mixed class, forced across the seam
  std::vector<char> seen(2 * n, 0);
  for (int s = 0; s < 2 * n; ++s) {
    if (seen[s]) continue;
    int ell = 0, m = 0;
    int p = s;
    while (!seen[p]) {
      seen[p] = true;
      const int q = d.match[p];
      seen[q] = true;
      m += d.shift[p];
      if (q < n) {
        ++ell;
        p = n + q;
      } else {
        --ell;
        p = q - n;
      }
    }
    if (m == 0) {
      if (ell == 0) ++contractible;
      else if (ell == 1 || ell == -1) ++core;
      else throw std::logic_error("torus_trace: imprimitive loop class");
    } else if (ell != 0) {
      pinned = true;
    } else if (m == 1 || m == -1) {
      ++meridian;
    } else {
      throw std::logic_error("torus_trace: imprimitive loop class");
    }
  }
  if (pinned) return Laurent();
  if (meridian > 0) {
    if (core > 0) throw std::logic_error("torus_trace: crossing survivor classes");
    return loop_delta_pow(contractible) *
           Laurent::v_pow(-n).scaled(power_to_chebyshev(meridian)[0]);
  }
  return loop_delta_pow(contractible) * Laurent::v_pow(core - n);
}

namespace {

struct AffShared {
  int n = 0;
  std::vector<int> cell_t;
  std::map<int, int> t2cell;
  std::vector<std::vector<Perm>> invs;
  std::vector<std::map<Perm, int>> inv_idx;
  std::vector<AnnularMatching> mats;
  std::map<AnnularMatching, int> mat_idx;
  int cell0 = -1;

  AffCombo combo(const Label& l) const {
    const int t = cell_t[l.lam];
    AffCombo c;
    if (t > 0) {
      AffineTriple tr;
      tr.t = t;
      tr.s1 = invs[l.lam][l.S];
      tr.s2 = invs[l.lam][l.T];
      tr.payload = l.b;
      c.emplace(from_affine_triple(n, tr), Laurent::unit());
      return c;
    }
    const std::vector<Int> coef = chebyshev_to_power(l.b);
    for (int m = 0; m <= l.b; ++m) {
      if (coef[m] == 0) continue;
      AffineTriple tr;
      tr.t = 0;
      tr.m1 = mats[l.S];
      tr.m2 = mats[l.T];
      tr.payload = m;
      c.emplace(from_affine_triple(n, tr), Laurent::constant(coef[m]));
    }
    return c;
  }

  Element encode(const AffCombo& c) const {
    Element out;
    for (const auto& [d, coeff] : c) {
      const AffineTriple tr = to_affine_triple(d);
      if (tr.t > 0) {
        const int lam = t2cell.at(tr.t);
        elem_acc(out,
                 Label{lam, inv_idx[lam].at(tr.s1), tr.payload, inv_idx[lam].at(tr.s2)},
                 coeff);
        continue;
      }
      const std::vector<Int> coef = power_to_chebyshev(tr.payload);
      const int S = mat_idx.at(tr.m1), T = mat_idx.at(tr.m2);
      for (int j = 0; j <= tr.payload; ++j)
        if (coef[j] != 0) elem_acc(out, Label{cell0, S, j, T}, coeff.scaled(coef[j]));
    }
    return out;
  }
};

}  // namespace

AffCombo AffineInstance::combo_of(const Label& l) const {
  const int t = cell_t[l.lam];
  AffCombo c;
  if (t > 0) {
    AffineTriple tr;
    tr.t = t;
    tr.s1 = invs[l.lam][l.S];
    tr.s2 = invs[l.lam][l.T];
    tr.payload = l.b;
    c.emplace(from_affine_triple(n, tr), Laurent::unit());
    return c;
  }
  const std::vector<Int> coef = chebyshev_to_power(l.b);
  for (int m = 0; m <= l.b; ++m) {
    if (coef[m] == 0) continue;
    AffineTriple tr;
    tr.t = 0;
    tr.m1 = mats[l.S];
    tr.m2 = mats[l.T];
    tr.payload = m;
    c.emplace(from_affine_triple(n, tr), Laurent::constant(coef[m]));
  }
  return c;
}

Element AffineInstance::label_combo(const AffCombo& c) const {
  Element out;
  for (const auto& [d, coeff] : c) {
    if (d.n != n) throw std::invalid_argument("label_combo: size mismatch");
    const AffineTriple tr = to_affine_triple(d);
    if (tr.t > 0) {
      const auto ct = std::find(cell_t.begin(), cell_t.end(), tr.t);
      if (ct == cell_t.end()) throw std::invalid_argument("label_combo: no such cell");
      const int lam = static_cast<int>(ct - cell_t.begin());
      const auto i1 = std::find(invs[lam].begin(), invs[lam].end(), tr.s1);
      const auto i2 = std::find(invs[lam].begin(), invs[lam].end(), tr.s2);
      if (i1 == invs[lam].end() || i2 == invs[lam].end())
        throw std::invalid_argument("label_combo: half not annular");
      elem_acc(out,
               Label{lam, static_cast<int>(i1 - invs[lam].begin()), tr.payload,
                     static_cast<int>(i2 - invs[lam].begin())},
               coeff);
      continue;
    }
    const auto ct = std::find(cell_t.begin(), cell_t.end(), 0);
    if (ct == cell_t.end()) throw std::invalid_argument("label_combo: no such cell");
    const int lam = static_cast<int>(ct - cell_t.begin());
    const auto i1 = std::find(mats.begin(), mats.end(), tr.m1);
    const auto i2 = std::find(mats.begin(), mats.end(), tr.m2);
    if (i1 == mats.end() || i2 == mats.end())
      throw std::invalid_argument("label_combo: half not annular");
    const int S = static_cast<int>(i1 - mats.begin());
    const int T = static_cast<int>(i2 - mats.begin());
    const std::vector<Int> coef = power_to_chebyshev(tr.payload);
    for (int j = 0; j <= tr.payload; ++j)
      if (coef[j] != 0) elem_acc(out, Label{lam, S, j, T}, coeff.scaled(coef[j]));
  }
  return out;
}

AffineInstance build_affine(int n, int w_max, int k_max) {
  if (n < 3 || w_max < 0 || k_max < 0)
    throw std::invalid_argument("build_affine: bad arguments");
  auto sh = std::make_shared<AffShared>();
  sh->n = n;

  AffineInstance out;
  out.n = n;
  out.w_max = w_max;
  out.k_max = k_max;
  TabularInstance& inst = out.inst;
  inst.name = "affine" + std::to_string(n);
  inst.finite_rank = false;

  for (int t = n; t >= 0; t -= 2) {
    const int c = static_cast<int>(sh->cell_t.size());
    sh->cell_t.push_back(t);
    sh->t2cell[t] = c;

    CellData cd;
    cd.name = "t" + std::to_string(t);
    sh->inv_idx.emplace_back();
    if (t > 0) {
      sh->invs.push_back(annular_involutions(n, t));
      for (std::size_t i = 0; i < sh->invs.back().size(); ++i) {
        cd.tableaux.push_back(sh->invs.back()[i].cycle_str());
        sh->inv_idx.back()[sh->invs.back()[i]] = static_cast<int>(i);
      }
      cd.gamma = TableAlgebra::integer_laurent(w_max);
    } else {
      sh->invs.emplace_back();
      sh->cell0 = c;
      sh->mats = all_annular_matchings(n);
      for (std::size_t i = 0; i < sh->mats.size(); ++i) {
        cd.tableaux.push_back(annular_matching_str(sh->mats[i]));
        sh->mat_idx[sh->mats[i]] = static_cast<int>(i);
      }
      cd.gamma = TableAlgebra::chebyshev(k_max);
    }
    cd.b_window = cd.gamma.window();
    cd.a_override = (n - t) / 2;
    inst.cells.push_back(std::move(cd));
  }

  const int nc = static_cast<int>(inst.cells.size());
  inst.strictly_less.assign(nc, std::vector<bool>(nc, false));
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      if (sh->cell_t[i] < sh->cell_t[j]) inst.strictly_less[i][j] = true;

  inst.raw_mul = [sh](const Label& x, const Label& y) {
    return sh->encode(affine_multiply(sh->combo(x), sh->combo(y)));
  };
  inst.star_fn = [sh](const Label& l) {
    return Label{l.lam, l.T, sh->cell_t[l.lam] > 0 ? -l.b : l.b, l.S};
  };
  inst.trace_fn = [sh](const Label& l) {
    Laurent t;
    for (const auto& [d, c] : sh->combo(l)) t = t + c * torus_trace(d);
    return t;
  };

  const Label unit_label{0, 0, 0, 0};
  inst.idempotents.push_back(unit_label);
  inst.unit.emplace(unit_label, Laurent::unit());

  inst.label_str_fn = [sh](const Label& l) {
    if (sh->cell_t[l.lam] > 0)
      return "[" + sh->invs[l.lam][l.S].cycle_str() + ";" +
             sh->invs[l.lam][l.T].cycle_str() + ";" + std::to_string(l.b) + "]";
    return "[" + annular_matching_str(sh->mats[l.S]) + ";" +
           annular_matching_str(sh->mats[l.T]) + ";U" + std::to_string(l.b) + "]";
  };
  inst.label_parse_fn = [sh](const std::string& s) -> std::optional<Label> {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
    const std::string body = s.substr(1, s.size() - 2);
    const auto p1 = body.find(';');
    if (p1 == std::string::npos) return std::nullopt;
    const auto p2 = body.find(';', p1 + 1);
    if (p2 == std::string::npos || body.find(';', p2 + 1) != std::string::npos)
      return std::nullopt;
    const std::string h1 = body.substr(0, p1);
    const std::string h2 = body.substr(p1 + 1, p2 - p1 - 1);
    const std::string h3 = body.substr(p2 + 1);
    if (h3.empty()) return std::nullopt;
    if (h3.front() == 'U') {
      if (sh->cell0 < 0) return std::nullopt;
      const auto k = parse_int(h3.substr(1));
      if (!k || *k < 0) return std::nullopt;
      const auto m1 = parse_annular_matching(h1, sh->n);
      const auto m2 = parse_annular_matching(h2, sh->n);
      if (!m1 || !m2) return std::nullopt;
      const auto i1 = sh->mat_idx.find(*m1);
      const auto i2 = sh->mat_idx.find(*m2);
      if (i1 == sh->mat_idx.end() || i2 == sh->mat_idx.end()) return std::nullopt;
      return Label{sh->cell0, i1->second, *k, i2->second};
    }
    const auto w = parse_int(h3);
    if (!w) return std::nullopt;
    const auto s1 = Perm::parse_cycles(h1, sh->n);
    const auto s2 = Perm::parse_cycles(h2, sh->n);
    if (!s1 || !s2 || !s1->is_involution() || !s2->is_involution()) return std::nullopt;
    const int t = s1->fixed_points();
    if (t == 0 || s2->fixed_points() != t) return std::nullopt;
    const auto ct = sh->t2cell.find(t);
    if (ct == sh->t2cell.end()) return std::nullopt;
    const int lam = ct->second;
    const auto i1 = sh->inv_idx[lam].find(*s1);
    const auto i2 = sh->inv_idx[lam].find(*s2);
    if (i1 == sh->inv_idx[lam].end() || i2 == sh->inv_idx[lam].end())
      return std::nullopt;
    return Label{lam, i1->second, *w, i2->second};
  };

  inst.finalize();

  Report& rep = out.build_report;
  rep.title = inst.name + ": cylinder datum";

  std::map<AffineDiagram, Label> image;
  bool distinct = true, roundtrip = true, starred = true;
  for (const Label& l : inst.window()) {
    if (sh->cell_t[l.lam] == 0) continue;
    const AffineDiagram d = sh->combo(l).begin()->first;
    if (!image.emplace(d, l).second) distinct = false;
    const AffineTriple tr = to_affine_triple(d);
    if (!(from_affine_triple(n, tr) == d)) roundtrip = false;
    if (tr.t != sh->cell_t[l.lam] || !(tr.s1 == sh->invs[l.lam][l.S]) ||
        !(tr.s2 == sh->invs[l.lam][l.T]) || tr.payload != l.b)
      roundtrip = false;
    if (!(sh->combo(inst.star(l)).begin()->first == affine_flip(d))) starred = false;
  }
  if (sh->cell0 >= 0) {
    for (int S = 0; S < static_cast<int>(sh->mats.size()); ++S)
      for (int T = 0; T < static_cast<int>(sh->mats.size()); ++T)
        for (int m = 0; m <= out.k_max; ++m) {
          AffineTriple tr;
          tr.m1 = sh->mats[S];
          tr.m2 = sh->mats[T];
          tr.payload = m;
          const AffineDiagram d = from_affine_triple(n, tr);
          if (!image.emplace(d, Label{sh->cell0, S, m, T}).second) distinct = false;
          if (!(to_affine_triple(d) == tr)) roundtrip = false;
          AffineTriple fl = tr;
          std::swap(fl.m1, fl.m2);
          if (!(affine_flip(d) == from_affine_triple(n, fl))) starred = false;
        }
  }
  rep.add("the codec is injective", distinct);
  rep.add("triples decode back to their diagrams", roundtrip);
  rep.add("star reflects the diagrams", starred);
  rep.add("the unit is the identity diagram",
          sh->combo(unit_label).begin()->first == AffineDiagram::identity(n));
  bool inverts = true;
  for (int k = 0; k <= out.k_max && inverts; ++k) {
    const std::vector<Int> down = chebyshev_to_power(k);
    for (int j = 0; j <= k; ++j) {
      Int acc = 0;
      for (int m = j; m <= k; ++m) acc += down[m] * power_to_chebyshev(m)[j];
      if (acc != (j == k ? 1 : 0)) inverts = false;
    }
  }
  rep.add("the band basis change inverts", inverts);

  out.a = compute_a_values(inst, &rep);
  out.cell_t = sh->cell_t;
  out.invs = sh->invs;
  out.mats = sh->mats;
  return out;
}

}  // namespace tabular
