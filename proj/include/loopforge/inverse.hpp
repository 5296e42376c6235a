#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "loopforge/cayley.hpp"

namespace loopforge {

/* Exponent triple for the generalized inverse identity
 * J^r(xy) J^s(x) == J^t(y). */
struct RstTriple {
  long long r = 0, s = 0, t = 0;
  bool operator==(const RstTriple&) const = default;
};

/* x -> x^sigma, the right inverse map of a loop: x * J(x) == delta. */
inline Permutation right_inverse_permutation(const Loop& l) {
  std::vector<int> im(static_cast<size_t>(l.order()));
  for (int x = 0; x < l.order(); ++x) im[x] = l.right_inverse(x);
  return Permutation(std::move(im));
}

/* x -> x^lambda: J(x) * x == delta. Inverse permutation of the sigma map. */
inline Permutation left_inverse_permutation(const Loop& l) {
  std::vector<int> im(static_cast<size_t>(l.order()));
  for (int x = 0; x < l.order(); ++x) im[x] = l.left_inverse(x);
  return Permutation(std::move(im));
}

/* First (x,y) in lexicographic order violating J^r(xy) J^s(x) == J^t(y),
 * or nullopt when the identity holds everywhere. */
inline std::optional<std::pair<int, int>> rst_witness(const CayleyTable& q,
                                                      const Permutation& j,
                                                      RstTriple rst) {
  if (j.degree() != q.order()) throw TableError("permutation degree mismatch");
  Permutation pr = j.power(rst.r), ps = j.power(rst.s), pt = j.power(rst.t);
  for (int x = 0; x < q.order(); ++x)
    for (int y = 0; y < q.order(); ++y)
      if (q.at(pr(q.at(x, y)), ps(x)) != pt(y)) return std::make_pair(x, y);
  return std::nullopt;
}

inline bool is_rst_inverse(const CayleyTable& q, const Permutation& j, RstTriple rst) {
  return !rst_witness(q, j, rst).has_value();
}

inline bool is_m_inverse(const CayleyTable& q, const Permutation& j, long long m) {
  return is_rst_inverse(q, j, RstTriple{m, m + 1, m});
}

inline bool is_wip(const CayleyTable& q, const Permutation& j) {
  return is_rst_inverse(q, j, RstTriple{-1, 0, -1});
}

inline bool is_ci(const CayleyTable& q, const Permutation& j) {
  return is_m_inverse(q, j, 0);
}

inline bool is_rst_inverse(const Loop& l, const Permutation& j, RstTriple rst) {
  return is_rst_inverse(l.table(), j, rst);
}
inline bool is_m_inverse(const Loop& l, const Permutation& j, long long m) {
  return is_m_inverse(l.table(), j, m);
}
inline bool is_wip(const Loop& l, const Permutation& j) { return is_wip(l.table(), j); }
inline bool is_ci(const Loop& l, const Permutation& j) { return is_ci(l.table(), j); }

/* Least h >= 1 such that J^h is multiplicative on q. Always terminates:
 * J^ord(J) is the identity map, which is multiplicative. */
inline int aut_power_order(const CayleyTable& q, const Permutation& j) {
  if (j.degree() != q.order()) throw TableError("permutation degree mismatch");
  long long ord = j.order();
  Permutation cur = j;
  for (long long h = 1; h <= ord; ++h) {
    if (is_automorphism(q, cur)) return static_cast<int>(h);
    cur = cur.compose(j);
  }
  return static_cast<int>(ord);  // unreachable: h == ord hits the identity
}

inline int aut_power_order(const Loop& l, const Permutation& j) {
  return aut_power_order(l.table(), j);
}

/* Least non-negative m with m == m1 (mod h1) and m == m2 (mod h2), or nullopt
 * when gcd(h1,h2) does not divide m1 - m2. Moduli must be >= 1. */
inline std::optional<long long> crt_solve(long long m1, long long h1, long long m2,
                                          long long h2) {
  if (h1 < 1 || h2 < 1) throw std::invalid_argument("crt_solve: moduli must be >= 1");
  auto mod = [](long long a, long long m) { return ((a % m) + m) % m; };
  m1 = mod(m1, h1);
  m2 = mod(m2, h2);
  long long g = std::gcd(h1, h2);
  if (mod(m2 - m1, g) != 0) return std::nullopt;
  long long l = h1 / g * h2;
  // Extended Euclid on (h1, h2): p*h1 + q*h2 == g.
  long long a = h1, b = h2, p0 = 1, p1 = 0;
  while (b) {
    long long qt = a / b;
    long long tmp = a - qt * b;
    a = b;
    b = tmp;
    tmp = p0 - qt * p1;
    p0 = p1;
    p1 = tmp;
  }
  long long k = mod((m2 - m1) / g * p0, h2 / g);
  return mod(m1 + h1 * k, l);
}

/* Classification of one (table, J) pair over a window of candidate m. */
struct ClassifyReport {
  int order = 0;
  int h = 1;                         // least power of J that is multiplicative
  std::vector<long long> valid_m;    // all m in [window_lo, window_hi] that hold
  std::vector<int> residues;         // minimal non-negative residues mod h
  bool wip = false;
  bool ci = false;
  long long window_lo = 0, window_hi = 0;
};

inline ClassifyReport classify(const CayleyTable& q, const Permutation& j,
                               long long window_lo = -4, long long window_hi = 4) {
  if (window_lo > window_hi) throw std::invalid_argument("classify: empty window");
  ClassifyReport rep;
  rep.order = q.order();
  rep.h = aut_power_order(q, j);
  rep.window_lo = window_lo;
  rep.window_hi = window_hi;
  for (long long m = window_lo; m <= window_hi; ++m)
    if (is_m_inverse(q, j, m)) rep.valid_m.push_back(m);
  for (int r = 0; r < rep.h; ++r)
    if (is_m_inverse(q, j, r)) rep.residues.push_back(r);
  // Valid m must form whole residue classes mod h, since J^h is an
  // automorphism and shifts (m, m+1, m) by multiples of h.
  auto mod = [&](long long m) { return static_cast<int>(((m % rep.h) + rep.h) % rep.h); };
  for (long long m = window_lo; m <= window_hi; ++m) {
    bool direct = std::binary_search(rep.valid_m.begin(), rep.valid_m.end(), m);
    bool by_residue =
        std::binary_search(rep.residues.begin(), rep.residues.end(), mod(m));
    if (direct != by_residue)
      throw ConditionViolation(
          "classify", {cond_fail("rk-m+uh", {static_cast<int>(m)},
                                 "valid m not closed under shifts by h")});
  }
  rep.wip = is_wip(q, j);
  rep.ci = is_ci(q, j);
  return rep;
}

inline ClassifyReport classify(const Loop& l, const Permutation& j,
                               long long window_lo = -4, long long window_hi = 4) {
  return classify(l.table(), j, window_lo, window_hi);
}

inline ClassifyReport classify(const Loop& l, long long window_lo = -4,
                               long long window_hi = 4) {
  return classify(l, right_inverse_permutation(l), window_lo, window_hi);
}

}  // namespace loopforge
