#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopforge/conditions.hpp"

namespace loopforge {

/* Malformed table data: ragged rows, out-of-range entries, or a table that
 * fails the Latin property where a quasigroup is required. */
class TableError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Latin property over raw data: every row and every column is a permutation
 * of [0,n). Out-of-range entries are malformed, not merely non-Latin. */
inline bool is_latin_square(int n, std::span<const int> flat) {
  if (n < 0 || flat.size() != static_cast<size_t>(n) * static_cast<size_t>(n))
    throw TableError("table size does not match declared order");
  for (int v : flat)
    if (v < 0 || v >= n) throw TableError("table entry out of range");
  std::vector<char> seen(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      int v = flat[static_cast<size_t>(a) * n + b];
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < n; ++a) {
      int v = flat[static_cast<size_t>(a) * n + b];
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

inline bool is_latin_square(const std::vector<std::vector<int>>& rows) {
  int n = static_cast<int>(rows.size());
  std::vector<int> flat;
  flat.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw TableError("ragged table row");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return is_latin_square(n, flat);
}

/* Finite quasigroup as an n-by-n Cayley table over dense indices [0,n).
 * The Latin property is enforced at construction; both division tables are
 * precomputed here so all later lookups are O(1). */
class CayleyTable {
 public:
  CayleyTable(int n, std::vector<int> flat) : n_(n), t_(std::move(flat)) {
    if (!is_latin_square(n_, t_)) throw TableError("table is not a Latin square");
    ldiv_.assign(t_.size(), 0);
    rdiv_.assign(t_.size(), 0);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        int p = t_[idx(a, b)];
        ldiv_[idx(a, p)] = b;  // a\p = b
        rdiv_[idx(b, p)] = a;  // p/b = a
      }
    identity_ = find_identity();
  }

  static CayleyTable from_rows(const std::vector<std::vector<int>>& rows) {
    int n = static_cast<int>(rows.size());
    std::vector<int> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n) throw TableError("ragged table row");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return CayleyTable(n, std::move(flat));
  }

  int order() const { return n_; }

  int at(int a, int b) const { return t_[idx(a, b)]; }

  /* a\b: the unique x with a*x == b. */
  int left_divide(int a, int b) const { return ldiv_[idx(a, b)]; }

  /* b/a: the unique y with y*a == b. */
  int right_divide(int a, int b) const { return rdiv_[idx(a, b)]; }

  /* Two-sided identity element, if the table has one. */
  std::optional<int> identity() const { return identity_; }

  const std::vector<int>& flat() const { return t_; }

  bool operator==(const CayleyTable& o) const { return n_ == o.n_ && t_ == o.t_; }

 private:
  size_t idx(int a, int b) const { return static_cast<size_t>(a) * n_ + b; }

  std::optional<int> find_identity() const {
    for (int e = 0; e < n_; ++e) {
      bool ok = true;
      for (int x = 0; x < n_ && ok; ++x)
        ok = at(e, x) == x && at(x, e) == x;
      if (ok) return e;
    }
    return std::nullopt;
  }

  int n_ = 0;
  std::vector<int> t_, ldiv_, rdiv_;
  std::optional<int> identity_;
};

/* Free-function spellings of the division lookups. */
inline int left_divide(const CayleyTable& q, int a, int b) { return q.left_divide(a, b); }
inline int right_divide(const CayleyTable& q, int a, int b) { return q.right_divide(a, b); }

inline bool is_associative(const CayleyTable& q) {
  int n = q.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (q.at(q.at(a, b), c) != q.at(a, q.at(b, c))) return false;
  return true;
}

inline bool is_commutative(const CayleyTable& q) {
  int n = q.order();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (q.at(a, b) != q.at(b, a)) return false;
  return true;
}

inline bool is_group(const CayleyTable& q) {
  return q.identity().has_value() && is_associative(q);
}

inline bool is_abelian_group(const CayleyTable& q) {
  return is_group(q) && is_commutative(q);
}

/* Quasigroup with a two-sided identity. */
class Loop {
 public:
  explicit Loop(CayleyTable q) : q_(std::move(q)) {
    auto e = q_.identity();
    if (!e) throw TableError("table has no two-sided identity");
    delta_ = *e;
  }

  Loop(CayleyTable q, int delta) : q_(std::move(q)), delta_(delta) {
    auto e = q_.identity();
    if (!e || *e != delta) throw TableError("declared identity is not two-sided");
  }

  const CayleyTable& table() const { return q_; }
  int order() const { return q_.order(); }
  int delta() const { return delta_; }
  int at(int a, int b) const { return q_.at(a, b); }

  /* x^lambda: the unique y with y*x == delta. */
  int left_inverse(int x) const { return q_.right_divide(x, delta_); }

  /* x^sigma: the unique y with x*y == delta. */
  int right_inverse(int x) const { return q_.left_divide(x, delta_); }

  bool operator==(const Loop& o) const { return delta_ == o.delta_ && q_ == o.q_; }

 private:
  CayleyTable q_;
  int delta_;
};

/* Quasigroup with a designated idempotent element delta*delta == delta. */
class Pique {
 public:
  Pique(CayleyTable q, int delta) : q_(std::move(q)), delta_(delta) {
    if (delta < 0 || delta >= q_.order() || q_.at(delta, delta) != delta)
      throw TableError("designated element is not idempotent");
  }

  const CayleyTable& table() const { return q_; }
  int order() const { return q_.order(); }
  int delta() const { return delta_; }
  int at(int a, int b) const { return q_.at(a, b); }

 private:
  CayleyTable q_;
  int delta_;
};

/* Principal isotope x*y := (x/delta)(delta\y). It is a loop with identity
 * delta; the original product is recovered as xy = (x delta)*(delta y). */
inline Loop cloop(const Pique& p) {
  int n = p.order();
  int d = p.delta();
  std::vector<int> flat(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      flat[static_cast<size_t>(x) * n + y] =
          p.table().at(p.table().right_divide(d, x), p.table().left_divide(d, y));
  return Loop(CayleyTable(n, std::move(flat)), d);
}

/* Bijection of [0,n) with composition, inverse and integer powers. */
class Permutation {
 public:
  explicit Permutation(std::vector<int> image) : img_(std::move(image)) {
    int n = static_cast<int>(img_.size());
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int v : img_) {
      if (v < 0 || v >= n || seen[v]) throw TableError("map is not a permutation");
      seen[v] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> im(static_cast<size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<int>& image() const { return img_; }

  /* (f.compose(g))(x) == f(g(x)). */
  Permutation compose(const Permutation& g) const {
    std::vector<int> im(img_.size());
    for (size_t x = 0; x < img_.size(); ++x) im[x] = img_[g.img_[x]];
    return Permutation(std::move(im));
  }

  Permutation inverse() const {
    std::vector<int> im(img_.size());
    for (size_t x = 0; x < img_.size(); ++x) im[img_[x]] = static_cast<int>(x);
    return Permutation(std::move(im));
  }

  Permutation power(long long e) const {
    Permutation base = e >= 0 ? *this : inverse();
    unsigned long long k = e >= 0 ? static_cast<unsigned long long>(e)
                                  : static_cast<unsigned long long>(-(e + 1)) + 1ULL;
    Permutation acc = identity(degree());
    while (k) {
      if (k & 1ULL) acc = acc.compose(base);
      base = base.compose(base);
      k >>= 1;
    }
    return acc;
  }

  /* Least k >= 1 with p^k == id. */
  long long order() const {
    long long ord = 1;
    int n = degree();
    std::vector<char> done(static_cast<size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
      if (done[s]) continue;
      long long len = 0;
      for (int x = s; !done[x]; x = img_[x]) {
        done[x] = 1;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  bool is_identity() const {
    for (size_t x = 0; x < img_.size(); ++x)
      if (img_[x] != static_cast<int>(x)) return false;
    return true;
  }

  bool operator==(const Permutation& o) const { return img_ == o.img_; }

 private:
  std::vector<int> img_;
};

inline Permutation left_translation(const CayleyTable& q, int a) {
  std::vector<int> im(static_cast<size_t>(q.order()));
  for (int x = 0; x < q.order(); ++x) im[x] = q.at(a, x);
  return Permutation(std::move(im));
}

inline Permutation right_translation(const CayleyTable& q, int a) {
  std::vector<int> im(static_cast<size_t>(q.order()));
  for (int x = 0; x < q.order(); ++x) im[x] = q.at(x, a);
  return Permutation(std::move(im));
}

inline void check_map_shape(const std::vector<int>& f, int dom, int cod,
                            const char* what) {
  if (static_cast<int>(f.size()) != dom) throw TableError(std::string(what) + ": wrong domain size");
  for (int v : f)
    if (v < 0 || v >= cod) throw TableError(std::string(what) + ": value out of range");
}

/* Triple (alpha, beta, gamma) with alpha(x) beta(y) == gamma(xy) for all x,y. */
inline bool is_homotopy(const std::vector<int>& alpha, const std::vector<int>& beta,
                        const std::vector<int>& gamma, const CayleyTable& q1,
                        const CayleyTable& q2) {
  check_map_shape(alpha, q1.order(), q2.order(), "alpha");
  check_map_shape(beta, q1.order(), q2.order(), "beta");
  check_map_shape(gamma, q1.order(), q2.order(), "gamma");
  for (int x = 0; x < q1.order(); ++x)
    for (int y = 0; y < q1.order(); ++y)
      if (q2.at(alpha[x], beta[y]) != gamma[q1.at(x, y)]) return false;
  return true;
}

inline bool is_homomorphism(const std::vector<int>& f, const CayleyTable& q1,
                            const CayleyTable& q2) {
  return is_homotopy(f, f, f, q1, q2);
}

/* Homotopy whose three maps are all bijective. */
inline bool is_isotopy(const std::vector<int>& alpha, const std::vector<int>& beta,
                       const std::vector<int>& gamma, const CayleyTable& q1,
                       const CayleyTable& q2) {
  auto bijective = [&](const std::vector<int>& f) {
    if (q1.order() != q2.order()) return false;
    std::vector<char> seen(f.size(), 0);
    for (int v : f) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  };
  return is_homotopy(alpha, beta, gamma, q1, q2) && bijective(alpha) &&
         bijective(beta) && bijective(gamma);
}

/* Multiplicativity of a permutation over one table. */
inline bool is_automorphism(const CayleyTable& q, const Permutation& f) {
  if (f.degree() != q.order()) throw TableError("permutation degree mismatch");
  for (int x = 0; x < q.order(); ++x)
    for (int y = 0; y < q.order(); ++y)
      if (q.at(f(x), f(y)) != f(q.at(x, y))) return false;
  return true;
}

/* All automorphisms of q, found by backtracking over images. Small orders only. */
inline std::vector<Permutation> automorphism_group(const CayleyTable& q) {
  int n = q.order();
  std::vector<Permutation> out;
  std::vector<int> img(static_cast<size_t>(n), -1);
  std::vector<char> used(static_cast<size_t>(n), 0);
  auto consistent = [&](int k) {
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b) {
        int p = q.at(a, b);
        if (p <= k || img[p] >= 0) {
          int want = q.at(img[a], img[b]);
          if (img[p] >= 0 && img[p] != want) return false;
          if (img[p] < 0) {
            if (used[want]) return false;
            img[p] = want;
            used[want] = 1;
          }
        }
      }
    return true;
  };
  // Plain depth-first over images; the partial-product constraint above prunes
  // hard enough for the desk-scale orders this library targets.
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      out.emplace_back(img);
      return;
    }
    if (img[k] >= 0) {
      rec(k + 1);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      auto save_img = img;
      auto save_used = used;
      img[k] = v;
      used[v] = 1;
      if (consistent(k)) rec(k + 1);
      img = save_img;
      used = save_used;
    }
  };
  rec(0);
  return out;
}

}  // namespace loopforge
