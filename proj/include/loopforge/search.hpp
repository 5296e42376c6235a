#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "loopforge/cayley.hpp"
#include "loopforge/cocycle.hpp"
#include "loopforge/conditions.hpp"
#include "loopforge/inverse.hpp"
#include "loopforge/presets.hpp"
#include "loopforge/products.hpp"

namespace loopforge {

struct SearchCaps {
  long long max_results = 1000000;  // candidates materialized into the result
  long long budget = 0;             // search nodes expanded; 0 means unbounded
};

// All searches visit candidates in lexicographic order over the flattened
// tables, so a budget-cut result is always a prefix of the full result.
template <typename T>
struct SearchResult {
  std::vector<T> results;
  long long matched = 0;  // total matches, counted past the materialization cap
  long long visited = 0;
  bool complete = true;
};

inline const std::vector<std::string>& cocycle_constraint_registry() {
  static const std::vector<std::string> names = {"quasi-0", "quasi-I", "quasi-II"};
  return names;
}

// Enumerates value tables phi: G x G -> V subject to the named constraints.
// Unit cells are pruned before descent; the symmetry constraint forces a
// cell to agree with any already-assigned cell of its three-cycle orbit
// (x, x') -> (x'^-1 x^-1, x).
inline SearchResult<CocycleMap> search_cocycles(const CayleyTable& g, const CayleyTable& v,
                                                const std::vector<std::string>& constraints,
                                                const SearchCaps& caps = {}) {
  for (const auto& name : constraints) {
    const auto& registry = cocycle_constraint_registry();
    if (std::find(registry.begin(), registry.end(), name) == registry.end())
      throw TableError("unknown cocycle constraint: " + name);
  }
  if (caps.max_results <= 0 || caps.budget < 0) throw TableError("caps must be positive");
  const bool want_unit = std::find(constraints.begin(), constraints.end(), "quasi-0") !=
                         constraints.end();
  const bool want_inverse = std::find(constraints.begin(), constraints.end(), "quasi-I") !=
                            constraints.end();
  const bool want_symmetry = std::find(constraints.begin(), constraints.end(), "quasi-II") !=
                             constraints.end();
  const int ng = g.order();
  const int nv = v.order();
  std::optional<int> ge = g.identity();
  std::optional<int> vz = v.identity();
  if ((want_unit || want_inverse || want_symmetry) && !vz)
    throw TableError("value carrier has no zero element");
  if (want_unit && !ge) throw TableError("base carrier has no identity");
  if ((want_inverse || want_symmetry) && !is_group(g))
    throw TableError("inverse-based constraints require a group base");
  std::vector<int> inv;
  if (want_inverse || want_symmetry) inv = inversion_permutation(g).image();

  SearchResult<CocycleMap> out;
  const int cells = ng * ng;
  std::vector<int> phi(cells, -1);
  bool stopped = false;

  std::function<void(int)> descend = [&](int cell) {
    if (stopped) return;
    if (caps.budget > 0 && out.visited >= caps.budget) {
      stopped = true;
      return;
    }
    ++out.visited;
    if (cell == cells) {
      ++out.matched;
      if (static_cast<long long>(out.results.size()) < caps.max_results) {
        CocycleMap map;
        map.g_order = ng;
        map.v_order = nv;
        map.phi = phi;
        out.results.push_back(std::move(map));
      }
      return;
    }
    const int x = cell / ng;
    const int xp = cell % ng;
    int forced = -1;
    auto force = [&](int value) {
      if (forced >= 0 && forced != value) forced = -2;
      else if (forced != -2) forced = value;
    };
    if (want_unit && (x == *ge || xp == *ge)) force(*vz);
    if (want_inverse && xp == inv[x]) force(*vz);
    if (want_symmetry) {
      const int p1 = g.at(inv[xp], inv[x]) * ng + x;
      if (p1 < cell && phi[p1] >= 0) force(phi[p1]);
      const int y = p1 / ng;
      const int p2 = g.at(inv[x], inv[y]) * ng + y;
      if (p2 < cell && phi[p2] >= 0) force(phi[p2]);
    }
    if (forced == -2) return;
    if (forced >= 0) {
      phi[cell] = forced;
      descend(cell + 1);
      phi[cell] = -1;
      return;
    }
    for (int value = 0; value < nv && !stopped; ++value) {
      phi[cell] = value;
      descend(cell + 1);
    }
    phi[cell] = -1;
  };
  descend(0);
  out.complete = !stopped;
  return out;
}

// Enumerates mutual action pairs cell by cell in the order of the flattened
// (phi, psi) tables. Unit rows and columns are fixed before descent; every
// surviving full assignment is cross-checked by the two-action product
// build, so a returned pair always yields a loop passing the defining
// identity scan.
inline SearchResult<ActionPair> search_matched_actions(const Loop& r, const Permutation& jr,
                                                       const Loop& s, const Permutation& js,
                                                       long long m,
                                                       const SearchCaps& caps = {}) {
  if (caps.max_results <= 0 || caps.budget < 0) throw TableError("caps must be positive");
  const int nr = r.order();
  const int ns = s.order();
  const int dr = r.delta();
  const int ds = s.delta();
  SearchResult<ActionPair> out;
  const int cells = ns * nr;
  std::vector<int> phi(cells, -1), psi(cells, -1);
  bool stopped = false;

  std::function<void(int)> descend = [&](int cell) {
    if (stopped) return;
    if (caps.budget > 0 && out.visited >= caps.budget) {
      stopped = true;
      return;
    }
    ++out.visited;
    if (cell == cells) {
      ActionPair a;
      a.r_order = nr;
      a.s_order = ns;
      a.phi = phi;
      a.psi = psi;
      auto check = check_matched_pair(r, jr, s, js, a, m);
      if (check.loop && check.j) {
        ++out.matched;
        if (static_cast<long long>(out.results.size()) < caps.max_results)
          out.results.push_back(std::move(a));
      }
      return;
    }
    const int si = cell / nr;
    const int ri = cell % nr;
    const bool unit_r = (ri == dr);
    const bool unit_s = (si == ds);
    if (unit_r || unit_s) {
      phi[cell] = unit_r ? dr : ri;
      psi[cell] = unit_s ? ds : si;
      descend(cell + 1);
      phi[cell] = psi[cell] = -1;
      return;
    }
    for (int pv = 0; pv < nr && !stopped; ++pv)
      for (int qv = 0; qv < ns && !stopped; ++qv) {
        phi[cell] = pv;
        psi[cell] = qv;
        descend(cell + 1);
      }
    phi[cell] = psi[cell] = -1;
  };
  descend(0);
  out.complete = !stopped;

  std::sort(out.results.begin(), out.results.end(),
            [](const ActionPair& a, const ActionPair& b) {
              if (a.phi != b.phi) return a.phi < b.phi;
              return a.psi < b.psi;
            });
  return out;
}

namespace detail {

// Backtracking over normalized tables: row 0 and column 0 in natural order.
// visit returns false to stop the walk early.
inline bool walk_normalized_loops(int n, const std::function<bool(const Loop&)>& visit) {
  std::vector<int> flat(static_cast<std::size_t>(n) * n, -1);
  for (int j = 0; j < n; ++j) flat[j] = j;
  for (int i = 0; i < n; ++i) flat[static_cast<std::size_t>(i) * n] = i;
  std::vector<std::uint32_t> row_used(n, 0), col_used(n, 0);
  for (int j = 0; j < n; ++j) {
    row_used[0] |= 1u << j;
    col_used[j] |= 1u << j;
  }
  for (int i = 1; i < n; ++i) {
    row_used[i] |= 1u << i;
    col_used[0] |= 1u << i;
  }

  std::function<bool(int, int)> fill = [&](int i, int j) -> bool {
    if (i == n) {
      return visit(Loop(CayleyTable(n, flat)));
    }
    const int ni = (j == n - 1) ? i + 1 : i;
    const int nj = (j == n - 1) ? (ni == n ? 0 : 1) : j + 1;
    for (int v = 0; v < n; ++v) {
      const std::uint32_t bit = 1u << v;
      if ((row_used[i] & bit) || (col_used[j] & bit)) continue;
      flat[static_cast<std::size_t>(i) * n + j] = v;
      row_used[i] |= bit;
      col_used[j] |= bit;
      const bool keep = fill(ni, nj);
      row_used[i] &= ~bit;
      col_used[j] &= ~bit;
      flat[static_cast<std::size_t>(i) * n + j] = -1;
      if (!keep) return false;
    }
    return true;
  };
  if (n == 1) return visit(Loop(CayleyTable(1, std::vector<int>{0})));
  return fill(1, 1);
}

}  // namespace detail

// Every normalized loop of order n exactly once, in lexicographic table
// order. Exhaustive mode is capped at order 6.
inline std::vector<Loop> enumerate_loops(int n,
                                         const std::function<bool(const Loop&)>& predicate = {}) {
  if (n <= 0) throw TableError("order must be positive");
  if (n > 6)
    throw ResourceError("exhaustive enumeration is capped at order 6; use sample_loops");
  std::vector<Loop> out;
  detail::walk_normalized_loops(n, [&](const Loop& q) {
    if (!predicate || predicate(q)) out.push_back(q);
    return true;
  });
  return out;
}

inline long long count_loops(int n, const std::function<bool(const Loop&)>& predicate = {}) {
  if (n <= 0) throw TableError("order must be positive");
  if (n > 6)
    throw ResourceError("exhaustive enumeration is capped at order 6; use sample_loops");
  long long count = 0;
  detail::walk_normalized_loops(n, [&](const Loop& q) {
    if (!predicate || predicate(q)) ++count;
    return true;
  });
  return count;
}

// Random normalized loops for orders beyond the exhaustive cap. Rows are
// completed with value candidates in seeded random order; repeats across
// draws are possible. Deterministic for a fixed seed.
inline std::vector<Loop> sample_loops(int n, int count, std::uint64_t seed = 1) {
  if (n <= 0) throw TableError("order must be positive");
  if (n > 30) throw ResourceError("sampling is capped at order 30");
  if (count < 0) throw TableError("sample count must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<Loop> out;
  out.reserve(count);
  std::vector<int> flat(static_cast<std::size_t>(n) * n, -1);
  std::vector<std::uint32_t> row_used(n, 0), col_used(n, 0);

  std::function<bool(int, int)> fill = [&](int i, int j) -> bool {
    if (i == n) return true;
    const int ni = (j == n - 1) ? i + 1 : i;
    const int nj = (j == n - 1) ? (ni == n ? 0 : 1) : j + 1;
    std::vector<int> candidates;
    for (int v = 0; v < n; ++v) {
      const std::uint32_t bit = 1u << v;
      if (!(row_used[i] & bit) && !(col_used[j] & bit)) candidates.push_back(v);
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (int v : candidates) {
      const std::uint32_t bit = 1u << v;
      flat[static_cast<std::size_t>(i) * n + j] = v;
      row_used[i] |= bit;
      col_used[j] |= bit;
      if (fill(ni, nj)) return true;
      row_used[i] &= ~bit;
      col_used[j] &= ~bit;
    }
    flat[static_cast<std::size_t>(i) * n + j] = -1;
    return false;
  };

  for (int k = 0; k < count; ++k) {
    std::fill(flat.begin(), flat.end(), -1);
    std::fill(row_used.begin(), row_used.end(), 0u);
    std::fill(col_used.begin(), col_used.end(), 0u);
    for (int j = 0; j < n; ++j) {
      flat[j] = j;
      row_used[0] |= 1u << j;
      col_used[j] |= 1u << j;
    }
    for (int i = 1; i < n; ++i) {
      flat[static_cast<std::size_t>(i) * n] = i;
      row_used[i] |= 1u << i;
      col_used[0] |= 1u << i;
    }
    if (n == 1) {
      out.push_back(Loop(CayleyTable(1, std::vector<int>{0})));
      continue;
    }
    if (!fill(1, 1)) throw ResourceError("sampling failed to complete a table");
    out.push_back(Loop(CayleyTable(n, flat)));
  }
  return out;
}

// A pique is central when its associated loop is an abelian group and the
// translations by the idempotent act as automorphisms of that group. The
// idempotent's translations are the only ones fixing it.
inline bool is_central_pique(const Pique& p) {
  const Loop b = cloop(p);
  if (!is_abelian_group(b.table())) return false;
  const Permutation left = left_translation(p.table(), p.delta());
  const Permutation right = right_translation(p.table(), p.delta());
  return is_automorphism(b.table(), left) && is_automorphism(b.table(), right);
}

}  // namespace loopforge
