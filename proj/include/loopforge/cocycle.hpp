#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "loopforge/cayley.hpp"
#include "loopforge/conditions.hpp"
#include "loopforge/inverse.hpp"

namespace loopforge {

/* Map phi: G x G -> V together with an optional right action of G on V.
 * A missing action table means the trivial action v <| x = v. */
struct CocycleMap {
  int g_order = 0;
  int v_order = 0;
  std::vector<int> phi;                       // g_order*g_order entries, values in [0,v_order)
  std::optional<std::vector<int>> action;     // v_order*g_order entries: v <| x

  int value(int x, int xp) const { return phi[static_cast<size_t>(x) * g_order + xp]; }

  int act(int v, int x) const {
    return action ? (*action)[static_cast<size_t>(v) * g_order + x] : v;
  }

  bool trivial_action() const {
    if (!action) return true;
    for (int v = 0; v < v_order; ++v)
      for (int x = 0; x < g_order; ++x)
        if (act(v, x) != v) return false;
    return true;
  }
};

inline void check_cocycle_shape(const CayleyTable& g, const CayleyTable& v,
                                const CocycleMap& c) {
  if (c.g_order != g.order() || c.v_order != v.order())
    throw TableError("cocycle map order mismatch");
  if (static_cast<int>(c.phi.size()) != c.g_order * c.g_order)
    throw TableError("cocycle map has wrong size");
  for (int val : c.phi)
    if (val < 0 || val >= c.v_order) throw TableError("cocycle value out of range");
  if (c.action) {
    if (static_cast<int>(c.action->size()) != c.v_order * c.g_order)
      throw TableError("action table has wrong size");
    for (int val : *c.action)
      if (val < 0 || val >= c.v_order) throw TableError("action value out of range");
  }
}

/* The action must be a right action of G on V by additive maps, and each
 * v -> v <| x must be a bijection. Trivial (absent) actions pass. */
inline std::vector<ConditionReport> check_action(const CayleyTable& g,
                                                 const CayleyTable& v,
                                                 const CocycleMap& c) {
  check_cocycle_shape(g, v, c);
  std::vector<ConditionReport> out;
  if (!c.action) {
    out.push_back(cond_ok("action-right-action"));
    out.push_back(cond_ok("action-additive"));
    out.push_back(cond_ok("action-bijective"));
    return out;
  }
  auto eg = g.identity();
  ConditionReport right = cond_ok("action-right-action");
  if (!eg) {
    right = cond_fail("action-right-action", {}, "G has no identity");
  } else {
    for (int w = 0; w < v.order() && right.ok; ++w)
      if (c.act(w, *eg) != w) right = cond_fail("action-right-action", {w}, "v <| e != v");
    for (int w = 0; w < v.order() && right.ok; ++w)
      for (int x = 0; x < g.order() && right.ok; ++x)
        for (int y = 0; y < g.order() && right.ok; ++y)
          if (c.act(c.act(w, x), y) != c.act(w, g.at(x, y)))
            right = cond_fail("action-right-action", {w, x, y});
  }
  out.push_back(right);
  ConditionReport additive = cond_ok("action-additive");
  for (int a = 0; a < v.order() && additive.ok; ++a)
    for (int b = 0; b < v.order() && additive.ok; ++b)
      for (int x = 0; x < g.order() && additive.ok; ++x)
        if (c.act(v.at(a, b), x) != v.at(c.act(a, x), c.act(b, x)))
          additive = cond_fail("action-additive", {a, b, x});
  out.push_back(additive);
  ConditionReport bij = cond_ok("action-bijective");
  for (int x = 0; x < g.order() && bij.ok; ++x) {
    std::vector<char> seen(static_cast<size_t>(v.order()), 0);
    for (int w = 0; w < v.order(); ++w) {
      int im = c.act(w, x);
      if (seen[im]) {
        bij = cond_fail("action-bijective", {x, w});
        break;
      }
      seen[im] = 1;
    }
  }
  out.push_back(bij);
  return out;
}

/* d(phi)(x,x',x'') = phi(x',x'') - phi(xx',x'') + phi(x,x'x'') - phi(x,x') <| x''
 * must vanish for every triple. Requires a valid additive action. */
inline bool is_2cocycle(const CayleyTable& g, const CayleyTable& v, const CocycleMap& c) {
  throw_if_violated("is_2cocycle", check_action(g, v, c));
  if (!is_group(g)) throw TableError("is_2cocycle: G must be a group");
  if (!is_abelian_group(v)) throw TableError("is_2cocycle: V must be an abelian group");
  auto neg = [&](int a) { return v.left_divide(a, *v.identity()); };
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y)
      for (int z = 0; z < g.order(); ++z) {
        int acc = c.value(y, z);
        acc = v.at(acc, neg(c.value(g.at(x, y), z)));
        acc = v.at(acc, c.value(x, g.at(y, z)));
        acc = v.at(acc, neg(c.act(c.value(x, y), z)));
        if (acc != *v.identity()) return false;
      }
  return true;
}

/* Coboundary of a 1-cochain psi: G -> V under the map's action:
 * (d psi)(x,x') = psi(x') - psi(xx') + psi(x) <| x'. Always a 2-cocycle. */
inline CocycleMap coboundary(const CayleyTable& g, const CayleyTable& v,
                             const std::vector<int>& psi,
                             std::optional<std::vector<int>> action = std::nullopt) {
  check_map_shape(psi, g.order(), v.order(), "psi");
  if (!is_abelian_group(v)) throw TableError("coboundary: V must be an abelian group");
  CocycleMap c{g.order(), v.order(),
               std::vector<int>(static_cast<size_t>(g.order()) * g.order(), 0),
               std::move(action)};
  auto neg = [&](int a) { return v.left_divide(a, *v.identity()); };
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y) {
      int acc = v.at(psi[y], neg(psi[g.at(x, y)]));
      acc = v.at(acc, c.act(psi[x], y));
      c.phi[static_cast<size_t>(x) * g.order() + y] = acc;
    }
  return c;
}

inline int extension_index(int x, int v, int v_order) { return x * v_order + v; }
inline std::pair<int, int> extension_split(int q, int v_order) {
  return {q / v_order, q % v_order};
}

/* Extension table on G x V with product
 * (x,v)(x',v') = (xx', phi(x,x') + v <| x' + v').
 * Element (x,v) sits at index x*|V| + v. */
inline CayleyTable cocycle_extension(const CayleyTable& g, const CayleyTable& v,
                                     const CocycleMap& c) {
  std::vector<ConditionReport> pre = check_action(g, v, c);
  if (!is_group(g)) pre.push_back(cond_fail("G-is-group", {}));
  if (!is_abelian_group(v)) pre.push_back(cond_fail("V-is-abelian-group", {}));
  throw_if_violated("cocycle_extension", pre);
  int n = g.order() * v.order();
  std::vector<int> flat(static_cast<size_t>(n) * n);
  for (int x = 0; x < g.order(); ++x)
    for (int a = 0; a < v.order(); ++a)
      for (int y = 0; y < g.order(); ++y)
        for (int b = 0; b < v.order(); ++b) {
          int second = v.at(v.at(c.value(x, y), c.act(a, y)), b);
          flat[static_cast<size_t>(extension_index(x, a, v.order())) * n +
               extension_index(y, b, v.order())] =
              extension_index(g.at(x, y), second, v.order());
        }
  return CayleyTable(n, std::move(flat));
}

/* Constraints making the trivial-action extension an odd-m-invertible loop:
 * quasi-0:  phi(e,x) == 0 == phi(x,e)
 * quasi-I:  phi(x, x^-1) == 0
 * quasi-II: phi(x'^-1 x^-1, x) == phi(x, x')
 */
inline std::vector<ConditionReport> check_odd_invertible(const CayleyTable& g,
                                                         const CayleyTable& v,
                                                         const CocycleMap& c) {
  check_cocycle_shape(g, v, c);
  std::vector<ConditionReport> out;
  if (!is_group(g)) out.push_back(cond_fail("G-is-group", {}));
  if (!is_abelian_group(v)) out.push_back(cond_fail("V-is-abelian-group", {}));
  if (!c.trivial_action()) out.push_back(cond_fail("action-trivial", {}));
  if (!out.empty()) return out;
  int eg = *g.identity();
  int ev = *v.identity();
  auto inv = [&](int x) { return g.left_divide(x, eg); };
  ConditionReport q0 = cond_ok("quasi-0");
  for (int x = 0; x < g.order() && q0.ok; ++x)
    if (c.value(eg, x) != ev || c.value(x, eg) != ev) q0 = cond_fail("quasi-0", {x});
  out.push_back(q0);
  ConditionReport q1 = cond_ok("quasi-I");
  for (int x = 0; x < g.order() && q1.ok; ++x)
    if (c.value(x, inv(x)) != ev) q1 = cond_fail("quasi-I", {x});
  out.push_back(q1);
  ConditionReport q2 = cond_ok("quasi-II");
  for (int x = 0; x < g.order() && q2.ok; ++x)
    for (int y = 0; y < g.order() && q2.ok; ++y)
      if (c.value(g.at(inv(y), inv(x)), x) != c.value(x, y))
        q2 = cond_fail("quasi-II", {x, y});
  out.push_back(q2);
  return out;
}

struct OddInvertibleLoop {
  Loop loop;
  Permutation j;  // (x,v) -> (x^-1, -v); an involution
};

/* Trivial-action extension G x_phi V with J(x,v) = (x^-1, -v). The returned
 * loop satisfies the m-inverse identity for every odd m. */
inline OddInvertibleLoop odd_invertible_loop(const CayleyTable& g, const CayleyTable& v,
                                             const CocycleMap& c) {
  throw_if_violated("odd_invertible_loop", check_odd_invertible(g, v, c));
  CayleyTable ext = cocycle_extension(g, v, c);
  int eg = *g.identity();
  int ev = *v.identity();
  std::vector<int> jim(static_cast<size_t>(ext.order()));
  for (int x = 0; x < g.order(); ++x)
    for (int a = 0; a < v.order(); ++a)
      jim[extension_index(x, a, v.order())] =
          extension_index(g.left_divide(x, eg), v.left_divide(a, ev), v.order());
  Permutation j(std::move(jim));
  Loop loop(std::move(ext), extension_index(eg, ev, v.order()));
  if (!j.compose(j).is_identity())
    throw ConditionViolation("odd_invertible_loop", {cond_fail("J-involution", {})});
  if (!is_m_inverse(loop, j, 1))
    throw ConditionViolation("odd_invertible_loop", {cond_fail("m-inv", {}, "m = 1 scan")});
  return OddInvertibleLoop{std::move(loop), std::move(j)};
}

}  // namespace loopforge
