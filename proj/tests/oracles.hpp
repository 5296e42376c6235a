#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here recomputes results from the raw definitions with plain
// scans; nothing calls back into the code paths under test.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace oracle {

// x under the e-th power of the permutation given by its image vector.
inline int apply_power(const std::vector<int>& img, long long e, int x) {
  const int n = static_cast<int>(img.size());
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) inv[img[i]] = i;
  if (e >= 0)
    for (long long k = 0; k < e; ++k) x = img[x];
  else
    for (long long k = 0; k < -e; ++k) x = inv[x];
  return x;
}

// J^r(xy) J^s(x) == J^t(y) over every cell of a flat n-by-n table.
inline bool rst_holds(int n, const std::vector<int>& flat, const std::vector<int>& j,
                      long long r, long long s, long long t) {
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int prod = flat[static_cast<std::size_t>(x) * n + y];
      const int lhs = flat[static_cast<std::size_t>(apply_power(j, r, prod)) * n +
                           apply_power(j, s, x)];
      if (lhs != apply_power(j, t, y)) return false;
    }
  return true;
}

// Loops of order n with row 0 and column 0 in natural order, enumerated by
// completing whole rows from the permutation list and checking columns.
inline long long count_normalized_loops(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  long long count = 0;
  std::vector<std::vector<char>> col_used(static_cast<std::size_t>(n),
                                          std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int c = 0; c < n; ++c) col_used[c][c] = 1;

  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      ++count;
      return;
    }
    for (const auto& cand : perms) {
      if (cand[0] != i) continue;
      bool ok = true;
      for (int c = 1; c < n && ok; ++c) ok = !col_used[c][cand[c]];
      if (!ok) continue;
      for (int c = 1; c < n; ++c) col_used[c][cand[c]] = 1;
      rec(i + 1);
      for (int c = 1; c < n; ++c) col_used[c][cand[c]] = 0;
    }
  };
  rec(1);
  return count;
}

// Least non-negative solution of m == m1 (mod h1), m == m2 (mod h2) by
// scanning [0, lcm).
inline std::optional<long long> crt_scan(long long m1, long long h1, long long m2,
                                         long long h2) {
  const long long l = std::lcm(h1, h2);
  auto mod = [](long long a, long long m) { return ((a % m) + m) % m; };
  for (long long m = 0; m < l; ++m)
    if (mod(m - m1, h1) == 0 && mod(m - m2, h2) == 0) return m;
  return std::nullopt;
}

// Named constraint formulas on a value table phi: G x G -> V, evaluated
// straight from the definitions over the raw group tables.
inline bool cocycle_constraint_holds(const std::string& name, int ng, int nv,
                                     const std::vector<int>& g_flat,
                                     const std::vector<int>& phi) {
  auto g_at = [&](int a, int b) { return g_flat[static_cast<std::size_t>(a) * ng + b]; };
  auto at = [&](int a, int b) { return phi[static_cast<std::size_t>(a) * ng + b]; };
  int eg = -1;
  for (int e = 0; e < ng && eg < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < ng && ok; ++x) ok = g_at(e, x) == x && g_at(x, e) == x;
    if (ok) eg = e;
  }
  auto inv = [&](int x) {
    for (int y = 0; y < ng; ++y)
      if (g_at(x, y) == eg) return y;
    return -1;
  };
  (void)nv;
  if (name == "quasi-0") {
    for (int x = 0; x < ng; ++x)
      if (at(eg, x) != 0 || at(x, eg) != 0) return false;
    return true;
  }
  if (name == "quasi-I") {
    for (int x = 0; x < ng; ++x)
      if (at(x, inv(x)) != 0) return false;
    return true;
  }
  if (name == "quasi-II") {
    for (int x = 0; x < ng; ++x)
      for (int y = 0; y < ng; ++y)
        if (at(g_at(inv(y), inv(x)), x) != at(x, y)) return false;
    return true;
  }
  return false;
}

// Every phi: G x G -> V satisfying all named constraints, by odometer over
// the |V|^(|G|^2) value tables. Sorted lexicographically by construction.
inline std::vector<std::vector<int>> all_constrained_value_tables(
    int ng, int nv, const std::vector<int>& g_flat,
    const std::vector<std::string>& names) {
  std::vector<std::vector<int>> out;
  const int cells = ng * ng;
  std::vector<int> phi(static_cast<std::size_t>(cells), 0);
  while (true) {
    bool ok = true;
    for (const auto& name : names)
      ok = ok && cocycle_constraint_holds(name, ng, nv, g_flat, phi);
    if (ok) out.push_back(phi);
    int i = cells - 1;
    while (i >= 0 && phi[i] == nv - 1) phi[i--] = 0;
    if (i < 0) break;
    ++phi[i];
  }
  return out;
}

// Acceptance test for a two-action product candidate, recomputed from raw
// tables: the displayed multiplication must give a Latin table with some
// two-sided identity, the displayed J must be a bijection, and the defining
// identity must hold at m. Unit-shape hypotheses are deliberately not
// imposed here.
inline bool matched_action_candidate_works(int nr, int ns, const std::vector<int>& r_flat,
                                           const std::vector<int>& s_flat,
                                           const std::vector<int>& jr,
                                           const std::vector<int>& js,
                                           const std::vector<int>& phi,
                                           const std::vector<int>& psi, long long m) {
  const int n = nr * ns;
  auto phi_at = [&](int sv, int rv) { return phi[static_cast<std::size_t>(sv) * nr + rv]; };
  auto psi_at = [&](int sv, int rv) { return psi[static_cast<std::size_t>(sv) * nr + rv]; };
  auto idx = [&](int rv, int sv) { return rv * ns + sv; };
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int rv = 0; rv < nr; ++rv)
    for (int sv = 0; sv < ns; ++sv)
      for (int rp = 0; rp < nr; ++rp)
        for (int sp = 0; sp < ns; ++sp)
          flat[static_cast<std::size_t>(idx(rv, sv)) * n + idx(rp, sp)] =
              idx(r_flat[static_cast<std::size_t>(rv) * nr + phi_at(sv, rp)],
                  s_flat[static_cast<std::size_t>(psi_at(sv, rp)) * ns + sp]);
  for (int i = 0; i < n; ++i) {
    std::vector<char> rs(static_cast<std::size_t>(n), 0), cs(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) {
      if (rs[flat[static_cast<std::size_t>(i) * n + k]]) return false;
      rs[flat[static_cast<std::size_t>(i) * n + k]] = 1;
      if (cs[flat[static_cast<std::size_t>(k) * n + i]]) return false;
      cs[flat[static_cast<std::size_t>(k) * n + i]] = 1;
    }
  }
  bool has_identity = false;
  for (int e = 0; e < n && !has_identity; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = flat[static_cast<std::size_t>(e) * n + x] == x &&
           flat[static_cast<std::size_t>(x) * n + e] == x;
    has_identity = ok;
  }
  if (!has_identity) return false;
  std::vector<int> jim(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int rv = 0; rv < nr; ++rv)
    for (int sv = 0; sv < ns; ++sv) {
      const int im = idx(phi_at(js[sv], jr[rv]), psi_at(js[sv], jr[rv]));
      if (seen[im]) return false;
      seen[im] = 1;
      jim[idx(rv, sv)] = im;
    }
  return rst_holds(n, flat, jim, m, m + 1, m);
}

// ---- minimal JSON schema checker ----
// Supports the subset used by schema/report.schema.json: $ref into #/$defs,
// type, enum, required, properties, additionalProperties (boolean), items,
// and minimum. Returns an error string or nullopt on success.
inline std::optional<std::string> schema_error(const nlohmann::json& instance,
                                               const nlohmann::json& schema,
                                               const nlohmann::json& root,
                                               const std::string& path = "$") {
  using nlohmann::json;
  if (schema.contains("$ref")) {
    const std::string ref = schema["$ref"].get<std::string>();
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) return path + ": unsupported $ref " + ref;
    const std::string name = ref.substr(prefix.size());
    if (!root.contains("$defs") || !root["$defs"].contains(name))
      return path + ": missing $defs entry " + name;
    return schema_error(instance, root["$defs"][name], root, path);
  }
  if (schema.contains("type")) {
    auto matches = [&](const std::string& t) {
      if (t == "object") return instance.is_object();
      if (t == "array") return instance.is_array();
      if (t == "string") return instance.is_string();
      if (t == "integer") return instance.is_number_integer();
      if (t == "number") return instance.is_number();
      if (t == "boolean") return instance.is_boolean();
      if (t == "null") return instance.is_null();
      return false;
    };
    const auto& ty = schema["type"];
    bool ok = false;
    if (ty.is_string()) ok = matches(ty.get<std::string>());
    else
      for (const auto& t : ty) ok = ok || matches(t.get<std::string>());
    if (!ok) return path + ": type mismatch";
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& v : schema["enum"]) ok = ok || v == instance;
    if (!ok) return path + ": not in enum";
  }
  if (schema.contains("minimum") && instance.is_number()) {
    if (instance.get<double>() < schema["minimum"].get<double>())
      return path + ": below minimum";
  }
  if (instance.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!instance.contains(key.get<std::string>()))
          return path + ": missing required key " + key.get<std::string>();
    const bool closed = schema.contains("additionalProperties") &&
                        schema["additionalProperties"].is_boolean() &&
                        !schema["additionalProperties"].get<bool>();
    for (auto it = instance.begin(); it != instance.end(); ++it) {
      if (schema.contains("properties") && schema["properties"].contains(it.key())) {
        auto err = schema_error(it.value(), schema["properties"][it.key()], root,
                                path + "." + it.key());
        if (err) return err;
      } else if (closed) {
        return path + ": unexpected key " + it.key();
      }
    }
  }
  if (instance.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < instance.size(); ++i) {
      auto err = schema_error(instance[i], schema["items"], root,
                              path + "[" + std::to_string(i) + "]");
      if (err) return err;
    }
  }
  return std::nullopt;
}

}  // namespace oracle
