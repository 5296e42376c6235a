// Acceptance harness: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <loopforge/cayley.hpp>
#include <loopforge/cocycle.hpp>
#include <loopforge/factorization.hpp>
#include <loopforge/hopf.hpp>
#include <loopforge/inverse.hpp>
#include <loopforge/presets.hpp>
#include <loopforge/products.hpp>
#include <loopforge/search.hpp>

using namespace loopforge;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome pass(std::string detail = {}) { return {true, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

// 1. Groups with J = inversion: odd m always, even m exactly when abelian.
Outcome group_baseline() {
  const std::vector<std::string> groups{"z1", "z2", "z3",    "z4", "z5", "z6",
                                        "z7", "z8", "klein", "s3", "d4", "q8"};
  for (const auto& name : groups) {
    const auto p = find_preset(name);
    if (!p || !is_group(p->loop.table())) return fail("missing group preset " + name);
    const bool abelian = is_commutative(p->loop.table());
    for (long long m = -3; m <= 3; ++m) {
      const bool expect = (m % 2 != 0) || abelian;
      if (is_m_inverse(p->loop, p->j, m) != expect)
        return fail(name + " at m=" + std::to_string(m));
    }
  }
  return pass("12 groups, m in [-3,3]");
}

// 2. The cocycle condition is exactly associativity of the extension.
Outcome cocycle_is_associativity() {
  const CayleyTable g = cyclic_group(3);
  const CayleyTable v = cyclic_group(2);
  int cocycles = 0;
  for (int code = 0; code < 512; ++code) {
    CocycleMap c{3, 2, {}, std::nullopt};
    for (int bit = 0; bit < 9; ++bit) c.phi.push_back((code >> bit) & 1);
    const bool flat = is_2cocycle(g, v, c);
    if (flat != is_associative(cocycle_extension(g, v, c)))
      return fail("map code " + std::to_string(code));
    cocycles += flat;
  }
  if (cocycles != 8) return fail("expected 8 cocycles, saw " + std::to_string(cocycles));
  return pass("512 maps, 8 cocycles");
}

// 3. Every admissible map yields a loop with the odd residue class mod 2:
//    the defining identity holds at m in {-3,-1,1,3}, cross-checked unpruned.
Outcome odd_invertibility() {
  const CayleyTable g = cyclic_group(3);
  const CayleyTable v = cyclic_group(2);
  const std::vector<std::string> names{"quasi-0", "quasi-I", "quasi-II"};
  const auto found = search_cocycles(g, v, names, {});
  if (!found.complete || found.matched != 4)
    return fail("pruned search returned " + std::to_string(found.matched));

  std::vector<std::vector<int>> brute;
  for (int code = 0; code < 512; ++code) {  // high bit first = lex order on the map
    CocycleMap c{3, 2, {}, std::nullopt};
    for (int bit = 8; bit >= 0; --bit) c.phi.push_back((code >> bit) & 1);
    if (all_ok(check_odd_invertible(g, v, c))) brute.push_back(c.phi);
  }
  if (brute.size() != found.results.size()) return fail("unpruned enumeration disagrees");
  for (std::size_t i = 0; i < brute.size(); ++i)
    if (brute[i] != found.results[i].phi) return fail("unpruned enumeration disagrees");

  for (const auto& c : found.results) {
    const OddInvertibleLoop built = odd_invertible_loop(g, v, c);
    for (long long m : {-3, -1, 1, 3})
      if (!is_m_inverse(built.loop, built.j, m))
        return fail("m=" + std::to_string(m) + " fails on an admissible map");
  }
  return pass("4 maps, odd class in [-3,3]");
}

// 4. Indices solved by crt_solve make direct products pass the identity scan.
Outcome direct_product_indices() {
  struct Entry {
    CayleyTable q;
    Permutation j;
    long long m;
    long long h;
  };
  std::vector<Entry> pool;
  const auto consider = [&](const Loop& l) {
    Permutation j = right_inverse_permutation(l);
    const int h = aut_power_order(l.table(), j);
    const auto res = inverse_residues(l.table(), j, h);
    if (!res.empty()) pool.push_back({l.table(), std::move(j), res.front(), h});
  };
  for (int n = 4; n <= 5; ++n)
    for (const Loop& l : enumerate_loops(n)) consider(l);
  const auto six = enumerate_loops(6);
  for (std::size_t i = 0; i < six.size(); i += 97) consider(six[i]);
  if (pool.size() != 47) return fail("corpus pool changed: " + std::to_string(pool.size()));

  int none_cases = 0;
  for (int i = 0; i < 20; ++i) {
    const Entry& a = pool[(static_cast<std::size_t>(i) * 131) % pool.size()];
    const Entry& b = pool[(static_cast<std::size_t>(i) * 137 + 61) % pool.size()];
    const auto mm = crt_solve(a.m, a.h, b.m, b.h);
    if (!mm) {
      // Report-only: no m in [0, lcm) satisfies both congruences.
      ++none_cases;
      const long long l = std::lcm(a.h, b.h);
      for (long long m = 0; m < l; ++m)
        if (m % a.h == a.m % a.h && m % b.h == b.m % b.h)
          return fail("crt_solve missed m=" + std::to_string(m));
      continue;
    }
    const CayleyTable prod = product_table(a.q, b.q);
    const Permutation pj = product_permutation(a.j, b.j);
    if (!is_m_inverse(prod, pj, *mm))
      return fail("pair " + std::to_string(i) + " fails at m=" + std::to_string(*mm));
  }
  return pass("20 pairs, none-branch vacuous (" + std::to_string(none_cases) + " seen)");
}

// 5. At m = 2 only the trivial action pair survives the search.
Outcome even_m_rigidity() {
  const std::vector<std::pair<int, int>> shapes{{2, 2}, {3, 2}, {3, 3}};
  for (const auto& [nr, ns] : shapes) {
    const Loop r((cyclic_group(nr)));
    const Loop s((cyclic_group(ns)));
    const auto found = search_matched_actions(r, right_inverse_permutation(r), s,
                                              right_inverse_permutation(s), 2, {});
    if (!found.complete) return fail("search was cut short");
    const ActionPair trivial = ActionPair::trivial(nr, ns);
    if (found.matched != 1 || found.results[0].phi != trivial.phi ||
        found.results[0].psi != trivial.psi)
      return fail("order (" + std::to_string(nr) + "," + std::to_string(ns) + ") returned " +
                  std::to_string(found.matched) + " pairs");
  }
  return pass("3 shapes, trivial pair only");
}

// 6. The bundled order-24 example factors back into its own construction.
Outcome lambda_round_trip() {
  const LambdaBundle b = lambda_s3_bundle();
  if (b.q.order() != 24) return fail("extension order " + std::to_string(b.q.order()));
  if (!is_m_inverse(b.q, b.j_q, 1)) return fail("extension is not 1-inverse");
  const FactorizationWitness w =
      exact_factorization(b.q, b.j_q, {0, 2, 8, 10, 16, 18}, {0, 1, 4, 5}, 1);
  if (!w.ok || !w.bijective) return fail("factorization rejected the bundle");
  if (w.actions.phi != b.actions.phi || w.actions.psi != b.actions.psi)
    return fail("recovered actions differ");
  if (w.theta != b.theta) return fail("pair bijection differs");
  if (!w.rebuilt || w.rebuilt->table() != b.rs.table() || !w.rebuilt_j ||
      *w.rebuilt_j != b.j_rs)
    return fail("rebuilt twisted product is not bit-exact");
  return pass("order 24, actions and tables identical");
}

// 7. Literal display: the linear-level verdict at m equals the set-level one.
Outcome linearization_equivalence() {
  std::vector<Loop> corpus;
  for (int n = 1; n <= 5; ++n)
    for (Loop& l : enumerate_loops(n)) corpus.push_back(std::move(l));
  for (Loop& l : sample_loops(6, 200, 1)) corpus.push_back(std::move(l));

  long long checked = 0, disagree = 0;
  std::string first;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Loop& q = corpus[i];
    const Permutation j = right_inverse_permutation(q);
    const HopfQuasigroupData kq = group_algebra(q, j);
    for (long long m = -2; m <= 2; ++m) {
      ++checked;
      const bool linear = all_ok(verify_hopf_quasigroup(kq, m));
      const bool set_level = is_m_inverse(q, j, m);
      if (linear != set_level) {
        ++disagree;
        if (first.empty())
          first = "order " + std::to_string(q.order()) + " loop #" + std::to_string(i) +
                  " at m=" + std::to_string(m);
      }
    }
  }
  if (disagree != 0)
    return fail(std::to_string(disagree) + " of " + std::to_string(checked) +
                " checks disagree; first: " + first);
  return pass(std::to_string(checked) + " checks agree");
}

// 8. Linear and set-level matched pairs share structure constants at m = 1,
//    and the antipode factors across the pair on all basis elements.
Outcome hopf_matched_pairs() {
  const std::vector<std::pair<int, int>> shapes{{2, 2}, {3, 2}};
  int pairs = 0;
  for (const auto& [nr, ns] : shapes) {
    const Loop r((cyclic_group(nr)));
    const Loop s((cyclic_group(ns)));
    const Permutation jr = right_inverse_permutation(r);
    const Permutation js = right_inverse_permutation(s);
    const auto found = search_matched_actions(r, jr, s, js, 1, {});
    if (!found.complete || found.matched == 0) return fail("action search came up empty");
    for (const ActionPair& a : found.results) {
      ++pairs;
      const auto check = check_hopf_matched_pair(group_algebra(r, jr), group_algebra(s, js),
                                                 linearize_actions(a), 1);
      if (!check.data) return fail("linear pair rejected an admissible action pair");
      if (*check.data != linearize_matched_pair(r, jr, s, js, a, 1))
        return fail("structure constants differ");
      bool antipode_ok = false;
      for (const auto& rep : check.reports)
        if (rep.name == "lemma-antipode") antipode_ok = rep.ok;
      if (!antipode_ok) return fail("antipode does not factor across the pair");
    }
  }
  return pass(std::to_string(pairs) + " action pairs, constants identical");
}

// 9. Factorizing a matched-pair product recovers the inputs exactly.
Outcome factorization_inverse() {
  int cases = 0;
  for (int nr = 1; nr <= 3; ++nr)
    for (int ns = 1; ns <= 3; ++ns) {
      const Loop r((cyclic_group(nr)));
      const Loop s((cyclic_group(ns)));
      const Permutation jr = right_inverse_permutation(r);
      const Permutation js = right_inverse_permutation(s);
      for (long long m = -2; m <= 2; ++m) {
        const auto found = search_matched_actions(r, jr, s, js, m, {});
        if (!found.complete) return fail("search was cut short");
        for (const ActionPair& a : found.results) {
          ++cases;
          const MatchedPairResult mp = matched_pair_loop(r, jr, s, js, a, m);
          std::vector<int> r_set, s_set;
          for (int i = 0; i < nr; ++i) r_set.push_back(i * ns);
          for (int k = 0; k < ns; ++k) s_set.push_back(k);
          const FactorizationWitness w =
              exact_factorization(mp.loop, mp.j, r_set, s_set, m);
          if (!w.ok) return fail("factorization rejected its own product");
          if (w.actions.phi != a.phi || w.actions.psi != a.psi)
            return fail("recovered actions differ");
          if (!w.rebuilt || w.rebuilt->table() != mp.loop.table() || !w.rebuilt_j ||
              *w.rebuilt_j != mp.j)
            return fail("rebuilt product differs");
        }
      }
    }
  return pass(std::to_string(cases) + " admissible tuples recovered");
}

bool run_criterion(int number, double limit_seconds, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = fail(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = o.ok;
  std::string detail = o.detail;
  if (ok && secs >= limit_seconds) {
    ok = false;
    detail = "over the " + std::to_string(limit_seconds) + "s budget";
  }
  std::printf("criterion %d: %s (%.2fs)%s%s\n", number, ok ? "PASS" : "FAIL", secs,
              detail.empty() ? "" : " - ", detail.c_str());
  return ok;
}

}  // namespace

int main() {
  int failed = 0;
  failed += !run_criterion(1, 1.0, group_baseline);
  failed += !run_criterion(2, 1.0, cocycle_is_associativity);
  failed += !run_criterion(3, 1.0, odd_invertibility);
  failed += !run_criterion(4, 10.0, direct_product_indices);
  failed += !run_criterion(5, 30.0, even_m_rigidity);
  failed += !run_criterion(6, 5.0, lambda_round_trip);
  failed += !run_criterion(7, 60.0, linearization_equivalence);
  failed += !run_criterion(8, 30.0, hopf_matched_pairs);
  failed += !run_criterion(9, 30.0, factorization_inverse);
  if (failed) std::printf("%d of 9 criteria failed\n", failed);
  return failed ? 1 : 0;
}
