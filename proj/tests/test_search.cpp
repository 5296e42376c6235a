#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include <loopforge/cayley.hpp>
#include <loopforge/inverse.hpp>
#include <loopforge/presets.hpp>
#include <loopforge/products.hpp>
#include <loopforge/search.hpp>

#include "oracles.hpp"

using namespace loopforge;

namespace {

std::vector<std::vector<int>> phi_tables(const SearchResult<CocycleMap>& r) {
  std::vector<std::vector<int>> out;
  for (const auto& c : r.results) out.push_back(c.phi);
  return out;
}

CayleyTable subtraction_table(int n) {
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) flat[static_cast<std::size_t>(x) * n + y] = ((x - y) % n + n) % n;
  return CayleyTable(n, std::move(flat));
}

}  // namespace

TEST_CASE("normalized loop counts per order") {
  REQUIRE(count_loops(1) == 1);
  REQUIRE(count_loops(2) == 1);
  REQUIRE(count_loops(3) == 1);
  REQUIRE(count_loops(4) == 4);
  REQUIRE(count_loops(5) == 56);
  REQUIRE(count_loops(6) == 9408);
  for (int n = 1; n <= 5; ++n) REQUIRE(count_loops(n) == oracle::count_normalized_loops(n));
  REQUIRE_THROWS_AS(count_loops(7), ResourceError);
  REQUIRE_THROWS_AS(count_loops(0), TableError);
  REQUIRE_THROWS_AS(enumerate_loops(7), ResourceError);
  REQUIRE_THROWS_AS(enumerate_loops(-2), TableError);
}

TEST_CASE("predicates filter the walk") {
  REQUIRE(count_loops(5, [](const Loop& l) { return is_group(l.table()); }) == 6);
  REQUIRE(count_loops(4, [](const Loop& l) { return !is_associative(l.table()); }) == 0);
  REQUIRE(count_loops(5, [](const Loop& l) { return !is_associative(l.table()); }) == 50);
}

TEST_CASE("enumerated loops are normalized") {
  const auto loops = enumerate_loops(4);
  REQUIRE(loops.size() == 4);
  for (const auto& l : loops) {
    REQUIRE(l.delta() == 0);
    for (int x = 0; x < 4; ++x) {
      REQUIRE(l.at(0, x) == x);
      REQUIRE(l.at(x, 0) == x);
    }
  }
}

TEST_CASE("constraint registry and argument validation") {
  REQUIRE(cocycle_constraint_registry() ==
          std::vector<std::string>{"quasi-0", "quasi-I", "quasi-II"});
  const CayleyTable z3 = cyclic_group(3);
  const CayleyTable z2 = cyclic_group(2);
  REQUIRE_THROWS_WITH(search_cocycles(z3, z2, {"bogus"}),
                      "unknown cocycle constraint: bogus");
  REQUIRE_THROWS_WITH(search_cocycles(z3, z2, {}, SearchCaps{0, 0}),
                      "caps must be positive");
  REQUIRE_THROWS_WITH(search_cocycles(z3, z2, {}, SearchCaps{10, -1}),
                      "caps must be positive");
  // Inverse-based constraints need a group base.
  REQUIRE_THROWS_AS(search_cocycles(subtraction_table(3), z2, {"quasi-I"}), TableError);
}

TEST_CASE("pruned search equals the definitional odometer on every constraint set") {
  const CayleyTable z3 = cyclic_group(3);
  const CayleyTable z2 = cyclic_group(2);
  const std::vector<std::vector<std::string>> sets = {
      {}, {"quasi-0"}, {"quasi-I"}, {"quasi-II"}, {"quasi-0", "quasi-I", "quasi-II"}};
  const std::vector<long long> expected_counts{512, 16, 64, 32, 4};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto got = search_cocycles(z3, z2, sets[i]);
    REQUIRE(got.complete);
    REQUIRE(got.matched == expected_counts[i]);
    REQUIRE(phi_tables(got) == oracle::all_constrained_value_tables(3, 2, z3.flat(), sets[i]));
  }
}

TEST_CASE("fully constrained maps over the order-2 base") {
  const CayleyTable z2 = cyclic_group(2);
  REQUIRE(search_cocycles(z2, z2, {}).matched == 16);
  REQUIRE(search_cocycles(z2, z2, {"quasi-0"}).matched == 2);
  const auto both = search_cocycles(z2, z2, {"quasi-0", "quasi-I"});
  REQUIRE(both.matched == 1);
  REQUIRE(both.results[0].phi == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("materialization cap keeps counting while truncating results") {
  const CayleyTable z3 = cyclic_group(3);
  const CayleyTable z2 = cyclic_group(2);
  const auto full = search_cocycles(z3, z2, {});
  const auto capped = search_cocycles(z3, z2, {}, SearchCaps{4, 0});
  REQUIRE(capped.complete);
  REQUIRE(capped.matched == 512);
  REQUIRE(capped.results.size() == 4);
  for (int i = 0; i < 4; ++i) REQUIRE(capped.results[i].phi == full.results[i].phi);
}

TEST_CASE("a budget cut returns a prefix and reports incompleteness") {
  const CayleyTable z3 = cyclic_group(3);
  const CayleyTable z2 = cyclic_group(2);
  const auto full = search_cocycles(z3, z2, {});
  const auto cut = search_cocycles(z3, z2, {}, SearchCaps{1000000, 200});
  REQUIRE_FALSE(cut.complete);
  REQUIRE(cut.matched < full.matched);
  REQUIRE(cut.results.size() == static_cast<std::size_t>(cut.matched));
  for (std::size_t i = 0; i < cut.results.size(); ++i)
    REQUIRE(cut.results[i].phi == full.results[i].phi);

  const auto starved = search_cocycles(z3, z2, {}, SearchCaps{1000000, 1});
  REQUIRE_FALSE(starved.complete);
  REQUIRE(starved.matched == 0);
  REQUIRE(starved.results.empty());
}

TEST_CASE("action-pair search finds exactly the two order-6 structures") {
  const Loop r(cyclic_group(3));
  const Loop s(cyclic_group(2));
  const Permutation jr = right_inverse_permutation(r);
  const Permutation js = right_inverse_permutation(s);
  const auto found = search_matched_actions(r, jr, s, js, 1);
  REQUIRE(found.complete);
  REQUIRE(found.matched == 2);
  REQUIRE(found.results.size() == 2);
  REQUIRE(found.results[0].phi == std::vector<int>{0, 1, 2, 0, 1, 2});
  REQUIRE(found.results[0].psi == std::vector<int>{0, 0, 0, 1, 1, 1});
  REQUIRE(found.results[1].phi == std::vector<int>{0, 1, 2, 0, 2, 1});
  REQUIRE(found.results[1].psi == std::vector<int>{0, 0, 0, 1, 1, 1});
  REQUIRE_THROWS_WITH(search_matched_actions(r, jr, s, js, 1, SearchCaps{0, 0}),
                      "caps must be positive");
}

TEST_CASE("the unconstrained odometer accepts more pairs, all unit-shifted") {
  // A raw scan over every (phi, psi) accepts any assignment whose displayed
  // table is a loop with a bijective map satisfying the identity, identity
  // placement included. The searched hypotheses pin the identity to the
  // unit cells; filtering the raw hits by that shape must give the same set.
  const Loop r(cyclic_group(3));
  const Loop s(cyclic_group(2));
  const Permutation jr = right_inverse_permutation(r);
  const Permutation js = right_inverse_permutation(s);

  std::vector<std::pair<std::vector<int>, std::vector<int>>> accepted;
  std::vector<int> phi(6, 0), psi(6, 0);
  while (true) {
    if (oracle::matched_action_candidate_works(3, 2, r.table().flat(), s.table().flat(),
                                               jr.image(), js.image(), phi, psi, 1))
      accepted.emplace_back(phi, psi);
    int i = 5;
    while (i >= 0 && psi[i] == 1) psi[i--] = 0;
    if (i >= 0) {
      ++psi[i];
      continue;
    }
    i = 5;
    while (i >= 0 && phi[i] == 2) phi[i--] = 0;
    if (i < 0) break;
    ++phi[i];
  }
  REQUIRE(accepted.size() == 8);

  std::vector<std::pair<std::vector<int>, std::vector<int>>> unit_shaped;
  for (const auto& [p, q] : accepted) {
    bool ok = true;
    for (int sv = 0; sv < 2 && ok; ++sv)
      ok = p[static_cast<std::size_t>(sv) * 3 + 0] == 0 &&
           q[static_cast<std::size_t>(sv) * 3 + 0] == sv;
    for (int rv = 0; rv < 3 && ok; ++rv)
      ok = p[rv] == rv && q[rv] == 0;
    if (ok) unit_shaped.emplace_back(p, q);
  }

  const auto found = search_matched_actions(r, jr, s, js, 1);
  REQUIRE(unit_shaped.size() == found.results.size());
  for (std::size_t i = 0; i < unit_shaped.size(); ++i) {
    REQUIRE(unit_shaped[i].first == found.results[i].phi);
    REQUIRE(unit_shaped[i].second == found.results[i].psi);
  }
}

TEST_CASE("action-pair search at other m values") {
  const Loop r(cyclic_group(3));
  const Loop s(cyclic_group(2));
  const Permutation jr = right_inverse_permutation(r);
  const Permutation js = right_inverse_permutation(s);
  for (long long m : {0LL, 2LL}) {
    const auto found = search_matched_actions(r, jr, s, js, m);
    REQUIRE(found.matched == 1);
    REQUIRE(found.results[0].phi == std::vector<int>{0, 1, 2, 0, 1, 2});
    REQUIRE(found.results[0].psi == std::vector<int>{0, 0, 0, 1, 1, 1});
  }
  const Loop z2(cyclic_group(2));
  const auto square = search_matched_actions(z2, right_inverse_permutation(z2), z2,
                                             right_inverse_permutation(z2), 1);
  REQUIRE(square.matched == 1);
}

TEST_CASE("sampling is deterministic in the seed and validates its arguments") {
  const auto a = sample_loops(6, 5, 42);
  const auto b = sample_loops(6, 5, 42);
  REQUIRE(a.size() == 5);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);
  for (const auto& l : a) {
    REQUIRE(l.order() == 6);
    REQUIRE(l.delta() == 0);
    for (int x = 0; x < 6; ++x) REQUIRE(l.at(0, x) == x);
  }
  const auto c = sample_loops(5, 3);
  const auto d = sample_loops(5, 3, 1);
  for (std::size_t i = 0; i < c.size(); ++i) REQUIRE(c[i] == d[i]);
  REQUIRE_THROWS_AS(sample_loops(31, 1), ResourceError);
  REQUIRE_THROWS_AS(sample_loops(5, -1), TableError);
  REQUIRE_THROWS_AS(sample_loops(0, 1), TableError);
}

TEST_CASE("centrality of designated-element quasigroups") {
  REQUIRE(is_central_pique(Pique(subtraction_table(3), 0)));
  REQUIRE(is_central_pique(Pique(cyclic_group(5), 0)));
  // A twist by a non-automorphism breaks centrality.
  std::vector<int> twisted(16);
  const int alpha[4] = {0, 2, 1, 3};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      twisted[static_cast<std::size_t>(x) * 4 + y] = (alpha[x] + y) % 4;
  REQUIRE_FALSE(is_central_pique(Pique(CayleyTable(4, twisted), 0)));
  REQUIRE_FALSE(is_central_pique(Pique(symmetric_group_3(), 0)));
}
