#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

#include <loopforge/cayley.hpp>
#include <loopforge/inverse.hpp>
#include <loopforge/presets.hpp>

#include "oracles.hpp"

using namespace loopforge;

TEST_CASE("the two inverse maps agree with group inversion") {
  for (const auto& q : {cyclic_group(5), symmetric_group_3(), klein_four()}) {
    const Loop l(q);
    const Permutation inv = inversion_permutation(q);
    REQUIRE(right_inverse_permutation(l) == inv);
    REQUIRE(left_inverse_permutation(l) == inv);
  }
}

TEST_CASE("inverse-property identities agree with a direct scan") {
  for (const auto& q : {symmetric_group_3(), cyclic_group(6), klein_four()}) {
    const Loop l(q);
    const Permutation j = right_inverse_permutation(l);
    for (long long m = -4; m <= 4; ++m)
      REQUIRE(is_m_inverse(q, j, m) ==
              oracle::rst_holds(q.order(), q.flat(), j.image(), m, m + 1, m));
    REQUIRE(is_wip(q, j) == oracle::rst_holds(q.order(), q.flat(), j.image(), -1, 0, -1));
    REQUIRE(is_ci(q, j) == oracle::rst_holds(q.order(), q.flat(), j.image(), 0, 1, 0));
    REQUIRE(is_wip(l, j) == is_rst_inverse(l, j, RstTriple{-1, 0, -1}));
    REQUIRE(is_ci(l, j) == is_rst_inverse(l, j, RstTriple{0, 1, 0}));
  }
}

TEST_CASE("a failed triple comes with a checkable witness") {
  const CayleyTable s3 = symmetric_group_3();
  const Permutation j = right_inverse_permutation(Loop(s3));
  const auto w = rst_witness(s3, j, RstTriple{0, 1, 0});
  REQUIRE(w.has_value());
  const auto [x, y] = *w;
  REQUIRE(s3.at(s3.at(x, y), j(x)) != y);
  REQUIRE_FALSE(rst_witness(s3, j, RstTriple{1, 2, 1}).has_value());
  REQUIRE_THROWS_AS(rst_witness(s3, Permutation::identity(4), RstTriple{0, 1, 0}),
                    TableError);
}

TEST_CASE("least multiplicative power of the inverse map") {
  const CayleyTable s3 = symmetric_group_3();
  const Permutation sigma = right_inverse_permutation(Loop(s3));
  REQUIRE(aut_power_order(s3, sigma) == 2);
  REQUIRE(aut_power_order(cyclic_group(5),
                          right_inverse_permutation(Loop(cyclic_group(5)))) == 1);
  REQUIRE(aut_power_order(s3, Permutation::identity(6)) == 1);

  // Doubling is an automorphism of the cyclic group of order 5.
  REQUIRE(aut_power_order(cyclic_group(5), Permutation({0, 2, 4, 1, 3})) == 1);

  // Definitional cross-check: least k >= 1 with J^k multiplicative.
  const auto probe = [](const CayleyTable& q, const Permutation& j) {
    for (int k = 1;; ++k)
      if (is_automorphism(q, j.power(k))) return k;
  };
  const auto odd = twisted_z3z2_loop();
  REQUIRE(aut_power_order(odd.loop.table(), odd.j) ==
          probe(odd.loop.table(), odd.j));
  REQUIRE(probe(s3, sigma) == 2);
}

TEST_CASE("classification of the symmetric group of degree 3") {
  const Loop s3(symmetric_group_3());
  const ClassifyReport rep = classify(s3, -3, 3);
  REQUIRE(rep.order == 6);
  REQUIRE(rep.h == 2);
  REQUIRE(rep.valid_m == std::vector<long long>{-3, -1, 1, 3});
  REQUIRE(rep.residues == std::vector<int>{1});
  REQUIRE(rep.wip);
  REQUIRE_FALSE(rep.ci);
  REQUIRE(rep.window_lo == -3);
  REQUIRE(rep.window_hi == 3);
}

TEST_CASE("classification of the twisted order-6 loop") {
  const auto odd = twisted_z3z2_loop();
  const ClassifyReport rep = classify(odd.loop, odd.j, -3, 3);
  REQUIRE(rep.h == 2);
  REQUIRE(rep.residues == std::vector<int>{1});
  REQUIRE(rep.valid_m == std::vector<long long>{-3, -1, 1, 3});
}

TEST_CASE("a multiplicative non-inverse map yields no valid m at all") {
  const CayleyTable z5 = cyclic_group(5);
  const ClassifyReport rep = classify(z5, Permutation({0, 2, 4, 1, 3}), -4, 4);
  REQUIRE(rep.h == 1);
  REQUIRE(rep.valid_m.empty());
  REQUIRE(rep.residues.empty());
}

TEST_CASE("classification rejects an empty window") {
  REQUIRE_THROWS_AS(classify(Loop(cyclic_group(3)), 2, 1), std::invalid_argument);
}

TEST_CASE("valid m is stable under shifting by multiples of h") {
  for (const auto& name : preset_names()) {
    const PresetLoop p = find_preset(name).value();
    const int h = aut_power_order(p.loop.table(), p.j);
    for (long long m = -3; m <= 3; ++m)
      for (long long u : {-2LL, -1LL, 1LL, 2LL})
        REQUIRE(is_m_inverse(p.loop, p.j, m) == is_m_inverse(p.loop, p.j, m + u * h));
  }
}

TEST_CASE("congruence solving handles pinned cases") {
  REQUIRE(crt_solve(1, 2, 1, 2) == 1);
  REQUIRE_FALSE(crt_solve(1, 2, 2, 2).has_value());
  REQUIRE(crt_solve(1, 2, 0, 3) == 3);
  REQUIRE_FALSE(crt_solve(1, 2, 0, 2).has_value());
  REQUIRE(crt_solve(0, 1, 0, 1) == 0);
  REQUIRE(crt_solve(-1, 4, 1, 6) == 7);
  REQUIRE_THROWS_AS(crt_solve(0, 0, 0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(crt_solve(0, 2, 0, -3), std::invalid_argument);
}

TEST_CASE("congruence solving matches a full residue scan") {
  for (long long h1 = 1; h1 <= 12; ++h1)
    for (long long h2 = 1; h2 <= 12; ++h2)
      for (long long m1 = -5; m1 <= 5; ++m1)
        for (long long m2 = -5; m2 <= 5; ++m2) {
          const auto got = crt_solve(m1, h1, m2, h2);
          const auto want = oracle::crt_scan(m1, h1, m2, h2);
          REQUIRE(got == want);
        }
}
