#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <vector>

#include <loopforge/cayley.hpp>
#include <loopforge/cocycle.hpp>
#include <loopforge/inverse.hpp>
#include <loopforge/presets.hpp>
#include <loopforge/products.hpp>

#include "oracles.hpp"

using namespace loopforge;

namespace {

const ConditionReport& find_report(const std::vector<ConditionReport>& reports,
                                   const std::string& name) {
  for (const auto& r : reports)
    if (r.name == name) return r;
  FAIL("no report named " + name);
  return reports.front();
}

std::vector<std::string> failing_names(const std::vector<ConditionReport>& reports) {
  std::vector<std::string> out;
  for (const auto& r : reports)
    if (!r.ok) out.push_back(r.name);
  return out;
}

Permutation sigma_of(const CayleyTable& q) { return right_inverse_permutation(Loop(q)); }

// One-action pair on Z3 x Z2: the involution of Z2 acts on Z3 by negation.
const std::vector<int> kInversionPhi{0, 1, 2, 0, 2, 1};
const ActionPair kInversionPair{3, 2, kInversionPhi, {0, 0, 0, 1, 1, 1}};

}  // namespace

TEST_CASE("componentwise product table and permutation") {
  const CayleyTable z2 = cyclic_group(2);
  const CayleyTable z3 = cyclic_group(3);
  const CayleyTable prod = product_table(z2, z3);
  REQUIRE(is_abelian_group(prod));
  // An order-6 element makes it cyclic.
  REQUIRE(left_translation(prod, pair_index(1, 1, 3)).order() == 6);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 3; ++d)
          REQUIRE(prod.at(pair_index(a, b, 3), pair_index(c, d, 3)) ==
                  pair_index(z2.at(a, c), z3.at(b, d), 3));
  REQUIRE(sigma_of(prod) == product_permutation(sigma_of(z2), sigma_of(z3)));
  for (int p = 0; p < 12; ++p)
    for (int b = 0; b < 4; ++b)
      REQUIRE(pair_index(pair_split(p, 4).first, pair_split(p, 4).second, 4) == p);
}

TEST_CASE("direct product finds the least common valid m") {
  const CayleyTable s3 = symmetric_group_3();
  const CayleyTable z2 = cyclic_group(2);
  const DirectProductResult res = direct_product(s3, sigma_of(s3), z2, sigma_of(z2));
  REQUIRE(res.h1 == 2);
  REQUIRE(res.h2 == 1);
  REQUIRE(res.residues1 == std::vector<int>{1});
  REQUIRE(res.residues2 == std::vector<int>{0});
  REQUIRE(res.valid_m == 1);
  REQUIRE(is_m_inverse(res.table, res.j, *res.valid_m));
  // The product is m-inverse exactly when both factors are.
  for (long long m = -3; m <= 3; ++m)
    REQUIRE(is_m_inverse(res.table, res.j, m) ==
            (is_m_inverse(s3, sigma_of(s3), m) && is_m_inverse(z2, sigma_of(z2), m)));
}

TEST_CASE("a factor with no valid residue blocks the product") {
  const CayleyTable s3 = symmetric_group_3();
  const CayleyTable z5 = cyclic_group(5);
  const Permutation doubling({0, 2, 4, 1, 3});
  const DirectProductResult res = direct_product(s3, sigma_of(s3), z5, doubling);
  REQUIRE(res.h1 == 2);
  REQUIRE(res.h2 == 1);
  REQUIRE(res.residues2.empty());
  REQUIRE_FALSE(res.valid_m.has_value());
  REQUIRE_THROWS_AS(direct_product(s3, sigma_of(s3), z5, Permutation::identity(3)),
                    TableError);
}

TEST_CASE("triple combination requires matching differences and congruences") {
  const auto combined = combine_rst(RstTriple{1, 2, 1}, 2, RstTriple{0, 1, 0}, 3);
  REQUIRE(combined.has_value());
  REQUIRE(combined->r == 3);
  REQUIRE(combined->s == 4);
  REQUIRE(combined->t == 3);
  REQUIRE_FALSE(combine_rst(RstTriple{1, 2, 1}, 2, RstTriple{0, 2, 0}, 3).has_value());
  REQUIRE_FALSE(combine_rst(RstTriple{1, 2, 1}, 2, RstTriple{0, 1, 0}, 2).has_value());
}

TEST_CASE("semidirect product of groups through automorphisms") {
  const CayleyTable z2 = cyclic_group(2);
  const CayleyTable z3 = cyclic_group(3);
  const Permutation id3 = Permutation::identity(3);
  const Permutation neg3({0, 2, 1});
  const CayleyTable sd = semidirect_group_theta(z2, z3, {id3, neg3});
  REQUIRE(sd.order() == 6);
  REQUIRE(is_group(sd));
  REQUIRE_FALSE(is_commutative(sd));

  REQUIRE_THROWS_WITH(semidirect_group_theta(z3, z2, {id3, neg3}),
                      "theta must assign a permutation to every element of G");
  REQUIRE_THROWS_WITH(semidirect_group_theta(z2, z3, {id3, Permutation::identity(2)}),
                      "theta value has wrong degree");
  REQUIRE_THROWS_AS(semidirect_group_theta(z2, z3, {id3, Permutation({1, 0, 2})}),
                    ConditionViolation);
}

TEST_CASE("deviation closure of a group is trivial") {
  const TransassociantGroup t = transassociant_group(symmetric_group_3());
  REQUIRE(t.elements.size() == 1);
  REQUIRE(t.elements[0].is_identity());
  REQUIRE(t.find(Permutation::identity(6)) == 0);
}

TEST_CASE("deviation closure of the twisted loop") {
  const auto odd = twisted_z3z2_loop();
  const TransassociantGroup t = transassociant_group(odd.loop.table());
  REQUIRE(t.elements.size() == 4);
  bool has_id = false;
  for (const auto& f : t.elements) {
    has_id = has_id || f.is_identity();
    for (const auto& g : t.elements) REQUIRE(t.find(f.compose(g)) >= 0);
  }
  REQUIRE(has_id);
  REQUIRE_THROWS_AS(transassociant_group(odd.loop.table(), 2), ResourceError);
}

TEST_CASE("enveloping product of a group is the group itself") {
  const SabininProduct sp = sabinin_product(symmetric_group_3());
  REQUIRE(sp.table == symmetric_group_3());
}

TEST_CASE("enveloping product of the twisted loop is an order-24 group") {
  const auto odd = twisted_z3z2_loop();
  const SabininProduct sp = sabinin_product(odd.loop.table());
  REQUIRE(sp.table.order() == 24);
  REQUIRE(is_group(sp.table));
  REQUIRE(sp.h.elements.size() == 4);
  REQUIRE_THROWS_AS(sabinin_product(odd.loop.table(), 3), ResourceError);
}

TEST_CASE("one-action twisted product: odd m builds, even m needs rigidity") {
  const Loop r(cyclic_group(3));
  const Loop s(cyclic_group(2));
  const Permutation jr = sigma_of(r.table());
  const Permutation js = sigma_of(s.table());

  const SemidirectCheck good = check_semidirect_m_inverse(r, jr, s, js, kInversionPhi, 1);
  REQUIRE(good.loop.has_value());
  REQUIRE(good.j.has_value());
  REQUIRE(all_ok(good.reports));
  REQUIRE(good.h1 == 1);
  REQUIRE(good.h2 == 1);
  REQUIRE(is_group(good.loop->table()));
  REQUIRE_FALSE(is_commutative(good.loop->table()));
  REQUIRE(is_m_inverse(*good.loop, *good.j, 1));

  const SemidirectCheck bad = check_semidirect_m_inverse(r, jr, s, js, kInversionPhi, 2);
  REQUIRE_FALSE(bad.loop.has_value());
  REQUIRE(failing_names(bad.reports) == std::vector<std::string>{"m-inverse-cond"});
  REQUIRE_THROWS_AS(semidirect_m_inverse(r, jr, s, js, kInversionPhi, 2),
                    ConditionViolation);

  // A trivial action at even m is just the direct product, which passes.
  const std::vector<int> trivial_phi{0, 1, 2, 0, 1, 2};
  const SemidirectCheck direct = check_semidirect_m_inverse(r, jr, s, js, trivial_phi, 2);
  REQUIRE(direct.loop.has_value());
  REQUIRE(direct.loop->table() == product_table(r.table(), s.table()));
  REQUIRE(is_m_inverse(*direct.loop, *direct.j, 2));

  REQUIRE_THROWS_WITH(check_semidirect_m_inverse(r, jr, s, js, {0, 1, 2}, 1),
                      "phi table must be s_order x r_order");
  REQUIRE_THROWS_WITH(check_semidirect_m_inverse(r, jr, s, js, std::vector<int>(6, 7), 1),
                      "phi value out of range");
}

TEST_CASE("two-action twisted product agrees with the one-action special case") {
  const Loop r(cyclic_group(3));
  const Loop s(cyclic_group(2));
  const Permutation jr = sigma_of(r.table());
  const Permutation js = sigma_of(s.table());

  const MatchedPairResult two = matched_pair_loop(r, jr, s, js, kInversionPair, 1);
  const SemidirectResult one = semidirect_m_inverse(r, jr, s, js, kInversionPhi, 1);
  REQUIRE(two.loop.table() == one.loop.table());
  REQUIRE(two.j == one.j);
  REQUIRE(two.h1 == 1);
  REQUIRE(two.h2 == 1);

  const MatchedPairResult trivial =
      matched_pair_loop(r, jr, s, js, ActionPair::trivial(3, 2), 1);
  REQUIRE(trivial.loop.table() == product_table(r.table(), s.table()));
  REQUIRE(trivial.j == product_permutation(jr, js));
}

TEST_CASE("two-action twisted product rejects even m with a nontrivial pair") {
  const Loop r(cyclic_group(3));
  const Loop s(cyclic_group(2));
  const MatchedPairCheck bad = check_matched_pair(r, sigma_of(r.table()), s,
                                                  sigma_of(s.table()), kInversionPair, 2);
  REQUIRE_FALSE(bad.loop.has_value());
  REQUIRE(failing_names(bad.reports) ==
          std::vector<std::string>{"m-inverse-cond-matched"});
  REQUIRE_THROWS_AS(
      matched_pair_loop(r, sigma_of(r.table()), s, sigma_of(s.table()), kInversionPair, 2),
      ConditionViolation);
}

TEST_CASE("action pair shape validation") {
  REQUIRE_THROWS_WITH(check_action_pair_shape(ActionPair{3, 2, {0, 1, 2}, {0, 0, 0}}),
                      "action pair tables must be s_order x r_order");
  ActionPair bad = ActionPair::trivial(3, 2);
  bad.phi[0] = 9;
  REQUIRE_THROWS_WITH(check_action_pair_shape(bad), "phi value out of range");
  bad = ActionPair::trivial(3, 2);
  bad.psi[0] = 9;
  REQUIRE_THROWS_WITH(check_action_pair_shape(bad), "psi value out of range");
}

TEST_CASE("mutual group actions build a group double product") {
  const LambdaInputs in = lambda_s3_inputs();
  REQUIRE(all_ok(check_group_matched_pair(in.g, in.h, in.actions)));
  const CayleyTable k = group_matched_pair(in.g, in.h, in.actions);
  REQUIRE(k.order() == 6);
  REQUIRE(is_group(k));
  REQUIRE_FALSE(is_commutative(k));

  // Collapsing one slice of |> breaks the left-action law.
  GroupActionPair broken = in.actions;
  for (int x = 0; x < 3; ++x) broken.tri[static_cast<std::size_t>(1) * 3 + x] = 0;
  REQUIRE_FALSE(find_report(check_group_matched_pair(in.g, in.h, broken),
                            "tri-left-action")
                    .ok);
  REQUIRE_THROWS_AS(group_matched_pair(in.g, in.h, broken), ConditionViolation);

  GroupActionPair misshapen = in.actions;
  misshapen.tri.pop_back();
  REQUIRE_THROWS_WITH(check_group_matched_pair(in.g, in.h, misshapen),
                      "group action pair tables must be h_order x g_order");
}

TEST_CASE("two-stage example bundle") {
  const LambdaBundle b = lambda_s3_bundle();
  REQUIRE(b.k.order() == 6);
  REQUIRE(b.q.order() == 24);
  REQUIRE(b.r_factor.loop.order() == 6);
  REQUIRE(b.s_factor.loop.order() == 4);
  REQUIRE(b.rs.order() == 24);
  REQUIRE(find_report(b.diagnostics, "lambda-isomorphism").ok);
  REQUIRE(is_m_inverse(b.q, b.j_q, 1));
  REQUIRE(is_m_inverse(b.rs, b.j_rs, 1));

  // theta is a bijective homomorphism from the twisted product onto the
  // extension of the double product.
  std::vector<char> seen(static_cast<std::size_t>(b.q.order()), 0);
  for (int v : b.theta) {
    REQUIRE((v >= 0 && v < b.q.order()));
    REQUIRE_FALSE(seen[v]);
    seen[v] = 1;
  }
  for (int p = 0; p < b.rs.order(); ++p)
    for (int pp = 0; pp < b.rs.order(); ++pp)
      REQUIRE(b.q.at(b.theta[p], b.theta[pp]) == b.theta[b.rs.at(p, pp)]);
}

TEST_CASE("two-stage example rejects the literal mixed invariance gate") {
  REQUIRE_THROWS_AS(lambda_s3_bundle(true), ConditionViolation);
}
