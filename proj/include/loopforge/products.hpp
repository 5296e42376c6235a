#pragma once

// Product constructions on finite quasigroups and loops: direct products with
// congruence-solved exponents, the theta-twisted and translation-twisted
// semidirect products, the one-action and two-action twisted products carrying
// an inverse permutation, the group double product built from a pair of mutual
// actions, and the two-stage extension combining that double product with a
// quasi-cocycle.

#include <loopforge/cayley.hpp>
#include <loopforge/cocycle.hpp>
#include <loopforge/conditions.hpp>
#include <loopforge/inverse.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loopforge {

// Pair encoding used by every product in this header: (a, b) with b drawn
// from a carrier of size b_order maps to a * b_order + b.
inline int pair_index(int a, int b, int b_order) { return a * b_order + b; }

inline std::pair<int, int> pair_split(int p, int b_order) {
    return {p / b_order, p % b_order};
}

inline CayleyTable product_table(const CayleyTable& q1, const CayleyTable& q2) {
    const int n1 = q1.order(), n2 = q2.order(), n = n1 * n2;
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int a1 = 0; a1 < n1; ++a1)
        for (int a2 = 0; a2 < n2; ++a2)
            for (int b1 = 0; b1 < n1; ++b1)
                for (int b2 = 0; b2 < n2; ++b2) {
                    const int a = pair_index(a1, a2, n2);
                    const int b = pair_index(b1, b2, n2);
                    flat[static_cast<std::size_t>(a) * n + b] =
                        pair_index(q1.at(a1, b1), q2.at(a2, b2), n2);
                }
    return CayleyTable(n, std::move(flat));
}

inline Permutation product_permutation(const Permutation& j1, const Permutation& j2) {
    const int n1 = j1.degree(), n2 = j2.degree();
    std::vector<int> img(static_cast<std::size_t>(n1) * n2);
    for (int a1 = 0; a1 < n1; ++a1)
        for (int a2 = 0; a2 < n2; ++a2)
            img[pair_index(a1, a2, n2)] = pair_index(j1(a1), j2(a2), n2);
    return Permutation(std::move(img));
}

// Minimal non-negative residues rho in [0, h) for which the m-inverse
// identity holds with m = rho. Because J^h is multiplicative, validity of m
// depends only on m mod h.
inline std::vector<int> inverse_residues(const CayleyTable& q, const Permutation& j, int h) {
    std::vector<int> out;
    for (int rho = 0; rho < h; ++rho)
        if (is_m_inverse(q, j, rho)) out.push_back(rho);
    return out;
}

struct DirectProductResult {
    CayleyTable table;
    Permutation j;
    std::optional<long long> valid_m;  // least non-negative solution, if any
    int h1 = 1;
    int h2 = 1;
    std::vector<int> residues1;  // valid residues mod h1 of the first factor
    std::vector<int> residues2;
};

inline DirectProductResult direct_product(const CayleyTable& q1, const Permutation& j1,
                                          const CayleyTable& q2, const Permutation& j2) {
    if (j1.degree() != q1.order() || j2.degree() != q2.order())
        throw TableError("factor permutation degree mismatch");
    DirectProductResult out{product_table(q1, q2), product_permutation(j1, j2),
                            std::nullopt, 1, 1, {}, {}};
    out.h1 = aut_power_order(q1, j1);
    out.h2 = aut_power_order(q2, j2);
    out.residues1 = inverse_residues(q1, j1, out.h1);
    out.residues2 = inverse_residues(q2, j2, out.h2);
    for (int m1 : out.residues1)
        for (int m2 : out.residues2)
            if (auto m = crt_solve(m1, out.h1, m2, out.h2))
                if (!out.valid_m || *m < *out.valid_m) out.valid_m = *m;
    return out;
}

// Combine factor triples into a product triple: requires the componentwise
// differences r - r_i = s - s_i = t - t_i to be a common multiple u_i * h_i,
// which forces r1 - s1 = r2 - s2 and r1 - t1 = r2 - t2, and then reduces to
// the two-congruence system on r alone.
inline std::optional<RstTriple> combine_rst(const RstTriple& a, int h1,
                                            const RstTriple& b, int h2) {
    if (a.r - a.s != b.r - b.s || a.r - a.t != b.r - b.t) return std::nullopt;
    auto r = crt_solve(a.r, h1, b.r, h2);
    if (!r) return std::nullopt;
    return RstTriple{*r, *r + (a.s - a.r), *r + (a.t - a.r)};
}

// (g, h)(g', h') = (gg', theta(g')(h) * h') for a map theta sending each
// element of G to an automorphism of H; theta need not be a homomorphism.
inline CayleyTable semidirect_group_theta(const CayleyTable& g, const CayleyTable& h,
                                          const std::vector<Permutation>& theta) {
    if (static_cast<int>(theta.size()) != g.order())
        throw TableError("theta must assign a permutation to every element of G");
    std::vector<ConditionReport> reports;
    if (!is_group(g)) reports.push_back(cond_fail("G-is-group", {}, "first carrier is not a group"));
    if (!is_group(h)) reports.push_back(cond_fail("H-is-group", {}, "second carrier is not a group"));
    for (int x = 0; x < g.order(); ++x) {
        if (theta[x].degree() != h.order())
            throw TableError("theta value has wrong degree");
        if (!is_automorphism(h, theta[x])) {
            reports.push_back(cond_fail("theta-automorphism", {x},
                                        "theta value is not an automorphism of H"));
            break;
        }
    }
    throw_if_violated("semidirect_group_theta", reports);

    const int n1 = g.order(), n2 = h.order(), n = n1 * n2;
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int a1 = 0; a1 < n1; ++a1)
        for (int a2 = 0; a2 < n2; ++a2)
            for (int b1 = 0; b1 < n1; ++b1)
                for (int b2 = 0; b2 < n2; ++b2) {
                    const int a = pair_index(a1, a2, n2);
                    const int b = pair_index(b1, b2, n2);
                    flat[static_cast<std::size_t>(a) * n + b] =
                        pair_index(g.at(a1, b1), h.at(theta[b1](a2), b2), n2);
                }
    return CayleyTable(n, std::move(flat));
}

// Group of permutations generated, under composition, by the deviations
// l(q, q') = L_{qq'}^{-1} . L_q . L_{q'} of left translations from
// multiplicativity. Composition closure of a finite set of permutations is
// already a group.
struct TransassociantGroup {
    std::vector<Permutation> generators;
    std::vector<Permutation> elements;

    int find(const Permutation& p) const {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i] == p) return static_cast<int>(i);
        return -1;
    }
};

inline TransassociantGroup transassociant_group(const CayleyTable& q,
                                                std::size_t cap = 10000) {
    const int n = q.order();
    std::vector<Permutation> left;
    left.reserve(n);
    for (int a = 0; a < n; ++a) left.push_back(left_translation(q, a));

    TransassociantGroup out;
    std::map<std::vector<int>, int> seen;
    auto add = [&](const Permutation& p) -> int {
        auto it = seen.find(p.image());
        if (it != seen.end()) return it->second;
        if (out.elements.size() >= cap)
            throw ResourceError("transassociant closure exceeded cap of " +
                                std::to_string(cap) + " elements (partial size " +
                                std::to_string(out.elements.size()) + ")");
        const int idx = static_cast<int>(out.elements.size());
        seen.emplace(p.image(), idx);
        out.elements.push_back(p);
        return idx;
    };

    add(Permutation::identity(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Permutation l = left[q.at(a, b)].inverse().compose(left[a]).compose(left[b]);
            add(l);
            out.generators.push_back(std::move(l));
        }
    for (std::size_t i = 0; i < out.elements.size(); ++i)
        for (std::size_t k = 0; k < out.elements.size(); ++k)
            add(out.elements[i].compose(out.elements[k]));
    return out;
}

struct SabininProduct {
    CayleyTable table;
    TransassociantGroup h;
};

// (q, f)(q', f') = (q . f(q'), l(q, f(q')) . m_{q'}(f) . f . f') with
// m_q(f) = L_{f(q)}^{-1} . f . L_q . f^{-1}. Every composite second component
// must land back in the closure; a miss is an internal inconsistency.
inline SabininProduct sabinin_product(const CayleyTable& q, std::size_t cap = 10000) {
    const int n = q.order();
    TransassociantGroup h = transassociant_group(q, cap);
    const int hn = static_cast<int>(h.elements.size());

    std::vector<Permutation> left;
    left.reserve(n);
    for (int a = 0; a < n; ++a) left.push_back(left_translation(q, a));

    // a_comp[q'][f] = m_{q'}(f) . f = L_{f(q')}^{-1} . f . L_{q'}
    std::vector<Permutation> a_comp;
    a_comp.reserve(static_cast<std::size_t>(n) * hn);
    for (int qp = 0; qp < n; ++qp)
        for (int f = 0; f < hn; ++f) {
            const Permutation& pf = h.elements[f];
            a_comp.push_back(left[pf(qp)].inverse().compose(pf).compose(left[qp]));
        }

    std::map<std::vector<int>, int> index_of;
    for (int i = 0; i < hn; ++i) index_of.emplace(h.elements[i].image(), i);
    std::vector<int> l_idx(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            Permutation l = left[q.at(a, c)].inverse().compose(left[a]).compose(left[c]);
            auto it = index_of.find(l.image());
            if (it == index_of.end())
                throw ConditionViolation(
                    "sabinin_product",
                    {cond_fail("transassociant-closure", {a, c},
                               "generator missing from closure")});
            l_idx[static_cast<std::size_t>(a) * n + c] = it->second;
        }

    const int total = n * hn;
    std::vector<int> flat(static_cast<std::size_t>(total) * total);
    for (int a = 0; a < n; ++a)
        for (int f = 0; f < hn; ++f) {
            const int lhs = pair_index(a, f, hn);
            for (int b = 0; b < n; ++b) {
                const int c = h.elements[f](b);
                const Permutation& lq = h.elements[l_idx[static_cast<std::size_t>(a) * n + c]];
                const Permutation head = lq.compose(a_comp[static_cast<std::size_t>(b) * hn + f]);
                for (int fp = 0; fp < hn; ++fp) {
                    const Permutation comp = head.compose(h.elements[fp]);
                    auto it = index_of.find(comp.image());
                    if (it == index_of.end())
                        throw ConditionViolation(
                            "sabinin_product",
                            {cond_fail("transassociant-closure", {a, f, b, fp},
                                       "product component escapes the closure")});
                    flat[static_cast<std::size_t>(lhs) * total + pair_index(b, fp, hn)] =
                        pair_index(q.at(a, c), it->second, hn);
                }
            }
        }
    return SabininProduct{CayleyTable(total, std::move(flat)), std::move(h)};
}

// The two mutual actions of a two-sided twisted product: phi: S x R -> R and
// psi: S x R -> S, stored as dense lookup tables indexed by (s, r).
struct ActionPair {
    int r_order = 0;
    int s_order = 0;
    std::vector<int> phi;  // phi[s * r_order + r] in [0, r_order)
    std::vector<int> psi;  // psi[s * r_order + r] in [0, s_order)

    int phi_at(int s, int r) const { return phi[static_cast<std::size_t>(s) * r_order + r]; }
    int psi_at(int s, int r) const { return psi[static_cast<std::size_t>(s) * r_order + r]; }

    static ActionPair trivial(int r_order, int s_order) {
        ActionPair a{r_order, s_order,
                     std::vector<int>(static_cast<std::size_t>(r_order) * s_order),
                     std::vector<int>(static_cast<std::size_t>(r_order) * s_order)};
        for (int s = 0; s < s_order; ++s)
            for (int r = 0; r < r_order; ++r) {
                a.phi[static_cast<std::size_t>(s) * r_order + r] = r;
                a.psi[static_cast<std::size_t>(s) * r_order + r] = s;
            }
        return a;
    }
};

inline void check_action_pair_shape(const ActionPair& a) {
    const std::size_t cells = static_cast<std::size_t>(a.r_order) * a.s_order;
    if (a.r_order <= 0 || a.s_order <= 0 || a.phi.size() != cells || a.psi.size() != cells)
        throw TableError("action pair tables must be s_order x r_order");
    for (int v : a.phi)
        if (v < 0 || v >= a.r_order) throw TableError("phi value out of range");
    for (int v : a.psi)
        if (v < 0 || v >= a.s_order) throw TableError("psi value out of range");
}

namespace detail {

// x J(x) = delta for every x; the hypothesis every twisted product below
// leans on (it also forces J(delta) = delta).
inline void check_perm_j(const Loop& l, const Permutation& j, const char* side,
                         std::vector<ConditionReport>& reports) {
    for (int x = 0; x < l.order(); ++x)
        if (l.table().at(x, j(x)) != l.delta()) {
            reports.push_back(cond_fail("perm-J", {x}, std::string("factor ") + side));
            return;
        }
    reports.push_back(cond_ok("perm-J"));
}

inline void check_factor_congruence(const Loop& r, const Permutation& jr, const Loop& s,
                                    const Permutation& js, long long m, const char* name,
                                    std::vector<ConditionReport>& reports) {
    // m is admissible for the product exactly when it is admissible for both
    // factors: m = m_i + u_i h_i shifts within each factor's valid set.
    bool ok_r = is_m_inverse(r.table(), jr, m);
    bool ok_s = is_m_inverse(s.table(), js, m);
    if (ok_r && ok_s) {
        reports.push_back(cond_ok(name));
    } else {
        std::string note = !ok_r ? "first factor fails the m-inverse identity at this m"
                                 : "second factor fails the m-inverse identity at this m";
        reports.push_back(cond_fail(name, {}, note));
    }
}

}  // namespace detail

struct SemidirectCheck {
    std::vector<ConditionReport> reports;
    std::optional<Loop> loop;
    std::optional<Permutation> j;
    int h1 = 1;
    int h2 = 1;
};

// One-action twisted product (r, s)(r', s') = (r phi(s, r'), ss') with
// J(r, s) = (phi(JS(s), JR(r)), JS(s)). The even-m triviality requirement and
// the structural conditions gate construction; the odd-m twisted law is
// reported as a diagnostic, and acceptance always rests on the defining
// m-inverse identity evaluated on the built table.
inline SemidirectCheck check_semidirect_m_inverse(const Loop& r, const Permutation& jr,
                                                  const Loop& s, const Permutation& js,
                                                  const std::vector<int>& phi, long long m) {
    const int nr = r.order(), ns = s.order();
    if (jr.degree() != nr || js.degree() != ns)
        throw TableError("factor permutation degree mismatch");
    if (phi.size() != static_cast<std::size_t>(nr) * ns)
        throw TableError("phi table must be s_order x r_order");
    for (int v : phi)
        if (v < 0 || v >= nr) throw TableError("phi value out of range");

    auto phi_at = [&](int sv, int rv) { return phi[static_cast<std::size_t>(sv) * nr + rv]; };
    const int dr = r.delta(), ds = s.delta();

    SemidirectCheck out;
    detail::check_perm_j(r, jr, "R", out.reports);
    detail::check_perm_j(s, js, "S", out.reports);
    out.h1 = aut_power_order(r.table(), jr);
    out.h2 = aut_power_order(s.table(), js);

    {
        bool ok = true;
        for (int rv = 0; rv < nr && ok; ++rv)
            if (phi_at(ds, rv) != rv) {
                out.reports.push_back(cond_fail("unit-action-QR", {rv},
                                                "phi(delta, r) = r"));
                ok = false;
            }
        for (int sv = 0; sv < ns && ok; ++sv)
            if (phi_at(sv, dr) != dr) {
                out.reports.push_back(cond_fail("unit-action-QR", {sv},
                                                "phi(s, delta) = delta"));
                ok = false;
            }
        if (ok) out.reports.push_back(cond_ok("unit-action-QR"));
    }

    const Permutation jsm = js.power(m), jsm1 = js.power(m + 1);
    const Permutation jrm = jr.power(m), jrm1 = jr.power(m + 1);
    {
        // phi(JS^m(ss'), phi(JS^{m+1}(s), r)) = phi(JS^m(s'), r)
        bool ok = true;
        for (int sv = 0; sv < ns && ok; ++sv)
            for (int sp = 0; sp < ns && ok; ++sp)
                for (int rv = 0; rv < nr && ok; ++rv)
                    if (phi_at(jsm(s.table().at(sv, sp)), phi_at(jsm1(sv), rv)) !=
                        phi_at(jsm(sp), rv)) {
                        out.reports.push_back(cond_fail(
                            "unit-action-QR", {sv, sp, rv},
                            "phi(JS^m(ss'), phi(JS^{m+1}(s), r)) = phi(JS^m(s'), r)"));
                        ok = false;
                    }
        if (ok) out.reports.push_back(cond_ok("unit-action-QR"));
    }
    {
        // phi(s, JR^m(rr')) phi(s, JR^{m+1}(r)) = phi(s, JR^m(r'))
        bool ok = true;
        for (int sv = 0; sv < ns && ok; ++sv)
            for (int rv = 0; rv < nr && ok; ++rv)
                for (int rp = 0; rp < nr && ok; ++rp)
                    if (r.table().at(phi_at(sv, jrm(r.table().at(rv, rp))),
                                     phi_at(sv, jrm1(rv))) != phi_at(sv, jrm(rp))) {
                        out.reports.push_back(cond_fail(
                            "unit-action-QR", {sv, rv, rp},
                            "phi(s, JR^m(rr')) phi(s, JR^{m+1}(r)) = phi(s, JR^m(r'))"));
                        ok = false;
                    }
        if (ok) out.reports.push_back(cond_ok("unit-action-QR"));
    }

    detail::check_factor_congruence(r, jr, s, js, m, "cong-eqn-II", out.reports);

    const bool even = ((m % 2) + 2) % 2 == 0;
    if (even) {
        bool ok = true;
        for (int sv = 0; sv < ns && ok; ++sv)
            for (int rv = 0; rv < nr && ok; ++rv)
                if (phi_at(sv, rv) != rv) {
                    out.reports.push_back(cond_fail("m-inverse-cond", {sv, rv},
                                                    "even m forces phi(s, r) = r"));
                    ok = false;
                }
        if (ok) out.reports.push_back(cond_ok("m-inverse-cond"));
    } else {
        // phi(JS^m(ss'), phi(s, r)) = phi(JS^m(s'), r); diagnostic only
        bool ok = true;
        std::vector<int> witness;
        for (int sv = 0; sv < ns && ok; ++sv)
            for (int sp = 0; sp < ns && ok; ++sp)
                for (int rv = 0; rv < nr && ok; ++rv)
                    if (phi_at(jsm(s.table().at(sv, sp)), phi_at(sv, rv)) !=
                        phi_at(jsm(sp), rv)) {
                        ok = false;
                        witness = {sv, sp, rv};
                    }
        ConditionReport rep = ok ? cond_ok("m-inverse-cond")
                                 : cond_fail("m-inverse-cond", witness,
                                             "odd-m twisted law (diagnostic)");
        out.reports.push_back(std::move(rep));
    }

    bool gate_ok = true;
    for (const auto& rep : out.reports)
        if (!rep.ok && !(rep.name == "m-inverse-cond" && !even)) gate_ok = false;
    if (!gate_ok) return out;

    const int n = nr * ns;
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int rv = 0; rv < nr; ++rv)
        for (int sv = 0; sv < ns; ++sv)
            for (int rp = 0; rp < nr; ++rp)
                for (int sp = 0; sp < ns; ++sp)
                    flat[static_cast<std::size_t>(pair_index(rv, sv, ns)) * n +
                         pair_index(rp, sp, ns)] =
                        pair_index(r.table().at(rv, phi_at(sv, rp)), s.table().at(sv, sp), ns);
    try {
        out.loop.emplace(CayleyTable(n, std::move(flat)));
    } catch (const TableError&) {
        out.reports.push_back(cond_fail("semi-direct-multp", {},
                                        "product table is not a quasigroup with identity"));
        return out;
    }

    std::vector<int> jimg(n);
    for (int rv = 0; rv < nr; ++rv)
        for (int sv = 0; sv < ns; ++sv)
            jimg[pair_index(rv, sv, ns)] = pair_index(phi_at(js(sv), jr(rv)), js(sv), ns);
    try {
        out.j.emplace(std::move(jimg));
    } catch (const TableError&) {
        out.reports.push_back(cond_fail("perm-semidirect-prod", {},
                                        "J of the product is not a bijection"));
        out.loop.reset();
        return out;
    }

    if (auto w = rst_witness(out.loop->table(), *out.j, RstTriple{m, m + 1, m})) {
        out.reports.push_back(cond_fail("m-inv", {w->first, w->second},
                                        "defining identity fails on the product"));
        out.loop.reset();
        out.j.reset();
    } else {
        out.reports.push_back(cond_ok("m-inv"));
    }
    return out;
}

struct SemidirectResult {
    Loop loop;
    Permutation j;
    int h1 = 1;
    int h2 = 1;
    std::vector<ConditionReport> diagnostics;
};

inline SemidirectResult semidirect_m_inverse(const Loop& r, const Permutation& jr,
                                             const Loop& s, const Permutation& js,
                                             const std::vector<int>& phi, long long m) {
    SemidirectCheck c = check_semidirect_m_inverse(r, jr, s, js, phi, m);
    if (!c.loop || !c.j) throw ConditionViolation("semidirect_m_inverse", c.reports);
    return SemidirectResult{std::move(*c.loop), std::move(*c.j), c.h1, c.h2,
                            std::move(c.reports)};
}

struct MatchedPairCheck {
    std::vector<ConditionReport> reports;
    std::optional<Loop> loop;
    std::optional<Permutation> j;
    int h1 = 1;
    int h2 = 1;
};

// Two-action twisted product (r, s)(r', s') = (r phi(s, r'), psi(s, r') s')
// with J(r, s) = (phi(JS(s), JR(r)), psi(JS(s), JR(r))). Structural
// conditions gate construction; both readings of the odd-m twisted pair are
// diagnostics (the published display mixes JR^{-m} and JR^{-1}); acceptance
// rests on the defining m-inverse identity evaluated on the built table.
inline MatchedPairCheck check_matched_pair(const Loop& r, const Permutation& jr,
                                           const Loop& s, const Permutation& js,
                                           const ActionPair& a, long long m) {
    check_action_pair_shape(a);
    const int nr = r.order(), ns = s.order();
    if (jr.degree() != nr || js.degree() != ns)
        throw TableError("factor permutation degree mismatch");
    if (a.r_order != nr || a.s_order != ns)
        throw TableError("action pair orders do not match the factors");

    const int dr = r.delta(), ds = s.delta();
    MatchedPairCheck out;
    detail::check_perm_j(r, jr, "R", out.reports);
    detail::check_perm_j(s, js, "S", out.reports);
    out.h1 = aut_power_order(r.table(), jr);
    out.h2 = aut_power_order(s.table(), js);

    {
        bool ok = true;
        for (int rv = 0; rv < nr && ok; ++rv)
            if (a.phi_at(ds, rv) != rv || a.psi_at(ds, rv) != ds) {
                out.reports.push_back(cond_fail("unit-action-QR-matched-I", {rv},
                                                "phi(delta, r) = r and psi(delta, r) = delta"));
                ok = false;
            }
        for (int sv = 0; sv < ns && ok; ++sv)
            if (a.phi_at(sv, dr) != dr || a.psi_at(sv, dr) != sv) {
                out.reports.push_back(cond_fail("unit-action-QR-matched-I", {sv},
                                                "phi(s, delta) = delta and psi(s, delta) = s"));
                ok = false;
            }
        if (ok) out.reports.push_back(cond_ok("unit-action-QR-matched-I"));
    }

    {
        // phi(s, phi(JS(s), r)) = r
        bool ok = true;
        for (int sv = 0; sv < ns && ok; ++sv)
            for (int rv = 0; rv < nr && ok; ++rv)
                if (a.phi_at(sv, a.phi_at(js(sv), rv)) != rv) {
                    out.reports.push_back(cond_fail("unit-action-QR-matched-I-I", {sv, rv}));
                    ok = false;
                }
        if (ok) out.reports.push_back(cond_ok("unit-action-QR-matched-I-I"));
    }

    const Permutation jrm = jr.power(m), jrm1 = jr.power(m + 1);
    const Permutation jsm = js.power(m), jsm1 = js.power(m + 1);
    {
        // psi(psi(s, JR^m(rr')), JR^{m+1}(r)) = psi(s, JR^m(r'))
        bool ok = true;
        for (int sv = 0; sv < ns && ok; ++sv)
            for (int rv = 0; rv < nr && ok; ++rv)
                for (int rp = 0; rp < nr && ok; ++rp) {
                    const int prod = jrm(r.table().at(rv, rp));
                    if (a.psi_at(a.psi_at(sv, prod), jrm1(rv)) != a.psi_at(sv, jrm(rp))) {
                        out.reports.push_back(
                            cond_fail("unit-action-QR-matched-II", {sv, rv, rp}));
                        ok = false;
                    }
                }
        if (ok) out.reports.push_back(cond_ok("unit-action-QR-matched-II"));
    }
    {
        // phi(s, JR^m(rr')) phi(psi(s, JR^m(rr')), JR^{m+1}(r)) = phi(s, JR^m(r'))
        bool ok = true;
        for (int sv = 0; sv < ns && ok; ++sv)
            for (int rv = 0; rv < nr && ok; ++rv)
                for (int rp = 0; rp < nr && ok; ++rp) {
                    const int prod = jrm(r.table().at(rv, rp));
                    if (r.table().at(a.phi_at(sv, prod),
                                     a.phi_at(a.psi_at(sv, prod), jrm1(rv))) !=
                        a.phi_at(sv, jrm(rp))) {
                        out.reports.push_back(
                            cond_fail("unit-action-QR-matched-III", {sv, rv, rp}));
                        ok = false;
                    }
                }
        if (ok) out.reports.push_back(cond_ok("unit-action-QR-matched-III"));
    }
    {
        // psi(s, phi(JS(s), r)) psi(JS(s), r) = delta
        bool ok = true;
        for (int sv = 0; sv < ns && ok; ++sv)
            for (int rv = 0; rv < nr && ok; ++rv)
                if (s.table().at(a.psi_at(sv, a.phi_at(js(sv), rv)), a.psi_at(js(sv), rv)) !=
                    ds) {
                    out.reports.push_back(cond_fail("unit-action-QR-matched-IV", {sv, rv}));
                    ok = false;
                }
        if (ok) out.reports.push_back(cond_ok("unit-action-QR-matched-IV"));
    }

    detail::check_factor_congruence(r, jr, s, js, m, "cong-eqn-II-matched", out.reports);

    const bool even = ((m % 2) + 2) % 2 == 0;
    if (even) {
        bool ok = true;
        for (int sv = 0; sv < ns && ok; ++sv)
            for (int rv = 0; rv < nr && ok; ++rv)
                if (a.phi_at(sv, rv) != rv || a.psi_at(sv, rv) != sv) {
                    out.reports.push_back(
                        cond_fail("m-inverse-cond-matched", {sv, rv},
                                  "even m forces phi(s, r) = r and psi(s, r) = s"));
                    ok = false;
                }
        if (ok) out.reports.push_back(cond_ok("m-inverse-cond-matched"));
    } else {
        const Permutation jr_negm = jr.power(-m), jr_neg1 = jr.inverse();
        {
            // literal display:
            // phi(JS^m(psi(s, JR^{-m}(r)) s'), phi(psi(s, JR^{-1}(r)), r)) = phi(JS^m(s'), r)
            bool ok = true;
            std::vector<int> witness;
            for (int sv = 0; sv < ns && ok; ++sv)
                for (int sp = 0; sp < ns && ok; ++sp)
                    for (int rv = 0; rv < nr && ok; ++rv) {
                        const int lhs = a.phi_at(
                            jsm(s.table().at(a.psi_at(sv, jr_negm(rv)), sp)),
                            a.phi_at(a.psi_at(sv, jr_neg1(rv)), rv));
                        if (lhs != a.phi_at(jsm(sp), rv)) {
                            ok = false;
                            witness = {sv, sp, rv};
                        }
                    }
            out.reports.push_back(ok ? cond_ok("m-inverse-cond-matched")
                                     : cond_fail("m-inverse-cond-matched", witness,
                                                 "odd-m phi law, literal mixed-power "
                                                 "reading (diagnostic)"));
        }
        {
            // uniform-power reading of the same display, twisting both inner
            // arguments by JR^{-m}:
            // phi(JS^m(psi(s, JR^{-m}(r)) s'), phi(psi(s, JR^{-m}(r)), r)) = phi(JS^m(s'), r)
            bool ok = true;
            std::vector<int> witness;
            for (int sv = 0; sv < ns && ok; ++sv)
                for (int sp = 0; sp < ns && ok; ++sp)
                    for (int rv = 0; rv < nr && ok; ++rv) {
                        const int tw = a.psi_at(sv, jr_negm(rv));
                        const int lhs = a.phi_at(jsm(s.table().at(tw, sp)),
                                                 a.phi_at(tw, rv));
                        if (lhs != a.phi_at(jsm(sp), rv)) {
                            ok = false;
                            witness = {sv, sp, rv};
                        }
                    }
            out.reports.push_back(ok ? cond_ok("m-inverse-cond-matched")
                                     : cond_fail("m-inverse-cond-matched", witness,
                                                 "odd-m phi law, uniform-power "
                                                 "reading (diagnostic)"));
        }
        {
            // psi(JS^m(psi(s, r) s'), JR^m(phi(s, r))) JS^{m+1}(s) = psi(JS^m(s'), JR^m(r))
            bool ok = true;
            std::vector<int> witness;
            for (int sv = 0; sv < ns && ok; ++sv)
                for (int sp = 0; sp < ns && ok; ++sp)
                    for (int rv = 0; rv < nr && ok; ++rv) {
                        const int lhs = s.table().at(
                            a.psi_at(jsm(s.table().at(a.psi_at(sv, rv), sp)),
                                     jrm(a.phi_at(sv, rv))),
                            jsm1(sv));
                        if (lhs != a.psi_at(jsm(sp), jrm(rv))) {
                            ok = false;
                            witness = {sv, sp, rv};
                        }
                    }
            out.reports.push_back(ok ? cond_ok("m-inverse-cond-matched")
                                     : cond_fail("m-inverse-cond-matched", witness,
                                                 "odd-m psi law (diagnostic)"));
        }
    }

    bool gate_ok = true;
    for (const auto& rep : out.reports)
        if (!rep.ok && !(rep.name == "m-inverse-cond-matched" && !even)) gate_ok = false;
    if (!gate_ok) return out;

    const int n = nr * ns;
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int rv = 0; rv < nr; ++rv)
        for (int sv = 0; sv < ns; ++sv)
            for (int rp = 0; rp < nr; ++rp)
                for (int sp = 0; sp < ns; ++sp)
                    flat[static_cast<std::size_t>(pair_index(rv, sv, ns)) * n +
                         pair_index(rp, sp, ns)] =
                        pair_index(r.table().at(rv, a.phi_at(sv, rp)),
                                   s.table().at(a.psi_at(sv, rp), sp), ns);
    try {
        out.loop.emplace(CayleyTable(n, std::move(flat)));
    } catch (const TableError&) {
        out.reports.push_back(cond_fail("matched-pair-multp", {},
                                        "product table is not a quasigroup with identity"));
        return out;
    }

    std::vector<int> jimg(n);
    for (int rv = 0; rv < nr; ++rv)
        for (int sv = 0; sv < ns; ++sv)
            jimg[pair_index(rv, sv, ns)] =
                pair_index(a.phi_at(js(sv), jr(rv)), a.psi_at(js(sv), jr(rv)), ns);
    try {
        out.j.emplace(std::move(jimg));
    } catch (const TableError&) {
        out.reports.push_back(cond_fail("perm-matched-pair-prod", {},
                                        "J of the product is not a bijection"));
        out.loop.reset();
        return out;
    }

    if (auto w = rst_witness(out.loop->table(), *out.j, RstTriple{m, m + 1, m})) {
        out.reports.push_back(cond_fail("m-inv", {w->first, w->second},
                                        "defining identity fails on the product"));
        out.loop.reset();
        out.j.reset();
        return out;
    }
    out.reports.push_back(cond_ok("m-inv"));

    {
        // derived on success: JR(phi(s, r)) = phi(psi(s, r), JR(r))
        bool ok = true;
        std::vector<int> witness;
        for (int sv = 0; sv < ns && ok; ++sv)
            for (int rv = 0; rv < nr && ok; ++rv)
                if (jr(a.phi_at(sv, rv)) != a.phi_at(a.psi_at(sv, rv), jr(rv))) {
                    ok = false;
                    witness = {sv, rv};
                }
        out.reports.push_back(ok ? cond_ok("incerse-of-left-action")
                                 : cond_fail("incerse-of-left-action", witness,
                                             "derived action-inverse law (diagnostic)"));
    }
    return out;
}

struct MatchedPairResult {
    Loop loop;
    Permutation j;
    int h1 = 1;
    int h2 = 1;
    std::vector<ConditionReport> diagnostics;
};

inline MatchedPairResult matched_pair_loop(const Loop& r, const Permutation& jr,
                                           const Loop& s, const Permutation& js,
                                           const ActionPair& a, long long m) {
    MatchedPairCheck c = check_matched_pair(r, jr, s, js, a, m);
    if (!c.loop || !c.j) throw ConditionViolation("matched_pair_loop", c.reports);
    return MatchedPairResult{std::move(*c.loop), std::move(*c.j), c.h1, c.h2,
                             std::move(c.reports)};
}

// Mutual actions of a pair of groups on each other: tri(y, x) is the element
// y |> x of G, tli(y, x) is y <| x in H.
struct GroupActionPair {
    int g_order = 0;
    int h_order = 0;
    std::vector<int> tri;  // tri[y * g_order + x] in [0, g_order)
    std::vector<int> tli;  // tli[y * g_order + x] in [0, h_order)

    int tri_at(int y, int x) const { return tri[static_cast<std::size_t>(y) * g_order + x]; }
    int tli_at(int y, int x) const { return tli[static_cast<std::size_t>(y) * g_order + x]; }

    static GroupActionPair trivial(int g_order, int h_order) {
        GroupActionPair a{g_order, h_order,
                          std::vector<int>(static_cast<std::size_t>(g_order) * h_order),
                          std::vector<int>(static_cast<std::size_t>(g_order) * h_order)};
        for (int y = 0; y < h_order; ++y)
            for (int x = 0; x < g_order; ++x) {
                a.tri[static_cast<std::size_t>(y) * g_order + x] = x;
                a.tli[static_cast<std::size_t>(y) * g_order + x] = y;
            }
        return a;
    }
};

inline std::vector<ConditionReport> check_group_matched_pair(const CayleyTable& g,
                                                             const CayleyTable& h,
                                                             const GroupActionPair& a) {
    const std::size_t cells = static_cast<std::size_t>(a.g_order) * a.h_order;
    if (a.g_order != g.order() || a.h_order != h.order() || a.tri.size() != cells ||
        a.tli.size() != cells)
        throw TableError("group action pair tables must be h_order x g_order");
    for (int v : a.tri)
        if (v < 0 || v >= a.g_order) throw TableError("tri value out of range");
    for (int v : a.tli)
        if (v < 0 || v >= a.h_order) throw TableError("tli value out of range");

    std::vector<ConditionReport> reports;
    if (!is_group(g)) reports.push_back(cond_fail("G-is-group", {}));
    if (!is_group(h)) reports.push_back(cond_fail("H-is-group", {}));
    if (!reports.empty()) return reports;
    const int eg = *g.identity(), eh = *h.identity();
    const int ng = g.order(), nh = h.order();

    {
        // left action of H on G: e |> x = x, (yy') |> x = y |> (y' |> x)
        bool ok = true;
        for (int x = 0; x < ng && ok; ++x)
            if (a.tri_at(eh, x) != x) {
                reports.push_back(cond_fail("tri-left-action", {x}, "unit acts as identity"));
                ok = false;
            }
        for (int y = 0; y < nh && ok; ++y)
            for (int yp = 0; yp < nh && ok; ++yp)
                for (int x = 0; x < ng && ok; ++x)
                    if (a.tri_at(h.at(y, yp), x) != a.tri_at(y, a.tri_at(yp, x))) {
                        reports.push_back(cond_fail("tri-left-action", {y, yp, x}));
                        ok = false;
                    }
        if (ok) reports.push_back(cond_ok("tri-left-action"));
    }
    {
        // right action of G on H: y <| e = y, y <| (xx') = (y <| x) <| x'
        bool ok = true;
        for (int y = 0; y < nh && ok; ++y)
            if (a.tli_at(y, eg) != y) {
                reports.push_back(cond_fail("tli-right-action", {y}, "unit acts as identity"));
                ok = false;
            }
        for (int y = 0; y < nh && ok; ++y)
            for (int x = 0; x < ng && ok; ++x)
                for (int xp = 0; xp < ng && ok; ++xp)
                    if (a.tli_at(y, g.at(x, xp)) != a.tli_at(a.tli_at(y, x), xp)) {
                        reports.push_back(cond_fail("tli-right-action", {y, x, xp}));
                        ok = false;
                    }
        if (ok) reports.push_back(cond_ok("tli-right-action"));
    }
    {
        // y |> (xx') = (y |> x)((y <| x) |> x')
        bool ok = true;
        for (int y = 0; y < nh && ok; ++y)
            for (int x = 0; x < ng && ok; ++x)
                for (int xp = 0; xp < ng && ok; ++xp)
                    if (a.tri_at(y, g.at(x, xp)) !=
                        g.at(a.tri_at(y, x), a.tri_at(a.tli_at(y, x), xp))) {
                        reports.push_back(cond_fail("tri-product-law", {y, x, xp}));
                        ok = false;
                    }
        if (ok) reports.push_back(cond_ok("tri-product-law"));
    }
    {
        // y |> e = e
        bool ok = true;
        for (int y = 0; y < nh && ok; ++y)
            if (a.tri_at(y, eg) != eg) {
                reports.push_back(cond_fail("tri-unit-law", {y}));
                ok = false;
            }
        if (ok) reports.push_back(cond_ok("tri-unit-law"));
    }
    {
        // (yy') <| x = (y <| (y' |> x))(y' <| x)
        bool ok = true;
        for (int y = 0; y < nh && ok; ++y)
            for (int yp = 0; yp < nh && ok; ++yp)
                for (int x = 0; x < ng && ok; ++x)
                    if (a.tli_at(h.at(y, yp), x) !=
                        h.at(a.tli_at(y, a.tri_at(yp, x)), a.tli_at(yp, x))) {
                        reports.push_back(cond_fail("tli-product-law", {y, yp, x}));
                        ok = false;
                    }
        if (ok) reports.push_back(cond_ok("tli-product-law"));
    }
    {
        // e <| x = e
        bool ok = true;
        for (int x = 0; x < ng && ok; ++x)
            if (a.tli_at(eh, x) != eh) {
                reports.push_back(cond_fail("tli-unit-law", {x}));
                ok = false;
            }
        if (ok) reports.push_back(cond_ok("tli-unit-law"));
    }
    return reports;
}

// Double product of a pair of groups acting on each other:
// (x, y)(x', y') = (x(y |> x'), (y <| x')y'). Always a group when the action
// laws hold; the group axioms are verified exhaustively after construction.
inline CayleyTable group_matched_pair(const CayleyTable& g, const CayleyTable& h,
                                      const GroupActionPair& a) {
    std::vector<ConditionReport> reports = check_group_matched_pair(g, h, a);
    throw_if_violated("group_matched_pair", reports);

    const int ng = g.order(), nh = h.order(), n = ng * nh;
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < ng; ++x)
        for (int y = 0; y < nh; ++y)
            for (int xp = 0; xp < ng; ++xp)
                for (int yp = 0; yp < nh; ++yp)
                    flat[static_cast<std::size_t>(pair_index(x, y, nh)) * n +
                         pair_index(xp, yp, nh)] =
                        pair_index(g.at(x, a.tri_at(y, xp)), h.at(a.tli_at(y, xp), yp), nh);
    CayleyTable out(n, std::move(flat));
    if (!is_group(out))
        throw ConditionViolation(
            "group_matched_pair",
            {cond_fail("product-group", {}, "double product table is not a group")});
    return out;
}

struct LambdaBundle {
    CayleyTable k;           // the double product group of the two acting groups
    Loop q;                  // its extension by the product fiber
    Permutation j_q;
    OddInvertibleLoop r_factor;  // extension of the first group by its fiber
    OddInvertibleLoop s_factor;  // extension of the second group by its fiber
    ActionPair actions;          // induced mutual actions between the factors
    std::vector<int> theta;      // (r, s) pair index -> element of q
    Loop rs;                     // twisted product of the factors via actions
    Permutation j_rs;
    std::vector<ConditionReport> diagnostics;
};

// Two-stage construction: form the group double product K of (G, H), extend
// it by V x W along the combined map Lambda((x,y),(x',y')) = (phi(x,x'),
// chi(y,y')), and factor the result as a two-action twisted product of the
// extensions G x_phi V and H x_chi W with m = 1. The final table comparison
// through theta is asserted, not assumed.
//
// The published invariance display for chi mixes the two maps; the default
// reading keeps chi on both sides, and strict_literal switches the gate to
// the literal mixed form (possible only when the carriers make it typable).
// Both readings are always reported.
inline LambdaBundle lambda_example(const CayleyTable& g, const CayleyTable& h,
                                   const GroupActionPair& a, const CayleyTable& v,
                                   const CayleyTable& w, const CocycleMap& phi,
                                   const CocycleMap& chi, bool strict_literal = false) {
    check_cocycle_shape(g, v, phi);
    check_cocycle_shape(h, w, chi);
    if (!phi.trivial_action() || !chi.trivial_action())
        throw TableError("the extension maps here must act trivially");
    std::vector<ConditionReport> pre;
    if (!is_abelian_group(v)) pre.push_back(cond_fail("V-is-abelian-group", {}));
    if (!is_abelian_group(w)) pre.push_back(cond_fail("W-is-abelian-group", {}));
    throw_if_violated("lambda_example", pre);

    std::vector<ConditionReport> reports = check_group_matched_pair(g, h, a);
    const int ng = g.order(), nh = h.order(), nv = v.order(), nw = w.order();

    {
        // phi(x, x') = phi(x, y |> x')
        bool ok = true;
        for (int x = 0; x < ng && ok; ++x)
            for (int xp = 0; xp < ng && ok; ++xp)
                for (int y = 0; y < nh && ok; ++y)
                    if (phi.value(x, xp) != phi.value(x, a.tri_at(y, xp))) {
                        reports.push_back(cond_fail("vp-invariance", {x, xp, y}));
                        ok = false;
                    }
        if (ok) reports.push_back(cond_ok("vp-invariance"));
    }
    {
        // default reading: chi(y, y') = chi(y <| x, y')
        bool ok = true;
        std::vector<int> witness;
        for (int y = 0; y < nh && ok; ++y)
            for (int yp = 0; yp < nh && ok; ++yp)
                for (int x = 0; x < ng && ok; ++x)
                    if (chi.value(y, yp) != chi.value(a.tli_at(y, x), yp)) {
                        ok = false;
                        witness = {y, yp, x};
                    }
        reports.push_back(ok ? cond_ok("chi-invariance")
                             : cond_fail("chi-invariance", witness, "chi-on-both-sides reading"));
        if (strict_literal && ok) reports.back().note = "chi-on-both-sides reading";
    }
    {
        // literal reading: chi(y, y') = phi(y <| x, y'); typable only when the
        // acting carriers and the fibers have matching orders
        if (ng == nh && nv == nw) {
            bool ok = true;
            std::vector<int> witness;
            for (int y = 0; y < nh && ok; ++y)
                for (int yp = 0; yp < nh && ok; ++yp)
                    for (int x = 0; x < ng && ok; ++x)
                        if (chi.value(y, yp) != phi.value(a.tli_at(y, x), yp)) {
                            ok = false;
                            witness = {y, yp, x};
                        }
            ConditionReport rep = ok ? cond_ok("chi-invariance")
                                     : cond_fail("chi-invariance", witness,
                                                 "literal mixed-map reading");
            if (ok) rep.note = "literal mixed-map reading";
            if (!strict_literal && !rep.ok)
                rep.note += " (diagnostic; not gating under the default reading)";
            reports.push_back(std::move(rep));
        } else if (strict_literal) {
            reports.push_back(cond_fail("chi-invariance", {},
                                        "literal mixed-map reading is not typable on "
                                        "these carriers"));
        }
    }

    bool gate_ok = true;
    for (const auto& rep : reports) {
        if (rep.ok) continue;
        const bool literal_diag = rep.name == "chi-invariance" &&
                                  rep.note.find("literal") != std::string::npos &&
                                  !strict_literal;
        const bool default_diag = rep.name == "chi-invariance" && strict_literal &&
                                  rep.note.find("chi-on-both-sides") != std::string::npos;
        if (!literal_diag && !default_diag) gate_ok = false;
    }
    if (!gate_ok) throw ConditionViolation("lambda_example", reports);

    CayleyTable k = group_matched_pair(g, h, a);
    CayleyTable vw = product_table(v, w);

    CocycleMap lambda;
    lambda.g_order = k.order();
    lambda.v_order = vw.order();
    lambda.phi.assign(static_cast<std::size_t>(k.order()) * k.order(), 0);
    for (int x = 0; x < ng; ++x)
        for (int y = 0; y < nh; ++y)
            for (int xp = 0; xp < ng; ++xp)
                for (int yp = 0; yp < nh; ++yp) {
                    const int p = pair_index(x, y, nh), pp = pair_index(xp, yp, nh);
                    lambda.phi[static_cast<std::size_t>(p) * k.order() + pp] =
                        pair_index(phi.value(x, xp), chi.value(y, yp), nw);
                }

    {
        std::vector<ConditionReport> quasis = check_odd_invertible(k, vw, lambda);
        const bool ok = all_ok(quasis);
        for (auto& rep : quasis) reports.push_back(std::move(rep));
        if (!ok) throw ConditionViolation("lambda_example", reports);
    }

    OddInvertibleLoop q = odd_invertible_loop(k, vw, lambda);
    OddInvertibleLoop rf = odd_invertible_loop(g, v, phi);
    OddInvertibleLoop sf = odd_invertible_loop(h, w, chi);
    const int nrf = rf.loop.order(), nsf = sf.loop.order();

    // Induced actions between the factors: the first group acts through |>
    // on the base and leaves the fiber alone, and symmetrically for <|.
    ActionPair act{nrf, nsf, std::vector<int>(static_cast<std::size_t>(nrf) * nsf),
                   std::vector<int>(static_cast<std::size_t>(nrf) * nsf)};
    for (int y = 0; y < nh; ++y)
        for (int wv = 0; wv < nw; ++wv)
            for (int x = 0; x < ng; ++x)
                for (int vv = 0; vv < nv; ++vv) {
                    const int sidx = pair_index(y, wv, nw);
                    const int ridx = pair_index(x, vv, nv);
                    act.phi[static_cast<std::size_t>(sidx) * nrf + ridx] =
                        pair_index(a.tri_at(y, x), vv, nv);
                    act.psi[static_cast<std::size_t>(sidx) * nrf + ridx] =
                        pair_index(a.tli_at(y, x), wv, nw);
                }

    MatchedPairResult rs = matched_pair_loop(rf.loop, rf.j, sf.loop, sf.j, act, 1);
    for (auto& rep : rs.diagnostics) reports.push_back(std::move(rep));

    // theta(r, s) = (embedded r) * (embedded s) computed inside q
    const int eg = *g.identity(), eh = *h.identity();
    const int ev = *v.identity(), ew = *w.identity();
    auto embed_r = [&](int x, int vv) {
        return pair_index(pair_index(x, eh, nh), pair_index(vv, ew, nw), vw.order());
    };
    auto embed_s = [&](int y, int wv) {
        return pair_index(pair_index(eg, y, nh), pair_index(ev, wv, nw), vw.order());
    };
    std::vector<int> theta(static_cast<std::size_t>(nrf) * nsf);
    std::vector<char> hit(q.loop.order(), 0);
    for (int x = 0; x < ng; ++x)
        for (int vv = 0; vv < nv; ++vv)
            for (int y = 0; y < nh; ++y)
                for (int wv = 0; wv < nw; ++wv) {
                    const int ridx = pair_index(x, vv, nv);
                    const int sidx = pair_index(y, wv, nw);
                    const int image = q.loop.table().at(embed_r(x, vv), embed_s(y, wv));
                    theta[static_cast<std::size_t>(ridx) * nsf + sidx] = image;
                    hit[image] = 1;
                }
    for (char c : hit)
        if (!c) {
            reports.push_back(cond_fail("Theta-map", {}, "pair multiplication is not onto"));
            throw ConditionViolation("lambda_example", reports);
        }
    reports.push_back(cond_ok("Theta-map"));

    // transported multiplication and inverse permutation must agree with the
    // direct construction
    {
        bool ok = true;
        std::vector<int> witness;
        const int npairs = nrf * nsf;
        for (int p = 0; p < npairs && ok; ++p)
            for (int pp = 0; pp < npairs && ok; ++pp)
                if (theta[rs.loop.table().at(p, pp)] !=
                    q.loop.table().at(theta[p], theta[pp])) {
                    ok = false;
                    witness = {p, pp};
                }
        for (int p = 0; p < npairs && ok; ++p)
            if (theta[rs.j(p)] != q.j(theta[p])) {
                ok = false;
                witness = {p};
            }
        reports.push_back(ok ? cond_ok("lambda-isomorphism")
                             : cond_fail("lambda-isomorphism", witness,
                                         "transported product disagrees with the direct "
                                         "construction"));
        if (!ok) throw ConditionViolation("lambda_example", reports);
    }

    return LambdaBundle{std::move(k),
                        std::move(q.loop),
                        std::move(q.j),
                        std::move(rf),
                        std::move(sf),
                        std::move(act),
                        std::move(theta),
                        std::move(rs.loop),
                        std::move(rs.j),
                        std::move(reports)};
}

}  // namespace loopforge
