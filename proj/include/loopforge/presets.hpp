#pragma once

// Built-in catalog: small groups with their inversion maps, the six-element
// twisted loop over Z3, and the input bundle for the double-product example.
// Tables are generated rather than hard-coded so they stay consistent with
// the construction code.

#include <loopforge/cayley.hpp>
#include <loopforge/cocycle.hpp>
#include <loopforge/products.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loopforge {

inline CayleyTable cyclic_group(int n) {
    if (n < 1) throw TableError("cyclic group order must be >= 1");
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) flat[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    return CayleyTable(n, std::move(flat));
}

inline CayleyTable klein_four() {
    return product_table(cyclic_group(2), cyclic_group(2));
}

// All six permutations of three points in lexicographic order of their
// images, multiplied by composition; the identity lands at index 0.
inline CayleyTable symmetric_group_3() {
    std::vector<std::vector<int>> elems = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto find = [&](const std::vector<int>& im) {
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == im) return static_cast<int>(i);
        throw TableError("composition escaped the element list");
    };
    const int n = 6;
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> im(3);
            for (int x = 0; x < 3; ++x) im[x] = elems[a][elems[b][x]];
            flat[static_cast<std::size_t>(a) * n + b] = find(im);
        }
    return CayleyTable(n, std::move(flat));
}

// Rotations and reflections of the square: element i*2 + j is r^i s^j with
// r^4 = s^2 = e and s r s = r^-1.
inline CayleyTable dihedral_8() {
    const int n = 8;
    auto idx = [](int i, int j) { return i * 2 + j; };
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 2; ++l) {
                    const int shift = j ? (4 - k) % 4 : k;
                    flat[static_cast<std::size_t>(idx(i, j)) * n + idx(k, l)] =
                        idx((i + shift) % 4, (j + l) % 2);
                }
    return CayleyTable(n, std::move(flat));
}

// Unit quaternions {±1, ±i, ±j, ±k}; element axis*2 + sign with axes ordered
// 1, i, j, k and sign bit 1 meaning the negative unit.
inline CayleyTable quaternion_8() {
    // mult[a][b] = {sign, axis} for the product of positive units a*b
    static constexpr int sign[4][4] = {{0, 0, 0, 0},
                                       {0, 1, 0, 1},
                                       {0, 1, 1, 0},
                                       {0, 0, 1, 1}};
    static constexpr int axis[4][4] = {{0, 1, 2, 3},
                                       {1, 0, 3, 2},
                                       {2, 3, 0, 1},
                                       {3, 2, 1, 0}};
    const int n = 8;
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < 4; ++a)
        for (int sa = 0; sa < 2; ++sa)
            for (int b = 0; b < 4; ++b)
                for (int sb = 0; sb < 2; ++sb) {
                    const int s = (sa + sb + sign[a][b]) % 2;
                    flat[static_cast<std::size_t>(a * 2 + sa) * n + (b * 2 + sb)] =
                        axis[a][b] * 2 + s;
                }
    return CayleyTable(n, std::move(flat));
}

inline Permutation inversion_permutation(const CayleyTable& g) {
    if (!is_group(g)) throw TableError("inversion map requires a group");
    const int e = *g.identity();
    std::vector<int> im(static_cast<std::size_t>(g.order()));
    for (int x = 0; x < g.order(); ++x) im[x] = g.left_divide(x, e);
    return Permutation(std::move(im));
}

// Six-element loop Z3 x_phi Z2 with phi(1,1) = 1 the only nonzero value.
// Its sigma map has a non-multiplicative first power, so exactly the odd m
// pass the inverse identity.
inline OddInvertibleLoop twisted_z3z2_loop() {
    CocycleMap c;
    c.g_order = 3;
    c.v_order = 2;
    c.phi.assign(9, 0);
    c.phi[1 * 3 + 1] = 1;
    return odd_invertible_loop(cyclic_group(3), cyclic_group(2), c);
}

// Inputs for the double-product example: Z3 and Z2 acting on each other
// (the nontrivial element of Z2 inverts Z3, Z3 acts trivially back), both
// extended by Z2 fibers along the zero maps.
struct LambdaInputs {
    CayleyTable g;
    CayleyTable h;
    GroupActionPair actions;
    CayleyTable v;
    CayleyTable w;
    CocycleMap phi;
    CocycleMap chi;
};

inline LambdaInputs lambda_s3_inputs() {
    CayleyTable g = cyclic_group(3);
    CayleyTable h = cyclic_group(2);
    GroupActionPair a = GroupActionPair::trivial(3, 2);
    for (int x = 0; x < 3; ++x) a.tri[static_cast<std::size_t>(1) * 3 + x] = (3 - x) % 3;
    CocycleMap zero_gv{3, 2, std::vector<int>(9, 0), std::nullopt};
    CocycleMap zero_hw{2, 2, std::vector<int>(4, 0), std::nullopt};
    return LambdaInputs{std::move(g),       std::move(h), std::move(a),
                        cyclic_group(2),    cyclic_group(2),
                        std::move(zero_gv), std::move(zero_hw)};
}

inline LambdaBundle lambda_s3_bundle(bool strict_literal = false) {
    LambdaInputs in = lambda_s3_inputs();
    return lambda_example(in.g, in.h, in.actions, in.v, in.w, in.phi, in.chi,
                          strict_literal);
}

struct PresetLoop {
    std::string name;
    std::string description;
    Loop loop;
    Permutation j;
};

inline std::vector<std::string> preset_names() {
    return {"z1", "z2", "z3",  "z4", "z5", "z6",        "z7",
            "z8", "klein", "s3", "d4", "q8", "odd-z3z2"};
}

inline std::optional<PresetLoop> find_preset(const std::string& name) {
    auto group_preset = [&](CayleyTable t, std::string description) {
        Permutation j = inversion_permutation(t);
        return PresetLoop{name, std::move(description), Loop(std::move(t)), std::move(j)};
    };
    if (name.size() == 2 && name[0] == 'z' && name[1] >= '1' && name[1] <= '8')
        return group_preset(cyclic_group(name[1] - '0'),
                            std::string("cyclic group of order ") + name[1]);
    if (name == "klein") return group_preset(klein_four(), "Klein four-group");
    if (name == "s3") return group_preset(symmetric_group_3(), "symmetric group on three points");
    if (name == "d4") return group_preset(dihedral_8(), "dihedral group of order 8");
    if (name == "q8") return group_preset(quaternion_8(), "quaternion group");
    if (name == "odd-z3z2") {
        OddInvertibleLoop l = twisted_z3z2_loop();
        return PresetLoop{name, "six-element twisted loop over Z3, odd m only",
                          std::move(l.loop), std::move(l.j)};
    }
    return std::nullopt;
}

}  // namespace loopforge
