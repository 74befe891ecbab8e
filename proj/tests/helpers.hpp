#pragma once

// Small fixture builders shared by the test suites.

#include "algkit/fincat.hpp"

namespace algkit::testing {

// The poset 0 -> 1 -> ... -> n-1 as a category (all composites forced).
inline FinCategory chain_category(int n) {
    FinCategory c;
    for (int i = 0; i < n; ++i) c.add_object(std::to_string(i));
    // One morphism i -> j for every i <= j.
    std::vector<std::vector<int>> mor(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            mor[i][j] = c.add_morphism("m" + std::to_string(i) + std::to_string(j), i, j);
    c.identity.resize(n);
    for (int i = 0; i < n; ++i) c.identity[i] = mor[i][i];
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k)
                c.comp_table[mor[j][k]][mor[i][j]] = mor[i][k];
    return c;
}

// Two objects with a parallel pair of arrows a,b: 0 -> 1.
inline FinCategory parallel_pair_category() {
    FinCategory c;
    c.add_object("x");
    c.add_object("y");
    int idx = c.add_morphism("idx", 0, 0);
    int idy = c.add_morphism("idy", 1, 1);
    int a = c.add_morphism("a", 0, 1);
    int b = c.add_morphism("b", 0, 1);
    c.identity = {idx, idy};
    c.comp_table[idx][idx] = idx;
    c.comp_table[idy][idy] = idy;
    c.comp_table[a][idx] = a;
    c.comp_table[idy][a] = a;
    c.comp_table[b][idx] = b;
    c.comp_table[idy][b] = b;
    return c;
}

// One object with an idempotent endomorphism s (s∘s = s).
inline FinCategory idempotent_monoid_category() {
    FinCategory c;
    c.add_object("*");
    int e = c.add_morphism("id", 0, 0);
    int s = c.add_morphism("s", 0, 0);
    c.identity = {e};
    c.comp_table[e][e] = e;
    c.comp_table[e][s] = s;
    c.comp_table[s][e] = s;
    c.comp_table[s][s] = s;
    return c;
}

// A profunctor A ⇸ B built as a finite sum of "matrix representables":
// H(b,a) = ⨿_i B(b, x_i) × A(y_i, a). Always bifunctorial.
inline Profunctor representable_sum_profunctor(const FinCategory& A, const FinCategory& B,
                                               const std::vector<std::pair<int, int>>& xy) {
    Profunctor H;
    H.A = &A;
    H.B = &B;
    H.allocate();
    // Element (b,a) index layout: concatenation over i of B.hom(b,x_i) × A.hom(y_i,a).
    auto block_sizes = [&](int b, int a) {
        std::vector<std::pair<int, int>> out;  // (|B(b,x_i)|, |A(y_i,a)|)
        for (auto [x, y] : xy)
            out.emplace_back(static_cast<int>(B.hom(b, x).size()),
                             static_cast<int>(A.hom(y, a).size()));
        return out;
    };
    for (int b = 0; b < B.n_objects(); ++b)
        for (int a = 0; a < A.n_objects(); ++a) {
            int total = 0;
            for (auto [p, q] : block_sizes(b, a)) total += p * q;
            H.size[b][a] = total;
        }
    H.allocate_actions();
    auto decode = [&](int b, int a, int e, int* blk, int* u, int* v) {
        auto bs = block_sizes(b, a);
        for (std::size_t i = 0; i < bs.size(); ++i) {
            int sz = bs[i].first * bs[i].second;
            if (e < sz) {
                *blk = static_cast<int>(i);
                *u = e / bs[i].second;
                *v = e % bs[i].second;
                return;
            }
            e -= sz;
        }
        assert(false);
    };
    auto encode = [&](int b, int a, int blk, int u, int v) {
        auto bs = block_sizes(b, a);
        int off = 0;
        for (int i = 0; i < blk; ++i) off += bs[i].first * bs[i].second;
        return off + u * bs[blk].second + v;
    };
    auto find_in = [](const std::vector<int>& vec, int m) {
        for (std::size_t i = 0; i < vec.size(); ++i)
            if (vec[i] == m) return static_cast<int>(i);
        assert(false);
        return -1;
    };
    for (int f = 0; f < A.n_morphisms(); ++f)
        for (int b = 0; b < B.n_objects(); ++b)
            for (int e = 0; e < H.size[b][A.src(f)]; ++e) {
                int blk, u, v;
                decode(b, A.src(f), e, &blk, &u, &v);
                auto [x, y] = xy[blk];
                int vm = A.hom(y, A.src(f))[v];
                int vv = find_in(A.hom(y, A.dst(f)), A.compose(f, vm));
                H.left_act[f][b][e] = encode(b, A.dst(f), blk, u, vv);
            }
    for (int g = 0; g < B.n_morphisms(); ++g)
        for (int a = 0; a < A.n_objects(); ++a)
            for (int e = 0; e < H.size[B.dst(g)][a]; ++e) {
                int blk, u, v;
                decode(B.dst(g), a, e, &blk, &u, &v);
                auto [x, y] = xy[blk];
                int um = B.hom(B.dst(g), x)[u];
                int uu = find_in(B.hom(B.src(g), x), B.compose(um, g));
                H.right_act[g][a][e] = encode(B.src(g), a, blk, uu, v);
            }
    return H;
}

}  // namespace algkit::testing
