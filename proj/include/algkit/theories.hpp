#pragma once

// Clones, non-symmetric and symmetric operads (finite arity-truncated
// windows), their finite-set models, and the correspondence with monoids in
// the substitution monoidal category of graded sets over all functions.

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"
#include "terms.hpp"
#include "util.hpp"

namespace algkit {

// ---------------------------------------------------------------------------
// Permutations and block operations
// ---------------------------------------------------------------------------

// A permutation of {1,...,n}; img[i-1] = u(i).
struct Perm {
    int n = 0;
    std::vector<int> img;

    int operator()(int i) const { return img[i - 1]; }
    bool operator==(const Perm& o) const { return n == o.n && img == o.img; }
    bool operator<(const Perm& o) const { return img < o.img; }
};

inline Perm perm_id(int n) {
    Perm u;
    u.n = n;
    u.img.resize(n);
    std::iota(u.img.begin(), u.img.end(), 1);
    return u;
}

// (v · u)(i) = v(u(i)) — u first, then v.
inline Perm perm_compose(const Perm& v, const Perm& u) {
    Perm w;
    w.n = u.n;
    for (int i = 1; i <= u.n; ++i) w.img.push_back(v(u(i)));
    return w;
}

inline Perm perm_inverse(const Perm& u) {
    Perm w;
    w.n = u.n;
    w.img.assign(u.n, 0);
    for (int i = 1; i <= u.n; ++i) w.img[u(i) - 1] = i;
    return w;
}

inline std::vector<Perm> symmetric_group(int n) {
    std::vector<Perm> out;
    for (auto& v : all_permutations(n)) {
        Perm u;
        u.n = n;
        for (int x : v) u.img.push_back(x + 1);
        out.push_back(std::move(u));
    }
    return out;
}

// (u1 ⊕ ... ⊕ uk): permute inside each block. For j = n_1+...+n_{i-1}+j',
// the image is n_1+...+n_{i-1}+u_i(j').
inline Perm block_sum(const std::vector<Perm>& us) {
    Perm w;
    for (const auto& u : us) w.n += u.n;
    int offset = 0;
    for (const auto& u : us) {
        for (int jp = 1; jp <= u.n; ++jp) w.img.push_back(offset + u(jp));
        offset += u.n;
    }
    return w;
}

// v_{n_1,...,n_k}: permute the blocks themselves by v ∈ S_k. For the j'-th
// element of block i, the image is n_{v^{-1}(1)}+...+n_{v^{-1}(v(i)-1)}+j'.
inline Perm block_perm(const Perm& v, const std::vector<int>& sizes) {
    Perm w;
    for (int s : sizes) w.n += s;
    w.img.assign(w.n, 0);
    Perm vinv = perm_inverse(v);
    int pos = 0;  // start of block i (0-based)
    for (int i = 1; i <= v.n; ++i) {
        int offset = 0;
        for (int t = 1; t < v(i); ++t) offset += sizes[vinv(t) - 1];
        for (int jp = 1; jp <= sizes[i - 1]; ++jp) w.img[pos + jp - 1] = offset + jp;
        pos += sizes[i - 1];
    }
    return w;
}

// ---------------------------------------------------------------------------
// Clones (arity-truncated)
// ---------------------------------------------------------------------------

// A clone truncated at max_arity N: carriers T_0..T_N with projections and
// substitution composition. Composite entries may be -1 ("DepthOverflow") in
// depth-truncated free/quotient clones; axiom checks skip and count them.
struct Clone {
    int max_arity = 0;
    std::vector<int> card;               // card[n] = |T_n|
    std::vector<std::vector<int>> proj;  // proj[n][i-1] = p_i^(n)
    // compose(k, n, phi, thetas): phi in T_k, thetas in (T_n)^k -> T_n or -1.
    std::function<int(int, int, int, const std::vector<int>&)> comp;

    int compose(int k, int n, int phi, const std::vector<int>& thetas) const {
        return comp(k, n, phi, thetas);
    }

    // Functorial action along u: [m] -> [n] (1-based images), derived from
    // projections: T_u(theta) = theta o (p_{u(1)}, ..., p_{u(m)}).
    int act(const std::vector<int>& u, int n, int m, int theta) const {
        std::vector<int> ps;
        for (int i = 0; i < m; ++i) ps.push_back(proj[n][u[i] - 1]);
        return compose(m, n, theta, ps);
    }
};

inline CheckReport check_clone(const Clone& C, long long cap = 0) {
    if (cap == 0) cap = max_search_cap();
    CheckReport rep;
    int N = C.max_arity;
    long long done = 0, partial = 0;
    auto budget = [&]() { return done < cap; };

    // (CA1) p_j o (theta_1..theta_k) = theta_j.
    for (int k = 0; k <= N && budget(); ++k)
        for (int n = 0; n <= N && budget(); ++n) {
            std::vector<std::size_t> radix(k, static_cast<std::size_t>(C.card[n]));
            for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
                std::vector<int> thetas(tup.begin(), tup.end());
                for (int j = 1; j <= k; ++j) {
                    ++done;
                    int got = C.compose(k, n, C.proj[k][j - 1], thetas);
                    if (got == -1)
                        ++partial;
                    else if (got != thetas[j - 1] && rep.ok)
                        rep.fail("(CA1) fails at k=" + std::to_string(k) + " n=" + std::to_string(n));
                }
                return budget();
            });
        }

    // (CA2) theta o (p_1..p_n) = theta.
    for (int n = 0; n <= N && budget(); ++n)
        for (int theta = 0; theta < C.card[n]; ++theta) {
            ++done;
            int got = C.compose(n, n, theta, C.proj[n]);
            if (got == -1)
                ++partial;
            else if (got != theta && rep.ok)
                rep.fail("(CA2) fails at n=" + std::to_string(n));
        }

    // (CA3) substitution associativity.
    bool ca3_reported = false;
    for (int l = 0; l <= N && budget(); ++l)
        for (int k = 0; k <= N && budget(); ++k)
            for (int n = 0; n <= N && budget(); ++n) {
                std::vector<std::size_t> radix;
                radix.push_back(C.card[l]);
                for (int i = 0; i < l; ++i) radix.push_back(C.card[k]);
                for (int i = 0; i < k; ++i) radix.push_back(C.card[n]);
                for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
                    ++done;
                    int psi = static_cast<int>(tup[0]);
                    std::vector<int> phis(tup.begin() + 1, tup.begin() + 1 + l);
                    std::vector<int> thetas(tup.begin() + 1 + l, tup.end());
                    std::vector<int> inner;
                    bool part = false;
                    for (int i = 0; i < l; ++i) {
                        int c = C.compose(k, n, phis[i], thetas);
                        if (c == -1) part = true;
                        inner.push_back(c);
                    }
                    int outer = C.compose(l, k, psi, phis);
                    int lhs = part ? -1 : C.compose(l, n, psi, inner);
                    int rhs = (outer == -1) ? -1 : C.compose(k, n, outer, thetas);
                    if (part || outer == -1 || lhs == -1 || rhs == -1)
                        ++partial;
                    else if (lhs != rhs && !ca3_reported) {
                        rep.fail("(CA3) fails at l=" + std::to_string(l) + " k=" +
                                 std::to_string(k) + " n=" + std::to_string(n));
                        ca3_reported = true;
                    }
                    return budget();
                });
            }
    rep.counts["instances"] = done;
    rep.counts["partial"] = partial;
    if (!budget()) rep.counts["capped"] = 1;
    return rep;
}

// The clone of all finitary operations on a finite set A: T_n = all functions
// A^n -> A, tabulated little-endian (input i has weight |A|^i).
inline Clone endo_clone(int a, int N) {
    Clone C;
    C.max_arity = N;
    long double raw = 0;
    for (int n = 0; n <= N; ++n)
        raw += powl(static_cast<long double>(a), static_cast<long double>(pow_ll(a, n)));
    if (raw > static_cast<long double>(max_search_cap()))
        throw SearchSpaceTooLarge("endo_clone carrier too large");
    for (int n = 0; n <= N; ++n)
        C.card.push_back(static_cast<int>(pow_ll(a, pow_ll(a, n))));
    // A function table f: A^n -> A is encoded as sum f(t) * a^(index of t).
    auto table_entry = [a](long long code, long long cell) {
        while (cell-- > 0) code /= a;
        return static_cast<int>(code % a);
    };
    C.proj.assign(N + 1, {});
    for (int n = 0; n <= N; ++n)
        for (int i = 1; i <= n; ++i) {
            long long cells = pow_ll(a, n), code = 0, wt = 1;
            for (long long t = 0; t < cells; ++t) {
                code += ((t / pow_ll(a, i - 1)) % a) * wt;
                wt *= a;
            }
            C.proj[n].push_back(static_cast<int>(code));
        }
    C.comp = [a, table_entry](int k, int n, int phi, const std::vector<int>& thetas) {
        long long cells = pow_ll(a, n), code = 0, wt = 1;
        for (long long t = 0; t < cells; ++t) {
            // Evaluate thetas at input t, then phi at the resulting tuple.
            long long idx = 0, w = 1;
            for (int i = 0; i < k; ++i) {
                idx += w * table_entry(thetas[i], t);
                w *= a;
            }
            code += static_cast<long long>(table_entry(phi, idx)) * wt;
            wt *= a;
        }
        return static_cast<int>(code);
    };
    return C;
}

// ---------------------------------------------------------------------------
// Free and quotient clones
// ---------------------------------------------------------------------------

// A clone whose carrier is an explicit term universe (used by free and
// quotient clones, which need to expose their elements).
struct TermClone {
    Clone clone;
    GradedSet signature;
    int depth = 0;
    std::vector<std::vector<Term>> elems;  // elems[n] = carrier of T_n
    // index_of[n]: term -> index (only for canonical representatives).
    std::vector<std::map<Term, int, TermLess>> index;

    int find(int n, const Term& t) const {
        auto it = index[n].find(t);
        return it == index[n].end() ? -1 : it->second;
    }
};

// The free clone on a graded signature, truncated at arity N and term depth
// `depth`. Composition exceeding the depth bound yields -1 (DepthOverflow).
inline TermClone free_clone(const GradedSet& sig, int N, int depth) {
    TermClone F;
    F.signature = sig;
    F.depth = depth;
    F.clone.max_arity = N;
    F.elems.resize(N + 1);
    F.index.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        F.elems[n] = enumerate_terms(sig, n, depth);
        for (std::size_t i = 0; i < F.elems[n].size(); ++i)
            F.index[n][F.elems[n][i]] = static_cast<int>(i);
        F.clone.card.push_back(static_cast<int>(F.elems[n].size()));
    }
    F.clone.proj.assign(N + 1, {});
    for (int n = 0; n <= N; ++n)
        for (int i = 1; i <= n; ++i) F.clone.proj[n].push_back(F.find(n, Term::var(i, n)));
    // Capture the term tables by value; composition is substitution.
    auto elems = std::make_shared<std::vector<std::vector<Term>>>(F.elems);
    auto index = std::make_shared<std::vector<std::map<Term, int, TermLess>>>(F.index);
    F.clone.comp = [elems, index, depth](int k, int n, int phi, const std::vector<int>& thetas) {
        std::vector<Term> args;
        for (int i = 0; i < k; ++i) args.push_back((*elems)[n][thetas[i]]);
        Term res = substitute((*elems)[k][phi], args, n);
        if (term_depth(res) > depth) return -1;
        auto it = (*index)[n].find(res);
        return it == (*index)[n].end() ? -1 : it->second;
    };
    return F;
}

// The unit of the free clone: sigma |-> sigma(x1,...,xn).
inline Term clone_unit_term(const std::string& sym, int n) {
    std::vector<Term> vars;
    for (int i = 1; i <= n; ++i) vars.push_back(Term::var(i, n));
    return Term::app(sym, std::move(vars), n);
}

// The clone homomorphism out of a free clone determined by a graded map
// f: Sigma -> S (symbol of arity n |-> element of S_n). Computed by structural
// recursion, which also certifies uniqueness: every value is forced.
struct CloneHom {
    std::vector<std::vector<int>> image;  // image[n][i] = value in S_n of elems[n][i]
};

inline int extend_eval(const Term& t, const std::map<std::string, int>& f, const Clone& S) {
    int n = t.ambient;
    if (t.is_var) return S.proj[n][t.var_index - 1];
    std::vector<int> vals;
    for (const auto& a : t.args) vals.push_back(extend_eval(a, f, S));
    return S.compose(static_cast<int>(t.args.size()), n, f.at(t.sym), vals);
}

inline CloneHom extend(const TermClone& F, const std::map<std::string, int>& f, const Clone& S) {
    CloneHom h;
    h.image.resize(F.clone.max_arity + 1);
    for (int n = 0; n <= F.clone.max_arity; ++n)
        for (const auto& t : F.elems[n]) h.image[n].push_back(extend_eval(t, f, S));
    return h;
}

// Verifies that `h` commutes with projections and all defined composites.
inline CheckReport check_clone_hom(const TermClone& F, const CloneHom& h, const Clone& S,
                                   long long cap = 0) {
    if (cap == 0) cap = max_search_cap();
    CheckReport rep;
    int N = F.clone.max_arity;
    long long done = 0;
    for (int n = 0; n <= N; ++n)
        for (int i = 1; i <= n; ++i)
            if (h.image[n][F.clone.proj[n][i - 1]] != S.proj[n][i - 1])
                rep.fail("projection not preserved");
    for (int k = 0; k <= N && done < cap; ++k)
        for (int n = 0; n <= N && done < cap; ++n) {
            std::vector<std::size_t> radix;
            radix.push_back(F.clone.card[k]);
            for (int i = 0; i < k; ++i) radix.push_back(F.clone.card[n]);
            for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
                ++done;
                int phi = static_cast<int>(tup[0]);
                std::vector<int> thetas(tup.begin() + 1, tup.end());
                int c = F.clone.compose(k, n, phi, thetas);
                if (c == -1) return done < cap;  // DepthOverflow: nothing to check
                std::vector<int> himg;
                for (int t : thetas) himg.push_back(h.image[n][t]);
                if (h.image[n][c] != S.compose(k, n, h.image[k][phi], himg) && rep.ok)
                    rep.fail("composition not preserved at k=" + std::to_string(k) +
                             " n=" + std::to_string(n));
                return done < cap;
            });
        }
    rep.counts["instances"] = done;
    return rep;
}

// Quotient of a free clone by the equational theorems reachable within the
// given proof budget. Explicitly INCOMPLETE: classes may be coarser than
// reported, since provable equality is only semi-decidable.
struct QuotientClone {
    Clone clone;
    TermClone free_part;
    std::vector<std::vector<int>> cls;      // cls[n][raw free index] -> class id
    std::vector<std::vector<int>> rep;      // rep[n][class id] -> raw free index
    int depth_budget = 0;
    long long size_budget = 0;
    bool complete = false;  // always false unless E is empty
};

inline QuotientClone quotient_clone(const Presentation& P, int N, int depth, int depth_budget,
                                    long long size_budget) {
    QuotientClone Q;
    Q.free_part = free_clone(P.signature, N, depth);
    Q.depth_budget = depth_budget;
    Q.size_budget = size_budget;
    Q.complete = P.axioms.empty();
    const TermClone& F = Q.free_part;
    Q.cls.resize(N + 1);
    Q.rep.resize(N + 1);
    Q.clone.max_arity = N;
    // Lemma saturation: a derived equational theorem between small terms,
    // once proved, acts as a rewrite schema in later rounds (its ambient
    // variables match arbitrary subterms). This reaches classical multi-step
    // theorems (e.g. double inverse in groups) that a single breadth-first
    // pass cannot afford.
    std::vector<Equation> derived = P.axioms;
    std::set<std::pair<std::string, std::string>> derived_keys;
    for (const auto& ax : P.axioms)
        derived_keys.insert({term_to_string(ax.lhs), term_to_string(ax.rhs)});
    const int rounds = 2;
    const int lemma_size = 7;

    for (int round = 0; round < rounds; ++round) {
        Presentation Pcur{P.signature, derived};
        bool last = round + 1 == rounds;
        for (int n = 0; n <= N; ++n) {
            std::size_t m = F.elems[n].size();
            // Shared rewrite closure: explore the rewrite graph around the
            // whole carrier once and read off connected components; every
            // merge corresponds to a replayable rewrite chain.
            std::map<Term, std::size_t, TermLess> node;
            UnionFind uf;
            std::queue<Term> queue;
            auto id_of = [&](const Term& t) {
                auto it = node.find(t);
                if (it != node.end()) return it->second;
                std::size_t id = uf.add();
                node.emplace(t, id);
                return id;
            };
            int size_cap = 0;
            for (std::size_t i = 0; i < m; ++i) {
                id_of(F.elems[n][i]);
                size_cap = std::max(size_cap, term_size(F.elems[n][i]));
                queue.push(F.elems[n][i]);
            }
            size_cap += 4;
            auto pool = enumerate_terms(P.signature, n, 1);
            long long explored = 0;
            int waves = 0;
            while (!queue.empty() && explored < size_budget && waves < depth_budget) {
                std::queue<Term> next;
                while (!queue.empty() && explored < size_budget) {
                    Term t = queue.front();
                    queue.pop();
                    std::vector<detail::RewriteStep> steps;
                    std::vector<int> path;
                    detail::all_steps(t, Pcur, path, t, pool, steps);
                    for (auto& st : steps) {
                        if (term_size(st.result) > size_cap) continue;
                        ++explored;
                        bool fresh = node.find(st.result) == node.end();
                        uf.unite(id_of(t), id_of(st.result));
                        if (fresh) next.push(st.result);
                    }
                }
                queue = std::move(next);
                ++waves;
            }
            // Restrict the closure to the carrier.
            UnionFind carrier_uf(m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j)
                    if (uf.find(node.at(F.elems[n][i])) == uf.find(node.at(F.elems[n][j])))
                        carrier_uf.unite(i, j);
            if (!last) {
                // Harvest small equivalent pairs as lemmas for the next round.
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = i + 1; j < m; ++j) {
                        if (carrier_uf.find(i) != carrier_uf.find(j)) continue;
                        const Term &a = F.elems[n][i], &b = F.elems[n][j];
                        if (term_size(a) > lemma_size || term_size(b) > lemma_size) continue;
                        auto key = std::make_pair(term_to_string(a), term_to_string(b));
                        if (derived_keys.insert(key).second) derived.push_back({a, b, n});
                    }
                continue;
            }
            std::size_t nc = 0;
            Q.cls[n] = [&] {
                auto cl = carrier_uf.classes(&nc);
                return std::vector<int>(cl.begin(), cl.end());
            }();
            Q.rep[n].assign(nc, -1);
            for (std::size_t i = 0; i < m; ++i)
                if (Q.rep[n][Q.cls[n][i]] == -1) Q.rep[n][Q.cls[n][i]] = static_cast<int>(i);
            Q.clone.card.push_back(static_cast<int>(nc));
        }
    }
    Q.clone.proj.assign(N + 1, {});
    for (int n = 0; n <= N; ++n)
        for (int i = 1; i <= n; ++i)
            Q.clone.proj[n].push_back(Q.cls[n][F.clone.proj[n][i - 1]]);
    auto cls = std::make_shared<std::vector<std::vector<int>>>(Q.cls);
    auto repv = std::make_shared<std::vector<std::vector<int>>>(Q.rep);
    Clone base = F.clone;
    Q.clone.comp = [cls, repv, base](int k, int n, int phi, const std::vector<int>& thetas) {
        std::vector<int> raw;
        for (int t : thetas) raw.push_back((*repv)[n][t]);
        int c = base.comp(k, n, (*repv)[k][phi], raw);
        return c == -1 ? -1 : (*cls)[n][c];
    };
    return Q;
}

// ---------------------------------------------------------------------------
// Monoids in truncated [F, Set] and the clone correspondence
// ---------------------------------------------------------------------------

// A monoid in the substitution monoidal category of graded sets indexed by
// finite sets and all functions, truncated at max_arity. The multiplication is
// exposed on coend representatives: mult(k, psi, thetas) with psi in X_k and
// thetas in (X_n)^k; well-definedness over the coend relation
// (X_u(psi), thetas) ~ (psi, thetas o u) is a checkable property.
struct FSubstMonoid {
    int max_arity = 0;
    std::vector<int> card;
    // act(u, m, n, x): functorial action along u: [m] -> [n] (1-based images).
    std::function<int(const std::vector<int>&, int, int, int)> act;
    int unit = 0;  // the element of X_1 picked out by the unit at id_[1]
    std::function<int(int, int, int, const std::vector<int>&)> mult;
};

inline Clone subst_monoid_to_clone(const FSubstMonoid& M) {
    Clone C;
    C.max_arity = M.max_arity;
    C.card = M.card;
    C.proj.assign(M.max_arity + 1, {});
    for (int n = 0; n <= M.max_arity; ++n)
        for (int i = 1; i <= n; ++i) C.proj[n].push_back(M.act({i}, 1, n, M.unit));
    C.comp = M.mult;
    return C;
}

inline FSubstMonoid clone_to_subst_monoid(const Clone& C) {
    FSubstMonoid M;
    M.max_arity = C.max_arity;
    M.card = C.card;
    Clone Ccopy = C;
    M.act = [Ccopy](const std::vector<int>& u, int m, int n, int x) {
        return Ccopy.act(u, n, m, x);
    };
    M.unit = C.proj[1].empty() ? -1 : C.proj[1][0];
    M.mult = C.comp;
    return M;
}

// Checks the monoid laws on representatives, including well-definedness of
// the multiplication over the coend relation.
inline CheckReport check_subst_monoid(const FSubstMonoid& M, long long cap = 0) {
    if (cap == 0) cap = max_search_cap();
    CheckReport rep;
    int N = M.max_arity;
    long long done = 0;

    // Functoriality of the action: identities and composition u then v.
    for (int n = 0; n <= N; ++n) {
        std::vector<int> idu;
        for (int i = 1; i <= n; ++i) idu.push_back(i);
        for (int x = 0; x < M.card[n]; ++x)
            if (M.act(idu, n, n, x) != x) {
                rep.fail("action does not preserve identities");
                break;
            }
    }
    for (int m = 0; m <= N && done < cap; ++m)
        for (int n = 0; n <= N && done < cap; ++n)
            for (int p = 0; p <= N && done < cap; ++p)
                for (const auto& u : all_functions(m, n))
                    for (const auto& v : all_functions(n, p)) {
                        std::vector<int> u1, v1, vu1;
                        for (int i = 0; i < m; ++i) u1.push_back(u[i] + 1);
                        for (int i = 0; i < n; ++i) v1.push_back(v[i] + 1);
                        for (int i = 0; i < m; ++i) vu1.push_back(v[u[i]] + 1);
                        for (int x = 0; x < M.card[m] && done < cap; ++x) {
                            ++done;
                            if (M.act(vu1, m, p, x) != M.act(v1, n, p, M.act(u1, m, n, x))) {
                                rep.fail("action not functorial");
                                done = cap;
                            }
                        }
                    }

    // Coend well-definedness: mult(X_u(psi), thetas) = mult(psi, thetas o u).
    bool coend_reported = false;
    for (int m = 0; m <= N && done < cap; ++m)
        for (int k = 0; k <= N && done < cap; ++k)
            for (int n = 0; n <= N && done < cap; ++n)
                for (const auto& u : all_functions(m, k)) {
                    std::vector<int> u1;
                    for (int i = 0; i < m; ++i) u1.push_back(u[i] + 1);
                    std::vector<std::size_t> radix;
                    radix.push_back(M.card[m]);
                    for (int i = 0; i < k; ++i) radix.push_back(M.card[n]);
                    for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
                        ++done;
                        int psi = static_cast<int>(tup[0]);
                        std::vector<int> thetas(tup.begin() + 1, tup.end());
                        // thetas o u: the i-th component is theta_{u(i)}.
                        std::vector<int> comp_u;
                        for (int i = 0; i < m; ++i) comp_u.push_back(thetas[u[i]]);
                        int lhs = M.mult(k, n, M.act(u1, m, k, psi), thetas);
                        int rhs = M.mult(m, n, psi, comp_u);
                        if (lhs != -1 && rhs != -1 && lhs != rhs && !coend_reported) {
                            rep.fail("multiplication not constant on coend classes");
                            coend_reported = true;
                        }
                        return done < cap;
                    });
                }

    // Unit laws. Left: mult(1, unit, (x)) = x. Right: mult(n, x, unit
    // transported to each coordinate) = x.
    for (int n = 0; n <= N; ++n)
        for (int x = 0; x < M.card[n]; ++x) {
            if (M.mult(1, n, M.unit, {x}) != x) {
                rep.fail("left unit law fails");
                break;
            }
            std::vector<int> units;
            for (int i = 1; i <= n; ++i) units.push_back(M.act({i}, 1, n, M.unit));
            if (M.mult(n, n, x, units) != x) {
                rep.fail("right unit law fails");
                break;
            }
        }

    // Associativity on representatives (same instances as clone (CA3)).
    bool assoc_reported = false;
    for (int l = 0; l <= N && done < cap; ++l)
        for (int k = 0; k <= N && done < cap; ++k)
            for (int n = 0; n <= N && done < cap; ++n) {
                std::vector<std::size_t> radix;
                radix.push_back(M.card[l]);
                for (int i = 0; i < l; ++i) radix.push_back(M.card[k]);
                for (int i = 0; i < k; ++i) radix.push_back(M.card[n]);
                for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
                    ++done;
                    int psi = static_cast<int>(tup[0]);
                    std::vector<int> phis(tup.begin() + 1, tup.begin() + 1 + l);
                    std::vector<int> thetas(tup.begin() + 1 + l, tup.end());
                    std::vector<int> inner;
                    bool part = false;
                    for (int i = 0; i < l; ++i) {
                        int c = M.mult(k, n, phis[i], thetas);
                        if (c == -1) part = true;
                        inner.push_back(c);
                    }
                    int outer = M.mult(l, k, psi, phis);
                    if (!part && outer != -1) {
                        int lhs = M.mult(l, n, psi, inner);
                        int rhs = M.mult(k, n, outer, thetas);
                        if (lhs != -1 && rhs != -1 && lhs != rhs && !assoc_reported) {
                            rep.fail("associativity fails");
                            assoc_reported = true;
                        }
                    }
                    return done < cap;
                });
            }
    rep.counts["instances"] = done;
    if (done >= cap) rep.counts["capped"] = 1;
    return rep;
}

// ---------------------------------------------------------------------------
// Non-symmetric and symmetric operads (arity-truncated)
// ---------------------------------------------------------------------------

// Composition is defined only when the output arity n_1+...+n_k stays within
// the window; comp returns -1 beyond it.
struct NsOperad {
    int max_arity = 0;
    std::vector<int> card;
    int unit = 0;  // element of T_1
    // comp(k, phi, arities, thetas): phi in T_k, theta_i in T_{arities[i]}.
    std::function<int(int, int, const std::vector<int>&, const std::vector<int>&)> comp;
};

struct SymOperad {
    NsOperad ns;
    // action(u, n, theta): u in S_n acting on theta in T_n.
    std::function<int(const Perm&, int, int)> act;
};

namespace detail {
// All tuples (n_1,...,n_k) of naturals with sum <= limit.
inline void arity_tuples(int k, int limit, std::vector<int>& cur,
                         const std::function<bool(const std::vector<int>&)>& fn, bool& go) {
    if (!go) return;
    if (static_cast<int>(cur.size()) == k) {
        if (!fn(cur)) go = false;
        return;
    }
    int used = 0;
    for (int v : cur) used += v;
    for (int n = 0; n + used <= limit && go; ++n) {
        cur.push_back(n);
        arity_tuples(k, limit, cur, fn, go);
        cur.pop_back();
    }
}
inline void for_arity_tuples(int k, int limit, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> cur;
    bool go = true;
    arity_tuples(k, limit, cur, fn, go);
}
}  // namespace detail

inline CheckReport check_ns_operad(const NsOperad& O, long long cap = 0) {
    if (cap == 0) cap = max_search_cap();
    CheckReport rep;
    int N = O.max_arity;
    long long done = 0;

    // (NA1) id o (theta) = theta; (NA2) theta o (id,...,id) = theta.
    for (int n = 0; n <= N; ++n)
        for (int t = 0; t < O.card[n]; ++t) {
            int a = O.comp(1, O.unit, {n}, {t});
            if (a != -1 && a != t) rep.fail("(NA1) fails at n=" + std::to_string(n));
            std::vector<int> ar(n, 1), ids(n, O.unit);
            int b = O.comp(n, t, ar, ids);
            if (b != -1 && b != t) rep.fail("(NA2) fails at n=" + std::to_string(n));
        }

    // (NA3) interchange associativity over nested tuples within the window.
    bool na3_reported = false;
    for (int l = 0; l <= N && done < cap; ++l)
        detail::for_arity_tuples(l, N, [&](const std::vector<int>& ks) {
            // For each i, a tuple of arities summing within the window.
            // Enumerate inner arity tuples jointly with a global sum bound.
            int ksum = 0;
            for (int k : ks) ksum += k;
            std::vector<std::vector<int>> inner_ar(l);
            std::function<bool(int, int)> rec = [&](int i, int used) -> bool {
                if (done >= cap) return false;
                if (i == l) {
                    // Enumerate the elements.
                    std::vector<std::size_t> radix;
                    radix.push_back(O.card[l]);
                    for (int j = 0; j < l; ++j) radix.push_back(O.card[ks[j]]);
                    std::vector<int> flat_ar;
                    for (auto& v : inner_ar) flat_ar.insert(flat_ar.end(), v.begin(), v.end());
                    for (auto& v : inner_ar)
                        for (int n : v) radix.push_back(O.card[n]);
                    for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
                        ++done;
                        int psi = static_cast<int>(tup[0]);
                        std::vector<int> phis(tup.begin() + 1, tup.begin() + 1 + l);
                        std::vector<int> thetas(tup.begin() + 1 + l, tup.end());
                        // lhs: psi o (phi_i o (theta_i*)).
                        std::vector<int> comps, comp_ar;
                        bool part = false;
                        std::size_t off = 0;
                        for (int i2 = 0; i2 < l; ++i2) {
                            std::vector<int> th(thetas.begin() + off,
                                                thetas.begin() + off + inner_ar[i2].size());
                            off += inner_ar[i2].size();
                            int c = O.comp(ks[i2], phis[i2], inner_ar[i2], th);
                            if (c == -1) part = true;
                            comps.push_back(c);
                            int s = 0;
                            for (int n : inner_ar[i2]) s += n;
                            comp_ar.push_back(s);
                        }
                        int outer = O.comp(l, psi, ks, phis);
                        if (!part && outer != -1) {
                            int lhs = O.comp(l, psi, comp_ar, comps);
                            int rhs = O.comp(ksum, outer, flat_ar, thetas);
                            if (lhs != -1 && rhs != -1 && lhs != rhs && !na3_reported) {
                                rep.fail("(NA3) fails");
                                na3_reported = true;
                            }
                        }
                        return done < cap;
                    });
                    return done < cap;
                }
                bool keep = true;
                detail::for_arity_tuples(ks[i], N - used, [&](const std::vector<int>& ar) {
                    int s = 0;
                    for (int n : ar) s += n;
                    inner_ar[i] = ar;
                    keep = rec(i + 1, used + s);
                    return keep;
                });
                return keep;
            };
            rec(0, 0);
            return done < cap;
        });
    rep.counts["instances"] = done;
    if (done >= cap) rep.counts["capped"] = 1;
    return rep;
}

inline CheckReport check_sym_operad(const SymOperad& S, long long cap = 0) {
    if (cap == 0) cap = max_search_cap();
    CheckReport rep = check_ns_operad(S.ns, cap);
    const NsOperad& O = S.ns;
    int N = O.max_arity;
    long long done = rep.counts["instances"];

    // (SA4) left group action.
    for (int n = 0; n <= N; ++n) {
        auto Sn = symmetric_group(n);
        for (int t = 0; t < O.card[n]; ++t) {
            if (S.act(perm_id(n), n, t) != t) rep.fail("(SA4) identity fails");
            for (const auto& u : Sn)
                for (const auto& v : Sn) {
                    ++done;
                    if (S.act(perm_compose(v, u), n, t) != S.act(v, n, S.act(u, n, t)))
                        rep.fail("(SA4) compatibility fails");
                    if (!rep.ok) return rep;
                }
        }
    }

    // (SA5) and (SA6): equivariance via block sum and block permutation.
    bool sa5_reported = false, sa6_reported = false;
    for (int k = 0; k <= N && done < cap; ++k)
        detail::for_arity_tuples(k, N, [&](const std::vector<int>& ns) {
            std::vector<std::size_t> radix;
            radix.push_back(O.card[k]);
            for (int n : ns) radix.push_back(O.card[n]);
            for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
                int phi = static_cast<int>(tup[0]);
                std::vector<int> thetas(tup.begin() + 1, tup.end());
                int base = O.comp(k, phi, ns, thetas);
                // (SA5): phi o (u_i . theta_i) = (u_1+...+u_k) . (phi o thetas).
                std::vector<std::vector<Perm>> groups;
                for (int n : ns) groups.push_back(symmetric_group(n));
                std::vector<std::size_t> gradix;
                for (auto& g : groups) gradix.push_back(g.size());
                for_each_tuple(gradix, [&](const std::vector<std::size_t>& gt) {
                    ++done;
                    std::vector<Perm> us;
                    std::vector<int> acted;
                    for (int i = 0; i < k; ++i) {
                        us.push_back(groups[i][gt[i]]);
                        acted.push_back(S.act(us.back(), ns[i], thetas[i]));
                    }
                    int lhs = O.comp(k, phi, ns, acted);
                    int rhs = base == -1 ? -1 : S.act(block_sum(us), static_cast<int>(block_sum(us).n), base);
                    if (lhs != -1 && rhs != -1 && lhs != rhs && !sa5_reported) {
                        rep.fail("(SA5) fails");
                        sa5_reported = true;
                    }
                    return done < cap;
                });
                // (SA6): (v . phi) o (theta_{v^{-1}(i)}) = v_{n_1..n_k} . (phi o thetas).
                for (const auto& v : symmetric_group(k)) {
                    ++done;
                    Perm vinv = perm_inverse(v);
                    std::vector<int> pth, par;
                    for (int i = 1; i <= k; ++i) {
                        pth.push_back(thetas[vinv(i) - 1]);
                        par.push_back(ns[vinv(i) - 1]);
                    }
                    int lhs = O.comp(k, S.act(v, k, phi), par, pth);
                    Perm bp = block_perm(v, ns);
                    int rhs = base == -1 ? -1 : S.act(bp, bp.n, base);
                    if (lhs != -1 && rhs != -1 && lhs != rhs && !sa6_reported) {
                        rep.fail("(SA6) fails");
                        sa6_reported = true;
                    }
                    if (done >= cap) break;
                }
                return done < cap;
            });
            return done < cap;
        });
    rep.counts["instances"] = done;
    return rep;
}

// The endomorphism ns-operad of a finite set: T_n = all tables A^n -> A.
inline NsOperad endo_ns_operad(int a, int N) {
    Clone C = endo_clone(a, N);
    NsOperad O;
    O.max_arity = N;
    O.card = C.card;
    O.unit = C.proj[1][0];
    O.comp = [a, N](int k, int phi, const std::vector<int>& ars, const std::vector<int>& thetas) {
        int total = 0;
        for (int n : ars) total += n;
        if (total > N) return -1;
        // (phi o thetas)(a_1..a_total) evaluates thetas on consecutive blocks.
        auto entry = [a](long long code, long long cell) {
            while (cell-- > 0) code /= a;
            return static_cast<int>(code % a);
        };
        long long cells = pow_ll(a, total), code = 0, wt = 1;
        for (long long t = 0; t < cells; ++t) {
            long long rem = t, idx = 0, w = 1;
            for (int i = 0; i < k; ++i) {
                long long block = rem % pow_ll(a, ars[i]);
                rem /= pow_ll(a, ars[i]);
                idx += w * entry(thetas[i], block);
                w *= a;
            }
            code += static_cast<long long>(entry(phi, idx)) * wt;
            wt *= a;
        }
        return static_cast<int>(code);
    };
    return O;
}

// The endomorphism symmetric operad: the ns data plus the variable-permuting
// action (u . f)(a_1,...,a_n) = f(a_{u(1)},...,a_{u(n)}) — the variant that
// satisfies (SA5)/(SA6) is fixed by the self-test on small carriers.
inline SymOperad endo_sym_operad(int a, int N) {
    SymOperad S;
    S.ns = endo_ns_operad(a, N);
    S.act = [a](const Perm& u, int n, int f) {
        auto entry = [a](long long code, long long cell) {
            while (cell-- > 0) code /= a;
            return static_cast<int>(code % a);
        };
        long long cells = pow_ll(a, n), code = 0, wt = 1;
        for (long long t = 0; t < cells; ++t) {
            // Input tuple (a_1..a_n) is the base-a digits of t; feed f the
            // tuple (a_{u(1)},...,a_{u(n)}).
            long long idx = 0, w = 1;
            for (int i = 1; i <= n; ++i) {
                long long digit = (t / pow_ll(a, u(i) - 1)) % a;
                idx += w * digit;
                w *= a;
            }
            code += static_cast<long long>(entry(f, idx)) * wt;
            wt *= a;
        }
        return static_cast<int>(code);
    };
    return S;
}

// The terminal ns-operad: a single operation in every arity. This is the
// monoid theory in ns-operad form (the free ns-operad on one binary and one
// nullary generator, modulo the monoid equations, has singleton carriers).
inline NsOperad monoid_ns_operad(int N) {
    NsOperad O;
    O.max_arity = N;
    O.card.assign(N + 1, 1);
    O.unit = 0;
    O.comp = [N](int, int, const std::vector<int>& ars, const std::vector<int>&) {
        int total = 0;
        for (int n : ars) total += n;
        return total > N ? -1 : 0;
    };
    return O;
}

// The commutative-monoid symmetric operad: singleton carriers with the
// trivial symmetric action.
inline SymOperad commutative_monoid_sym_operad(int N) {
    SymOperad S;
    S.ns = monoid_ns_operad(N);
    S.act = [](const Perm&, int, int theta) { return theta; };
    return S;
}

// The monoid theory as a symmetric operad: T_n = S_n (all orderings of the n
// inputs), unit = id, composition by block substitution, action by left
// multiplication.
inline SymOperad monoid_sym_operad(int N) {
    SymOperad S;
    S.ns.max_arity = N;
    // Elements of T_n are permutations of S_n, indexed by position in
    // symmetric_group(n).
    auto groups = std::make_shared<std::vector<std::vector<Perm>>>();
    for (int n = 0; n <= N; ++n) groups->push_back(symmetric_group(n));
    for (int n = 0; n <= N; ++n)
        S.ns.card.push_back(static_cast<int>((*groups)[n].size()));
    auto index_of = [groups](const Perm& u) {
        const auto& g = (*groups)[u.n];
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] == u) return static_cast<int>(i);
        return -1;
    };
    S.ns.unit = index_of(perm_id(1));
    S.ns.comp = [groups, index_of, N](int k, int phi, const std::vector<int>& ars,
                                      const std::vector<int>& thetas) {
        int total = 0;
        for (int n : ars) total += n;
        if (total > N) return -1;
        // v o (u_1..u_k) = (u_1 + ... + u_k) . v_{m_1..m_k} with m_j = n_{v(j)}:
        // first shuffle whole blocks by v, then permute inside each block.
        std::vector<Perm> us;
        for (int i = 0; i < k; ++i) us.push_back((*groups)[ars[i]][thetas[i]]);
        Perm v = (*groups)[k][phi];
        std::vector<int> msizes(k);
        for (int j = 1; j <= k; ++j) msizes[j - 1] = ars[v(j) - 1];
        Perm res = perm_compose(block_sum(us), block_perm(v, msizes));
        return index_of(res);
    };
    S.act = [groups, index_of](const Perm& u, int n, int theta) {
        return index_of(perm_compose(u, (*groups)[n][theta]));
    };
    return S;
}

// ---------------------------------------------------------------------------
// Operad models
// ---------------------------------------------------------------------------

// All operad homomorphisms O -> Endop(A) on the truncated window, enumerated
// deterministically. A model assigns a table A^n -> A to every element.
struct OperadModel {
    int carrier = 0;
    std::vector<std::vector<int>> value;  // value[n][theta] = table code
};

inline std::vector<OperadModel> ns_operad_models(const NsOperad& O, int k) {
    int N = O.max_arity;
    NsOperad E = endo_ns_operad(k, N);
    long double raw = 1.0L;
    std::vector<std::size_t> radix;
    for (int n = 0; n <= N; ++n)
        for (int t = 0; t < O.card[n]; ++t) {
            raw *= static_cast<long double>(E.card[n]);
            radix.push_back(static_cast<std::size_t>(E.card[n]));
        }
    if (raw > static_cast<long double>(max_search_cap()))
        throw SearchSpaceTooLarge("ns_operad_models");
    std::vector<OperadModel> out;
    for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
        OperadModel M;
        M.carrier = k;
        std::size_t pos = 0;
        M.value.resize(N + 1);
        for (int n = 0; n <= N; ++n)
            for (int t = 0; t < O.card[n]; ++t) M.value[n].push_back(static_cast<int>(tup[pos++]));
        // Unit preservation.
        if (M.value[1][O.unit] != E.unit) return true;
        // Composition preservation on all in-window instances.
        bool ok = true;
        for (int l = 0; l <= N && ok; ++l)
            detail::for_arity_tuples(l, N, [&](const std::vector<int>& ars) {
                std::vector<std::size_t> r2;
                r2.push_back(O.card[l]);
                for (int n : ars) r2.push_back(O.card[n]);
                for_each_tuple(r2, [&](const std::vector<std::size_t>& t2) {
                    int phi = static_cast<int>(t2[0]);
                    std::vector<int> thetas(t2.begin() + 1, t2.end());
                    int c = O.comp(l, phi, ars, thetas);
                    if (c != -1) {
                        int total = 0;
                        for (int n : ars) total += n;
                        std::vector<int> vth;
                        for (int i = 0; i < l; ++i) vth.push_back(M.value[ars[i]][thetas[i]]);
                        if (M.value[total][c] != E.comp(l, M.value[l][phi], ars, vth)) ok = false;
                    }
                    return ok;
                });
                return ok;
            });
        if (ok) out.push_back(std::move(M));
        return true;
    });
    return out;
}

inline std::vector<OperadModel> sym_operad_models(const SymOperad& S, int k) {
    auto base = ns_operad_models(S.ns, k);
    SymOperad E = endo_sym_operad(k, S.ns.max_arity);
    std::vector<OperadModel> out;
    for (auto& M : base) {
        bool ok = true;
        for (int n = 0; n <= S.ns.max_arity && ok; ++n)
            for (const auto& u : symmetric_group(n)) {
                for (int t = 0; t < S.ns.card[n] && ok; ++t)
                    if (M.value[n][S.act(u, n, t)] != E.act(u, n, M.value[n][t])) ok = false;
                if (!ok) break;
            }
        if (ok) out.push_back(std::move(M));
    }
    return out;
}

}  // namespace algkit
