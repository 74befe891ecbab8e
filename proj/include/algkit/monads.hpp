#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "algkit/fincat.hpp"
#include "algkit/report.hpp"
#include "algkit/theories.hpp"
#include "algkit/util.hpp"

namespace algkit {

// ---------------------------------------------------------------------------
// Symbolic monads on finite sets
// ---------------------------------------------------------------------------

// A monad on finite sets given by code rather than global tables: T of a set
// may be infinite (free monoid on a nonempty set), so every application
// carries an evaluation bound and `mult` may report -1 ("outside the bound").
// Objects are represented by their cardinality; an element of T(A) is an
// integer in [0, size(|A|)). All functions must be pure.
struct SetMonad {
    std::string name;
    int bound = 0;  // meaning depends on the monad (e.g. max word length)

    // |T A| for |A| = a.
    std::function<long long(long long a)> size;
    // T f for f: A -> B given by its image vector (|f| = |A|); applies to an
    // element t of T A and returns an element of T B.
    std::function<long long(const std::vector<long long>& f, long long b, long long t)> map;
    // eta_A(x) for x in A.
    std::function<long long(long long a, long long x)> unit;
    // mu_A: T T A -> T A; -1 when the result falls outside the bound.
    std::function<long long(long long a, long long t)> mult;
};

namespace detail {

// Rank/unrank for words over an alphabet of size a with length <= L.
// rank(w) = sum_{l < len(w)} a^l + sum_i w_i a^i (letters little-endian).
inline long long word_count(long long a, int L) {
    long long total = 0, p = 1;
    for (int l = 0; l <= L; ++l) {
        total += p;
        p *= (a == 0 ? 0 : a);
        if (a == 0) break;  // only the empty word exists
    }
    return a == 0 ? 1 : total;
}

inline std::vector<long long> word_decode(long long a, int L, long long code) {
    std::vector<long long> w;
    long long p = 1;
    for (int l = 0; l <= L; ++l) {
        if (code < p) {
            for (int i = 0; i < l; ++i) {
                w.push_back(code % a);
                code /= a;
            }
            return w;
        }
        code -= p;
        p *= a;
    }
    return w;  // unreachable for valid codes
}

inline long long word_encode(long long a, int L, const std::vector<long long>& w) {
    if (static_cast<int>(w.size()) > L) return -1;
    long long base = 0, p = 1;
    for (std::size_t l = 0; l < w.size(); ++l) {
        base += p;
        p *= a;
    }
    long long digits = 0, q = 1;
    for (long long x : w) {
        digits += x * q;
        q *= a;
    }
    return base + digits;
}

}  // namespace detail

inline SetMonad identity_monad() {
    SetMonad M;
    M.name = "identity";
    M.size = [](long long a) { return a; };
    M.map = [](const std::vector<long long>& f, long long, long long t) { return f[t]; };
    M.unit = [](long long, long long x) { return x; };
    M.mult = [](long long, long long t) { return t; };
    return M;
}

// Words of length <= bound with concatenating multiplication; mu reports -1
// when flattening a word of words would exceed the length bound.
inline SetMonad free_monoid_monad(int bound) {
    SetMonad M;
    M.name = "free-monoid";
    M.bound = bound;
    M.size = [bound](long long a) { return detail::word_count(a, bound); };
    M.map = [bound](const std::vector<long long>& f, long long b, long long t) {
        auto w = detail::word_decode(static_cast<long long>(f.size()), bound, t);
        for (auto& x : w) {
            if (f[x] < 0) return -1LL;  // propagate out-of-bound markers
            x = f[x];
        }
        return detail::word_encode(b, bound, w);
    };
    M.unit = [bound](long long a, long long x) { return detail::word_encode(a, bound, {x}); };
    M.mult = [bound](long long a, long long t) {
        long long ta = detail::word_count(a, bound);
        auto outer = detail::word_decode(ta, bound, t);
        std::vector<long long> flat;
        for (long long c : outer) {
            auto inner = detail::word_decode(a, bound, c);
            flat.insert(flat.end(), inner.begin(), inner.end());
            if (static_cast<int>(flat.size()) > bound) return -1LL;
        }
        return detail::word_encode(a, bound, flat);
    };
    return M;
}

// Finite powerset with union multiplication: the classical example of a
// non-cartesian monad (its unit naturality squares fail to be pullbacks at
// non-injective maps). Elements of T A are bitmasks over A.
inline SetMonad powerset_monad() {
    SetMonad M;
    M.name = "powerset";
    M.size = [](long long a) { return 1LL << a; };
    M.map = [](const std::vector<long long>& f, long long, long long t) {
        long long out = 0;
        for (std::size_t x = 0; x < f.size(); ++x)
            if (t >> x & 1) out |= 1LL << f[x];
        return out;
    };
    M.unit = [](long long, long long x) { return 1LL << x; };
    M.mult = [](long long, long long t) {
        long long out = 0;
        // A member of T T A with index i is itself the bitmask i over A.
        for (long long i = 0; t >> i; ++i)
            if (t >> i & 1) out |= i;
        return out;
    };
    return M;
}

inline SetMonad monad_registry(const std::string& name, int bound) {
    if (name == "identity") return identity_monad();
    if (name == "free-monoid") return free_monoid_monad(bound);
    if (name == "powerset") return powerset_monad();
    throw std::runtime_error("unknown monad: " + name);
}

namespace detail {

// eta_A as an image vector A -> T A.
inline std::vector<long long> unit_vector(const SetMonad& M, long long a) {
    std::vector<long long> v(a);
    for (long long x = 0; x < a; ++x) v[x] = M.unit(a, x);
    return v;
}

// T f as an image vector T A -> T B (tabulated; only for small T A).
inline std::vector<long long> map_vector(const SetMonad& M, const std::vector<long long>& f,
                                         long long b) {
    long long ta = M.size(static_cast<long long>(f.size()));
    std::vector<long long> v(ta);
    for (long long t = 0; t < ta; ++t) v[t] = M.map(f, b, t);
    return v;
}

}  // namespace detail

// Verifies the monad laws on every element of T T A (unit laws) and T T T A
// (associativity) for each probed carrier size, within the cap. Elements on
// which mu falls outside the bound are skipped and counted.
inline CheckReport check_monad(const SetMonad& M, const std::vector<long long>& probes,
                               long long cap = 0) {
    if (cap == 0) cap = static_cast<long long>(max_search_cap());
    CheckReport rep;
    long long done = 0, skipped = 0;
    for (long long a : probes) {
        long long ta = M.size(a), tta = M.size(ta);
        // Unit laws: mu . eta_T = id and mu . T eta = id on T A.
        auto eta_ta = detail::unit_vector(M, ta);
        auto t_eta = detail::map_vector(M, detail::unit_vector(M, a), ta);
        for (long long t = 0; t < ta && done < cap; ++t, ++done) {
            if (M.mult(a, eta_ta[t]) != t)
                rep.fail("unit law (eta T) fails at carrier " + std::to_string(a) +
                         " element " + std::to_string(t));
            if (M.mult(a, t_eta[t]) != t)
                rep.fail("unit law (T eta) fails at carrier " + std::to_string(a) +
                         " element " + std::to_string(t));
            if (!rep.ok) return rep;
        }
        // Associativity: mu . mu_T = mu . T mu on T T T A.
        long long ttta = M.size(tta);
        std::vector<long long> mu_a(tta);
        for (long long s = 0; s < tta; ++s) mu_a[s] = M.mult(a, s);
        for (long long s = 0; s < ttta && done < cap; ++s, ++done) {
            long long left_mid = M.mult(ta, s);        // mu_{TA}
            long long right_mid = M.map(mu_a, ta, s);  // T mu_A, -1 if a component overflowed
            long long lhs = left_mid < 0 ? -1 : M.mult(a, left_mid);
            long long rhs = right_mid < 0 ? -1 : M.mult(a, right_mid);
            if (lhs < 0 || rhs < 0) {
                ++skipped;
                continue;
            }
            if (lhs != rhs) {
                rep.fail("associativity fails at carrier " + std::to_string(a) + " element " +
                         std::to_string(s));
                return rep;
            }
        }
    }
    rep.counts["instances"] = done;
    rep.counts["skipped_out_of_bound"] = skipped;
    return rep;
}

// ---------------------------------------------------------------------------
// Eilenberg-Moore algebras
// ---------------------------------------------------------------------------

struct EMAlgebra {
    long long carrier = 0;
    std::vector<long long> gamma;  // structure map T C -> C, tabulated
};

inline CheckReport check_em_algebra(const SetMonad& M, const EMAlgebra& A, long long cap = 0) {
    if (cap == 0) cap = static_cast<long long>(max_search_cap());
    CheckReport rep;
    long long c = A.carrier, tc = M.size(c), ttc = M.size(tc);
    long long done = 0, skipped = 0;
    for (long long x = 0; x < c; ++x, ++done)
        if (A.gamma[M.unit(c, x)] != x) {
            rep.fail("gamma . eta != id at " + std::to_string(x));
            return rep;
        }
    auto t_gamma = detail::map_vector(M, A.gamma, c);
    for (long long s = 0; s < ttc && done < cap; ++s, ++done) {
        long long mu = M.mult(c, s);
        if (mu < 0) {
            ++skipped;
            continue;
        }
        if (A.gamma[mu] != A.gamma[t_gamma[s]]) {
            rep.fail("gamma . mu != gamma . T gamma at " + std::to_string(s));
            return rep;
        }
    }
    rep.counts["instances"] = done;
    rep.counts["skipped_out_of_bound"] = skipped;
    return rep;
}

// All EM algebra structures on a given carrier (exhaustive over gamma tables).
inline std::vector<EMAlgebra> em_algebras(const SetMonad& M, long long c, long long cap = 0) {
    if (cap == 0) cap = static_cast<long long>(max_search_cap());
    long long tc = M.size(c);
    long double raw = 1;
    for (long long i = 0; i < tc; ++i) raw *= static_cast<long double>(c);
    if (raw > static_cast<long double>(cap))
        throw SearchSpaceTooLarge("em_algebras: " + std::to_string(tc) + " cells over carrier " +
                                  std::to_string(c));
    std::vector<EMAlgebra> out;
    std::vector<std::size_t> radix(tc, static_cast<std::size_t>(c));
    if (c == 0) {
        if (tc == 0) out.push_back({0, {}});
        return out;
    }
    for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
        EMAlgebra A;
        A.carrier = c;
        A.gamma.assign(tup.begin(), tup.end());
        if (check_em_algebra(M, A).ok) out.push_back(std::move(A));
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Cartesianness
// ---------------------------------------------------------------------------

// A sample morphism f: A -> B between finite sets.
struct SetMapSample {
    long long a = 0, b = 0;
    std::vector<long long> f;  // |f| = a, values < b
};

namespace detail {

// Is s |-> (p(s), q(s)) a bijection from {s : defined(s)} onto
// {(x,y) in X x Y : rel(x,y)}? Used for all elementwise pullback checks.
inline bool elementwise_pullback(long long domain, const std::function<bool(long long)>& defined,
                                 const std::function<long long(long long)>& p,
                                 const std::function<long long(long long)>& q, long long X,
                                 long long Y,
                                 const std::function<bool(long long, long long)>& rel) {
    std::map<std::pair<long long, long long>, long long> hits;
    for (long long s = 0; s < domain; ++s) {
        if (!defined(s)) continue;
        auto key = std::make_pair(p(s), q(s));
        if (hits.count(key)) return false;  // not injective
        hits[key] = s;
    }
    long long expected = 0;
    for (long long x = 0; x < X; ++x)
        for (long long y = 0; y < Y; ++y)
            if (rel(x, y)) {
                ++expected;
                if (!hits.count({x, y})) return false;  // not surjective
            }
    return static_cast<long long>(hits.size()) == expected;
}

}  // namespace detail

// Checks, for each sample f: A -> B:
//   (1) the eta naturality square at f is a pullback,
//   (2) the mu naturality square at f is a pullback (bounded elements only),
//   (3) T preserves the kernel pullback of f against itself.
inline CheckReport check_cartesian(const SetMonad& M, const std::vector<SetMapSample>& samples) {
    CheckReport rep;
    long long done = 0;
    for (const auto& s : samples) {
        long long a = s.a, b = s.b;
        long long ta = M.size(a), tb = M.size(b);
        auto tf = detail::map_vector(M, s.f, b);
        // (1) eta square: A -> TA x_{TB} B.
        bool eta_ok = detail::elementwise_pullback(
            a, [](long long) { return true; }, [&](long long x) { return M.unit(a, x); },
            [&](long long x) { return s.f[x]; }, ta, b,
            [&](long long t, long long y) { return tf[t] == M.unit(b, y); });
        if (!eta_ok) rep.fail("eta naturality square is not a pullback");
        // (2) mu square: TTA -> TA x_{TB} TTB.
        long long tta = M.size(ta), ttb = M.size(tb);
        auto ttf = detail::map_vector(M, tf, tb);
        std::vector<long long> mu_a(tta), mu_b(ttb);
        for (long long t = 0; t < tta; ++t) mu_a[t] = M.mult(a, t);
        for (long long t = 0; t < ttb; ++t) mu_b[t] = M.mult(b, t);
        bool mu_ok = detail::elementwise_pullback(
            tta, [&](long long t) { return mu_a[t] >= 0; },
            [&](long long t) { return mu_a[t]; }, [&](long long t) { return ttf[t]; }, ta, ttb,
            [&](long long t, long long u) { return mu_b[u] >= 0 && tf[t] == mu_b[u]; });
        if (!mu_ok) rep.fail("mu naturality square is not a pullback");
        // (3) T of the kernel pullback A x_B A.
        std::vector<std::pair<long long, long long>> kp;
        for (long long x = 0; x < a; ++x)
            for (long long y = 0; y < a; ++y)
                if (s.f[x] == s.f[y]) kp.push_back({x, y});
        std::vector<long long> p1(kp.size()), p2(kp.size());
        for (std::size_t i = 0; i < kp.size(); ++i) {
            p1[i] = kp[i].first;
            p2[i] = kp[i].second;
        }
        long long tp = M.size(static_cast<long long>(kp.size()));
        auto tp1 = detail::map_vector(M, p1, a), tp2 = detail::map_vector(M, p2, a);
        bool pres = detail::elementwise_pullback(
            tp, [](long long) { return true; }, [&](long long t) { return tp1[t]; },
            [&](long long t) { return tp2[t]; }, ta, ta,
            [&](long long u, long long v) { return tf[u] == tf[v]; });
        if (!pres) rep.fail("T does not preserve the kernel pullback");
        ++done;
        if (!rep.ok) {
            rep.counts["instances"] = done;
            return rep;
        }
    }
    rep.counts["instances"] = done;
    return rep;
}

// ---------------------------------------------------------------------------
// The slice monoidal structure over S1 and generalized (S-)operads
// ---------------------------------------------------------------------------

// An object of the slice over S1: a finite set P with p: P -> S1.
struct SliceObject {
    long long size = 0;
    std::vector<long long> to_base;  // p, values in [0, |S 1|)
};

// An element of a slice tensor (Q,q) (x) (P,p): a pair (y in Q, w in S P)
// with q(y) = S!(w). The tensor is materialized as an element list plus the
// induced map to S1 (mu_1 . S p . pr2), which may be -1 past the bound.
struct SliceTensor {
    std::vector<std::pair<long long, long long>> elems;  // (y, w)
    SliceObject object;                                   // may contain -1 arities
    std::map<std::pair<long long, long long>, long long> index;
};

inline SliceTensor slice_tensor(const SetMonad& M, const SliceObject& Q, const SliceObject& P) {
    long long s1 = M.size(1);
    std::vector<long long> bang(P.size, 0);  // P -> 1
    long long sp = M.size(P.size);
    SliceTensor T;
    for (long long y = 0; y < Q.size; ++y)
        for (long long w = 0; w < sp; ++w) {
            if (M.map(bang, 1, w) != Q.to_base[y]) continue;
            T.index[{y, w}] = static_cast<long long>(T.elems.size());
            T.elems.push_back({y, w});
            // Arity of the pair: mu_1(S p (w)).
            long long spw = M.map(P.to_base, s1, w);
            T.object.to_base.push_back(M.mult(1, spw));
        }
    T.object.size = static_cast<long long>(T.elems.size());
    return T;
}

inline SliceObject slice_unit(const SetMonad& M) {
    SliceObject U;
    U.size = 1;
    U.to_base = {M.unit(1, 0)};
    return U;
}

// A generalized operad for the monad S: a monoid in the slice over S1.
struct SOperad {
    SliceObject ar;               // arity map ar: T -> S1
    long long unit_el = 0;        // e in T with ar(e) = eta_1(*)
    std::vector<long long> mult;  // per slice_tensor(ar, ar) element -> T
};

// Unit laws generically; associativity via the word unfolding of the free
// monoid monad (the only bound-growing monad in the registry): an element of
// the double tensor is flattened both ways and compared.
inline CheckReport check_s_operad(const SetMonad& M, const SOperad& O) {
    CheckReport rep;
    if (O.ar.to_base[O.unit_el] != M.unit(1, 0)) rep.fail("unit element has wrong arity");
    auto T2 = slice_tensor(M, O.ar, O.ar);
    // Arities must be preserved by mult (a morphism in the slice).
    for (std::size_t i = 0; i < T2.elems.size(); ++i) {
        long long m = O.mult[i];
        if (T2.object.to_base[i] >= 0 && O.ar.to_base[m] != T2.object.to_base[i]) {
            rep.fail("mult does not respect arities at tensor element " + std::to_string(i));
            return rep;
        }
    }
    // Left unit: e o (theta) = theta. The pair (e, word (theta)).
    for (long long t = 0; t < O.ar.size; ++t) {
        long long w = detail::word_encode(O.ar.size, M.bound, {t});
        auto it = T2.index.find({O.unit_el, w});
        if (it == T2.index.end() || O.mult[it->second] != t)
            rep.fail("left unit law fails at " + std::to_string(t));
    }
    // Right unit: theta o (e,...,e) = theta.
    for (long long t = 0; t < O.ar.size; ++t) {
        long long n = O.ar.to_base[t];  // arity as an S1 element = word length
        auto arw = detail::word_decode(1, M.bound, n);
        std::vector<long long> es(arw.size(), O.unit_el);
        long long w = detail::word_encode(O.ar.size, M.bound, es);
        auto it = T2.index.find({t, w});
        if (it == T2.index.end() || O.mult[it->second] != t)
            rep.fail("right unit law fails at " + std::to_string(t));
        if (!rep.ok) return rep;
    }
    // Associativity on word data: theta o (theta_i) then o (sigma_j) both ways.
    long long checked = 0, skipped = 0;
    for (std::size_t i = 0; i < T2.elems.size(); ++i) {
        if (T2.object.to_base[i] < 0) {
            ++skipped;  // the first-level composite already exceeds the bound
            continue;
        }
        auto [t, w] = T2.elems[i];
        auto inner = detail::word_decode(O.ar.size, M.bound, w);
        // Choose all ways to feed each inner operation a full tuple of args.
        std::vector<std::size_t> radix;
        std::vector<std::vector<long long>> choices;
        bool feasible = true;
        for (long long th : inner) {
            long long n = O.ar.to_base[th];
            auto len = detail::word_decode(1, M.bound, n).size();
            // words over T of length = arity(th)
            std::vector<long long> opts;
            long long tsz = M.size(O.ar.size);
            for (long long v = 0; v < tsz; ++v)
                if (detail::word_decode(O.ar.size, M.bound, v).size() == len) opts.push_back(v);
            if (opts.empty() && len > 0) feasible = false;
            choices.push_back(std::move(opts));
            radix.push_back(choices.back().size() ? choices.back().size() : 1);
        }
        if (!feasible || inner.empty()) continue;
        for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
            // Left: (t o inner) o concat(sigma blocks).
            std::vector<long long> flat;
            std::vector<long long> innercomp;
            bool ok = true;
            for (std::size_t j = 0; j < inner.size(); ++j) {
                long long wv = choices[j].empty()
                                   ? detail::word_encode(O.ar.size, M.bound, {})
                                   : choices[j][tup[j]];
                auto sig = detail::word_decode(O.ar.size, M.bound, wv);
                flat.insert(flat.end(), sig.begin(), sig.end());
                auto it = T2.index.find({inner[j], wv});
                if (it == T2.index.end() || T2.object.to_base[it->second] < 0) {
                    ok = false;  // inner composite outside the bound
                    break;
                }
                innercomp.push_back(O.mult[it->second]);
            }
            if (!ok || static_cast<int>(flat.size()) > M.bound) {
                ++skipped;
                return true;
            }
            long long flatw = detail::word_encode(O.ar.size, M.bound, flat);
            long long left_in = O.mult[i];
            auto itL = T2.index.find({left_in, flatw});
            long long innerw = detail::word_encode(O.ar.size, M.bound, innercomp);
            auto itR = T2.index.find({t, innerw});
            if (itL == T2.index.end() || itR == T2.index.end()) {
                ++skipped;
                return true;
            }
            ++checked;
            if (O.mult[itL->second] != O.mult[itR->second]) {
                rep.fail("associativity fails at tensor element " + std::to_string(i));
                return false;
            }
            return true;
        });
        if (!rep.ok) break;
    }
    rep.counts["instances"] = checked;
    rep.counts["skipped_out_of_bound"] = skipped;
    return rep;
}

// Encodes a truncated ns-operad as a generalized operad for the free monoid
// monad (requires the operad window to cover the monad bound).
inline SOperad ns_operad_to_s_operad(const SetMonad& M, const NsOperad& O) {
    SOperad S;
    std::vector<std::pair<int, int>> elems;  // (n, theta)
    std::map<std::pair<int, int>, long long> idx;
    for (int n = 0; n <= O.max_arity && n <= M.bound; ++n)
        for (int t = 0; t < O.card[n]; ++t) {
            idx[{n, t}] = static_cast<long long>(elems.size());
            elems.push_back({n, t});
        }
    S.ar.size = static_cast<long long>(elems.size());
    for (auto& [n, t] : elems)
        S.ar.to_base.push_back(detail::word_encode(1, M.bound, std::vector<long long>(n, 0)));
    S.unit_el = idx.at({1, O.unit});
    auto T2 = slice_tensor(M, S.ar, S.ar);
    for (std::size_t i = 0; i < T2.elems.size(); ++i) {
        auto [phi_el, w] = T2.elems[i];
        auto args = detail::word_decode(S.ar.size, M.bound, w);
        auto [k, phi] = elems[phi_el];
        (void)k;
        std::vector<int> ars, ths;
        for (long long aEl : args) {
            ars.push_back(elems[aEl].first);
            ths.push_back(elems[aEl].second);
        }
        int r = O.comp(static_cast<int>(args.size()), phi, ars, ths);
        int total = 0;
        for (int n : ars) total += n;
        S.mult.push_back(r < 0 ? S.unit_el /*unreachable within bound*/ : idx.at({total, r}));
    }
    return S;
}

// The trivial generalized operad T = S1 with the identity arity map.
inline SOperad trivial_s_operad(const SetMonad& M) {
    SOperad S;
    long long s1 = M.size(1);
    S.ar.size = s1;
    for (long long i = 0; i < s1; ++i) S.ar.to_base.push_back(i);
    S.unit_el = M.unit(1, 0);
    auto T2 = slice_tensor(M, S.ar, S.ar);
    for (std::size_t i = 0; i < T2.elems.size(); ++i)
        S.mult.push_back(T2.object.to_base[i] >= 0 ? T2.object.to_base[i] : 0);
    return S;
}

// A model of an S-operad: a carrier C with gamma: T * C -> C, where T * C is
// the pullback of ar against S!. The two pseudo-action diagrams are imposed
// on the materialized data.
struct SOperadModel {
    long long carrier = 0;
    std::vector<std::pair<long long, long long>> dom;  // elements (theta, w in S C)
    std::vector<long long> gamma;
};

inline std::vector<SOperadModel> s_operad_models(const SetMonad& M, const SOperad& O,
                                                 long long c, long long cap = 0) {
    if (cap == 0) cap = static_cast<long long>(max_search_cap());
    // Materialize T * C.
    std::vector<std::pair<long long, long long>> dom;
    std::map<std::pair<long long, long long>, long long> idx;
    std::vector<long long> bang(c, 0);
    long long sc = M.size(c);
    for (long long t = 0; t < O.ar.size; ++t)
        for (long long w = 0; w < sc; ++w)
            if (M.map(bang, 1, w) == O.ar.to_base[t]) {
                idx[{t, w}] = static_cast<long long>(dom.size());
                dom.push_back({t, w});
            }
    long double raw = 1;
    for (std::size_t i = 0; i < dom.size(); ++i) raw *= static_cast<long double>(c);
    if (raw > static_cast<long double>(cap))
        throw SearchSpaceTooLarge("s_operad_models: " + std::to_string(dom.size()) + " cells");
    auto T2 = slice_tensor(M, O.ar, O.ar);
    std::vector<SOperadModel> out;
    if (c == 0) {
        if (dom.empty()) out.push_back({0, dom, {}});
        return out;
    }
    std::vector<std::size_t> radix(dom.size(), static_cast<std::size_t>(c));
    for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
        std::vector<long long> gamma(tup.begin(), tup.end());
        // Unit diagram: gamma(e, (x)) = x.
        for (long long x = 0; x < c; ++x) {
            long long w = detail::word_encode(c, M.bound, {x});
            auto it = idx.find({O.unit_el, w});
            if (it == idx.end() || gamma[it->second] != x) return true;
        }
        // Action diagram: gamma(m(theta, u), w) = gamma(theta, (gamma(u_i, w_i))).
        for (std::size_t i = 0; i < T2.elems.size(); ++i) {
            auto [t, uw] = T2.elems[i];
            auto inner = detail::word_decode(O.ar.size, M.bound, uw);
            // Split every compatible w into blocks matching the inner arities.
            std::vector<std::size_t> lens;
            for (long long th : inner)
                lens.push_back(detail::word_decode(1, M.bound, O.ar.to_base[th]).size());
            std::size_t total = 0;
            for (auto l : lens) total += l;
            if (static_cast<int>(total) > M.bound) continue;
            std::vector<std::size_t> rr(total, static_cast<std::size_t>(c));
            bool okAll = for_each_tuple(rr, [&](const std::vector<std::size_t>& xs) {
                std::vector<long long> results;
                std::size_t pos = 0;
                for (std::size_t j = 0; j < inner.size(); ++j) {
                    std::vector<long long> block(xs.begin() + pos, xs.begin() + pos + lens[j]);
                    pos += lens[j];
                    long long bw = detail::word_encode(c, M.bound, block);
                    auto it = idx.find({inner[j], bw});
                    if (it == idx.end()) return false;  // inconsistent data
                    results.push_back(gamma[it->second]);
                }
                long long fulw =
                    detail::word_encode(c, M.bound, std::vector<long long>(xs.begin(), xs.end()));
                auto itW = idx.find({O.mult[i], fulw});
                long long rw = detail::word_encode(c, M.bound, results);
                auto itN = idx.find({t, rw});
                if (itW == idx.end() || itN == idx.end()) return false;
                return gamma[itW->second] == gamma[itN->second];
            });
            if (!okAll) return true;  // reject this gamma
        }
        out.push_back({c, dom, std::move(gamma)});
        return true;
    });
    return out;
}

// The slice monoidal unit law (1, eta_1) (x) (P, p) ~ (P, p): returns the
// element-level comparison (each tensor element (0, single-letter word (x))
// matched with x), as a vector pairing tensor indices with P elements, empty
// on failure.
inline std::vector<std::pair<long long, long long>> slice_unit_iso(const SetMonad& M,
                                                                   const SliceObject& P) {
    auto T = slice_tensor(M, slice_unit(M), P);
    std::vector<std::pair<long long, long long>> pairs;
    std::vector<bool> hit(P.size, false);
    for (std::size_t i = 0; i < T.elems.size(); ++i) {
        auto [y, w] = T.elems[i];
        auto letters = detail::word_decode(P.size, M.bound, w);
        if (y != 0 || letters.size() != 1) return {};
        if (T.object.to_base[i] != P.to_base[letters[0]]) return {};
        if (hit[letters[0]]) return {};
        hit[letters[0]] = true;
        pairs.push_back({static_cast<long long>(i), letters[0]});
    }
    for (bool h : hit)
        if (!h) return {};
    return pairs;
}

}  // namespace algkit
