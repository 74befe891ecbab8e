#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "algkit/fincat.hpp"
#include "algkit/framework.hpp"
#include "algkit/report.hpp"

namespace algkit {

// ---------------------------------------------------------------------------
// Presheaf theories over a monoidal window of graded objects
// ---------------------------------------------------------------------------
//
// A presheaf theory is a lax monoidal presheaf on the substitution monoidal
// category, restricted to a finite tracked window: finite sets P(X) for the
// tracked objects, restriction along every natural map between them, a unit
// element over the monoidal unit, and a multiplication P(Y) x P(X) ->
// P(Y (x) X) on the pairs whose tensor is tracked (each such pair carries a
// chosen bijection between the tensor presentation and a tracked object).
// Restrictions are functions of the natural map itself, so no composition
// table over the (possibly large) hom sets is ever materialized.

struct GradedWindowSpec {
    Flavor fl = Flavor::Full;
    int W = 0;
    std::vector<GradedOb> obs;
    int unit = 0;

    struct Tracked {
        int k = 0;                // target object index
        TensorPres pres;          // obs[i] (x) obs[j]
        GradedMap iso, iso_inv;   // pres.ob <-> obs[k]
    };
    std::map<std::pair<int, int>, Tracked> tens;
};

inline GradedMap graded_invert(const GradedMap& t) {
    GradedMap out;
    out.comp.resize(t.comp.size());
    for (std::size_t n = 0; n < t.comp.size(); ++n) {
        out.comp[n].assign(t.comp[n].size(), -1);
        for (std::size_t x = 0; x < t.comp[n].size(); ++x) {
            int v = t.comp[n][x];
            assert(v >= 0 && out.comp[n][v] < 0 && "not a stagewise bijection");
            out.comp[n][v] = static_cast<int>(x);
        }
    }
    return out;
}

struct PresheafTheory {
    std::shared_ptr<GradedWindowSpec> M;
    std::vector<int> card;  // |P(i)|
    // P(f): P(j) -> P(i) for a natural f: obs[i] -> obs[j].
    std::function<int(int i, int j, const GradedMap& f, int p)> act;
    int ebar = 0;  // element of P(unit)
    // mbar(i,j): P(i) x P(j) -> P(tens[{i,j}].k); -1 = outside the window.
    std::function<int(int i, int j, int p, int q)> mbar;
    // Optional naturality test family: the natural maps obs[i] -> obs[j]
    // along which compatibility is enforced when solving for models or
    // theory morphisms. Unset = all natural maps. A reduced family is sound
    // whenever targets are functorial and the family already determines
    // every restriction; for a representable theory the maps into the
    // representing object (= the elements themselves) are such a family.
    std::function<std::optional<std::vector<GradedMap>>(int i, int j)> tests;

    std::vector<GradedMap> test_maps(int i, int j) const {
        if (tests) {
            auto t = tests(i, j);
            if (t) return *t;
        }
        return all_natural_maps(M->fl, M->obs[i], M->obs[j]);
    }
};

// ---------------------------------------------------------------------------
// Window builders
// ---------------------------------------------------------------------------

namespace detail_strsem {

inline void add_tracked(GradedWindowSpec& M, int i, int j, int k, TensorPres pres,
                        GradedMap iso) {
    GradedWindowSpec::Tracked t;
    t.k = k;
    t.iso_inv = graded_invert(iso);
    t.iso = std::move(iso);
    t.pres = std::move(pres);
    M.tens[{i, j}] = std::move(t);
}

}  // namespace detail_strsem

// The window {T, I, T (x) T} of a graded monoid, with the unit collapses and
// the tensor of the carrier with itself tracked. The carrier is listed first
// so that model search roots at it.
inline std::shared_ptr<GradedWindowSpec> theory_window(const GradedMonoid& t) {
    auto M = std::make_shared<GradedWindowSpec>();
    M->fl = t.fl;
    M->W = t.W;
    GradedOb I = unit_ob(t.fl, t.W);
    auto TT = tensor_ob(t.fl, t.W, t.T, t.T);
    M->obs = {t.T, I, TT.ob};
    M->unit = 1;
    auto II = tensor_ob(t.fl, t.W, I, I);
    auto IT = tensor_ob(t.fl, t.W, I, t.T);
    auto TI = tensor_ob(t.fl, t.W, t.T, I);
    auto ITT = tensor_ob(t.fl, t.W, I, TT.ob);
    auto TTI = tensor_ob(t.fl, t.W, TT.ob, I);
    detail_strsem::add_tracked(*M, 1, 1, 1, II, left_unit_map(II));
    detail_strsem::add_tracked(*M, 1, 0, 0, IT, left_unit_map(IT));
    detail_strsem::add_tracked(*M, 0, 1, 0, TI, right_unit_map(TI));
    detail_strsem::add_tracked(*M, 1, 2, 2, ITT, left_unit_map(ITT));
    detail_strsem::add_tracked(*M, 2, 1, 2, TTI, right_unit_map(TTI));
    detail_strsem::add_tracked(*M, 0, 0, 2, TT, graded_id(TT.ob));
    return M;
}

// The window {I = [1], [2]} of representables with the unit collapses
// tracked; all hom sets here are tiny.
inline std::shared_ptr<GradedWindowSpec> representable_window(Flavor fl, int W) {
    auto M = std::make_shared<GradedWindowSpec>();
    M->fl = fl;
    M->W = W;
    GradedOb I = unit_ob(fl, W);
    GradedOb R2 = representable(fl, 2, W);
    M->obs = {I, R2};
    M->unit = 0;
    auto II = tensor_ob(fl, W, I, I);
    auto IR = tensor_ob(fl, W, I, R2);
    auto RI = tensor_ob(fl, W, R2, I);
    detail_strsem::add_tracked(*M, 0, 0, 0, II, left_unit_map(II));
    detail_strsem::add_tracked(*M, 0, 1, 1, IR, left_unit_map(IR));
    detail_strsem::add_tracked(*M, 1, 0, 1, RI, right_unit_map(RI));
    return M;
}

// ---------------------------------------------------------------------------
// Representable presheaf theories
// ---------------------------------------------------------------------------
//
// J(T): P(X) = Nat(X, T) for a monoid object T = obs[tIdx], with unit given
// by e: I -> T and multiplication by a (possibly partial) class map
// mult: (T (x) T) -> T on the presentation of the (tIdx, tIdx) tensor.

// Shared payload of a representable theory; the closures inside the exported
// PresheafTheory hold a strong reference to it, so the theory stays valid
// however it is copied around.
struct RepCore {
    std::shared_ptr<GradedWindowSpec> M;
    int tIdx = 0;
    std::vector<std::vector<GradedMap>> elems;  // elems[i] = Nat(obs[i], T)

    int find(int i, const GradedMap& g) const {
        for (std::size_t p = 0; p < elems[i].size(); ++p)
            if (elems[i][p].comp == g.comp) return static_cast<int>(p);
        return -1;
    }
};

struct RepresentableTheory {
    PresheafTheory P;
    std::shared_ptr<const RepCore> core;
};

inline RepresentableTheory representable_theory(std::shared_ptr<GradedWindowSpec> M, int tIdx,
                                                const GradedMap& e, const GradedMap& mult) {
    auto core = std::make_shared<RepCore>();
    core->M = M;
    core->tIdx = tIdx;
    RepresentableTheory R;
    R.P.M = M;
    for (std::size_t i = 0; i < M->obs.size(); ++i) {
        core->elems.push_back(all_natural_maps(M->fl, M->obs[i], M->obs[tIdx]));
        R.P.card.push_back(static_cast<int>(core->elems.back().size()));
    }
    R.P.ebar = core->find(M->unit, e);
    assert(R.P.ebar >= 0 && "unit is not a natural map into the carrier");
    std::shared_ptr<const RepCore> c = core;
    R.P.act = [c](int i, int j, const GradedMap& f, int p) {
        int idx = c->find(i, graded_compose(c->elems[j][p], f));
        assert(idx >= 0 && "restriction left the hom set");
        return idx;
    };
    R.P.mbar = [c, mult](int i, int j, int p, int q) {
        const auto& M2 = *c->M;
        const auto& tr = M2.tens.at({i, j});
        const auto& tt = M2.tens.at({c->tIdx, c->tIdx});
        CheckReport local;
        auto pq = tensor_of_maps(tr.pres, c->elems[i][p], c->elems[j][q], tt.pres, &local);
        if (!local.ok) return -1;
        auto h = graded_compose(graded_compose(mult, pq), tr.iso_inv);
        for (auto& row : h.comp)
            for (int v : row)
                if (v < 0) return -1;
        return c->find(tr.k, h);
    };
    // Reduced naturality family: the maps into the representing object are
    // the elements themselves, and naturality along them already determines
    // and constrains every component (functorial targets supply the rest),
    // so the hom sets between the other window objects, which can be very
    // large, are never enumerated by the solver.
    R.P.tests = [c, tIdx](int i, int j) -> std::optional<std::vector<GradedMap>> {
        if (j == tIdx) return c->elems[i];
        return std::vector<GradedMap>{};
    };
    R.core = std::move(c);
    return R;
}

// J of a graded monoid over its theory window; requires nothing beyond the
// monoid data (the multiplication class map is derived).
inline RepresentableTheory theory_presheaf(const GradedMonoid& t) {
    auto M = theory_window(t);
    auto mult = monoid_mult_map(t, M->tens.at({0, 0}).pres);
    return representable_theory(M, 0, t.e, mult);
}

// J of the monoidal unit over the representable window (the unit is a monoid
// via the left unit collapse).
inline RepresentableTheory unit_presheaf(std::shared_ptr<GradedWindowSpec> M) {
    const auto& tr = M->tens.at({M->unit, M->unit});
    return representable_theory(M, M->unit, graded_id(M->obs[M->unit]), tr.iso);
}

// The terminal presheaf theory: one element everywhere.
inline PresheafTheory terminal_presheaf(std::shared_ptr<GradedWindowSpec> M) {
    PresheafTheory P;
    P.M = M;
    P.card.assign(M->obs.size(), 1);
    P.act = [](int, int, const GradedMap&, int) { return 0; };
    P.ebar = 0;
    P.mbar = [](int, int, int, int) { return 0; };
    return P;
}

// ---------------------------------------------------------------------------
// Validation of presheaf theories
// ---------------------------------------------------------------------------

inline CheckReport check_presheaf_theory(const PresheafTheory& P, std::size_t max_maps = 6) {
    CheckReport rep;
    const auto& M = *P.M;
    int no = static_cast<int>(M.obs.size());
    if (P.card[M.unit] <= 0) {
        rep.fail("the presheaf is empty at the unit; no unit element can exist");
        return rep;
    }

    std::map<std::pair<int, int>, std::vector<GradedMap>> cache;
    auto sample = [&](int i, int j) -> const std::vector<GradedMap>& {
        auto it = cache.find({i, j});
        if (it == cache.end()) {
            auto v = all_natural_maps(M.fl, M.obs[i], M.obs[j]);
            if (v.size() > max_maps) v.resize(max_maps);
            it = cache.emplace(std::make_pair(i, j), std::move(v)).first;
        }
        return it->second;
    };

    // Functoriality of the restriction on sampled pairs.
    long long checked = 0;
    for (int i = 0; i < no; ++i)
        for (int j = 0; j < no; ++j) {
            const auto& fs = sample(i, j);
            for (const auto& f : fs) {
                for (int p = 0; p < P.card[j]; ++p) {
                    // Identity on each side.
                    if (P.act(j, j, graded_id(M.obs[j]), p) != p)
                        rep.fail("restriction along the identity is not the identity");
                    ++checked;
                }
                for (int k = 0; k < no; ++k) {
                    const auto& gs = sample(j, k);
                    for (const auto& g : gs)
                        for (int p = 0; p < P.card[k]; ++p) {
                            int lhs = P.act(i, k, graded_compose(g, f), p);
                            int rhs = P.act(i, j, f, P.act(j, k, g, p));
                            if (lhs != rhs) rep.fail("restriction is not functorial");
                            ++checked;
                        }
                }
            }
        }

    // Unit laws of the lax structure through the tracked unit collapses.
    long long skipped = 0;
    for (const auto& [ij, tr] : M.tens) {
        auto [i, j] = ij;
        if (i == M.unit && tr.k == j) {
            for (int p = 0; p < P.card[j]; ++p) {
                int v = P.mbar(i, j, P.ebar, p);
                if (v < 0) {
                    ++skipped;
                    continue;
                }
                if (v != p) rep.fail("left unit law of the lax structure fails");
                ++checked;
            }
        }
        if (j == M.unit && tr.k == i) {
            for (int p = 0; p < P.card[i]; ++p) {
                int v = P.mbar(i, j, p, P.ebar);
                if (v < 0) {
                    ++skipped;
                    continue;
                }
                if (v != p) rep.fail("right unit law of the lax structure fails");
                ++checked;
            }
        }
    }

    // Naturality of the multiplication on sampled maps between tracked pairs.
    for (const auto& [ij, tr] : M.tens)
        for (const auto& [ij2, tr2] : M.tens) {
            auto [i, j] = ij;
            auto [i2, j2] = ij2;
            const auto& fs = sample(i, i2);
            const auto& gs = sample(j, j2);
            for (const auto& f : fs)
                for (const auto& g : gs) {
                    // f (x) g transported through the identifications.
                    CheckReport local;
                    auto fg = tensor_of_maps(tr.pres, f, g, tr2.pres, &local);
                    if (!local.ok) continue;
                    auto h = graded_compose(tr2.iso, graded_compose(fg, tr.iso_inv));
                    bool total = true;
                    for (auto& row : h.comp)
                        for (int v : row)
                            if (v < 0) total = false;
                    if (!total) {
                        ++skipped;
                        continue;
                    }
                    for (int p = 0; p < P.card[i2]; ++p)
                        for (int q = 0; q < P.card[j2]; ++q) {
                            int top = P.mbar(i2, j2, p, q);
                            int lhs = top < 0 ? -1 : P.act(tr.k, tr2.k, h, top);
                            int rhs = P.mbar(i, j, P.act(i, i2, f, p), P.act(j, j2, g, q));
                            if (lhs < 0 || rhs < 0) {
                                ++skipped;
                                continue;
                            }
                            if (lhs != rhs) rep.fail("multiplication is not natural");
                            ++checked;
                        }
                }
        }

    // Associativity on triples whose tensors are all tracked.
    for (const auto& [ij, tr] : M.tens) {
        auto [i, j] = ij;
        for (int l = 0; l < no; ++l) {
            auto itL = M.tens.find({tr.k, l});
            auto itR = M.tens.find({j, l});
            if (itL == M.tens.end() || itR == M.tens.end()) continue;
            auto itO = M.tens.find({i, itR->second.k});
            if (itO == M.tens.end()) continue;
            if (itL->second.k != itO->second.k) continue;
            for (int p = 0; p < P.card[i]; ++p)
                for (int q = 0; q < P.card[j]; ++q)
                    for (int r = 0; r < P.card[l]; ++r) {
                        int pq = P.mbar(i, j, p, q);
                        int lhs = pq < 0 ? -1 : P.mbar(tr.k, l, pq, r);
                        int qr = P.mbar(j, l, q, r);
                        int rhs = qr < 0 ? -1 : P.mbar(i, itR->second.k, p, qr);
                        if (lhs < 0 || rhs < 0) {
                            ++skipped;
                            continue;
                        }
                        if (lhs != rhs) rep.fail("multiplication is not associative");
                        ++checked;
                    }
        }
    }
    rep.counts["checked"] = checked;
    rep.counts["skipped"] = skipped;
    return rep;
}

// ---------------------------------------------------------------------------
// Generic lax-morphism solver
// ---------------------------------------------------------------------------
//
// Models of a presheaf theory and theory morphisms between presheaf theories
// are both families sigma_i: P(i) -> (values at i) compatible with the unit
// element, with every restriction, and with the multiplication. The solver
// below enumerates all such families: it plans a small set of root variables
// whose values determine everything else through the compatibility rules,
// then searches root assignments with eager propagation (every applicable
// rule fires; disagreements prune the branch, so surviving leaves satisfy
// all rules).
//
// A target provides:
//   using Val;
//   std::vector<Val> enumerate(int i);                    // root domain at object i
//   std::optional<Val> act(int i, int j, const GradedMap& f, const Val& v);
//   std::optional<Val> mul(int i, int j, const Val& a, const Val& b);
//   Val unit();
//   bool eq(const Val&, const Val&);

template <class Target>
struct LaxSolver {
    const PresheafTheory& P;
    Target& tgt;

    std::vector<int> offset;  // variable id = offset[i] + p
    int n_vars = 0;

    struct NatRule {
        int i, j, p;       // premise (j, p), conclusion (i, P(f) p)
        int pool, fidx;    // f = maps[pool][fidx]
        int prem, concl;
    };
    std::vector<std::vector<GradedMap>> maps;  // test maps per (i, j) pair
    struct MulRule {
        int i, j, p, q;  // premises (i,p),(j,q), conclusion (k, mbar)
        int prem1, prem2, concl;
    };
    std::vector<NatRule> nat;
    std::vector<MulRule> mul;
    int unit_var = -1;
    std::vector<std::vector<int>> by_prem;  // var -> rule ids (nat: id; mul: nat.size()+id)
    std::vector<int> roots;

    explicit LaxSolver(const PresheafTheory& P_, Target& tgt_) : P(P_), tgt(tgt_) {
        const auto& M = *P.M;
        int no = static_cast<int>(M.obs.size());
        offset.resize(no + 1, 0);
        for (int i = 0; i < no; ++i) offset[i + 1] = offset[i] + P.card[i];
        n_vars = offset[no];
        unit_var = offset[M.unit] + P.ebar;

        for (int i = 0; i < no; ++i)
            for (int j = 0; j < no; ++j) {
                int pool = static_cast<int>(maps.size());
                maps.push_back(P.test_maps(i, j));
                for (std::size_t fx = 0; fx < maps[pool].size(); ++fx)
                    for (int p = 0; p < P.card[j]; ++p) {
                        const auto& f = maps[pool][fx];
                        nat.push_back({i, j, p, pool, static_cast<int>(fx), offset[j] + p,
                                       offset[i] + P.act(i, j, f, p)});
                    }
            }
        for (const auto& [ij, tr] : M.tens) {
            auto [i, j] = ij;
            for (int p = 0; p < P.card[i]; ++p)
                for (int q = 0; q < P.card[j]; ++q) {
                    int m = P.mbar(i, j, p, q);
                    if (m < 0) continue;
                    mul.push_back({i, j, p, q, offset[i] + p, offset[j] + q, offset[tr.k] + m});
                }
        }
        by_prem.assign(n_vars, {});
        for (std::size_t r = 0; r < nat.size(); ++r) by_prem[nat[r].prem].push_back(static_cast<int>(r));
        for (std::size_t r = 0; r < mul.size(); ++r) {
            by_prem[mul[r].prem1].push_back(static_cast<int>(nat.size() + r));
            if (mul[r].prem2 != mul[r].prem1)
                by_prem[mul[r].prem2].push_back(static_cast<int>(nat.size() + r));
        }

        // Plan roots: greedily add the first variable (in object order) that
        // the rules cannot derive from what is determined so far.
        std::vector<char> det(n_vars, 0);
        auto close = [&]() {
            bool changed = true;
            while (changed) {
                changed = false;
                for (const auto& r : nat)
                    if (det[r.prem] && !det[r.concl]) det[r.concl] = 1, changed = true;
                for (const auto& r : mul)
                    if (det[r.prem1] && det[r.prem2] && !det[r.concl])
                        det[r.concl] = 1, changed = true;
            }
        };
        if (unit_var >= 0 && n_vars > 0) det[unit_var] = 1;
        close();
        for (int v = 0; v < n_vars; ++v)
            if (!det[v]) {
                roots.push_back(v);
                det[v] = 1;
                close();
            }
    }

    int object_of(int var) const {
        int i = static_cast<int>(offset.size()) - 2;
        while (i > 0 && offset[i] > var) --i;
        return i;
    }

    // Assign and propagate. Returns false on conflict.
    bool assign(std::vector<std::optional<typename Target::Val>>& val, int var,
                typename Target::Val v) {
        if (val[var]) return tgt.eq(*val[var], v);
        val[var] = std::move(v);
        for (int rid : by_prem[var]) {
            if (rid < static_cast<int>(nat.size())) {
                const auto& r = nat[rid];
                auto nv = tgt.act(r.i, r.j, maps[r.pool][r.fidx], *val[r.prem]);
                if (!nv) return false;
                if (!assign(val, r.concl, std::move(*nv))) return false;
            } else {
                const auto& r = mul[rid - nat.size()];
                if (!val[r.prem1] || !val[r.prem2]) continue;
                auto nv = tgt.mul(r.i, r.j, *val[r.prem1], *val[r.prem2]);
                if (!nv) return false;
                if (!assign(val, r.concl, std::move(*nv))) return false;
            }
        }
        return true;
    }

    void search(std::size_t depth, std::vector<std::optional<typename Target::Val>>& val,
                std::vector<std::vector<typename Target::Val>>& out) {
        if (depth == roots.size()) {
            // All variables are determined here (guaranteed by planning).
            std::vector<typename Target::Val> flat;
            for (int v = 0; v < n_vars; ++v) {
                assert(val[v]);
                flat.push_back(*val[v]);
            }
            out.push_back(std::move(flat));
            return;
        }
        int var = roots[depth];
        if (val[var]) {  // already forced by an earlier root
            search(depth + 1, val, out);
            return;
        }
        auto candidates = tgt.enumerate(object_of(var));
        for (auto& c : candidates) {
            auto saved = val;
            if (assign(saved, var, c)) search(depth + 1, saved, out);
        }
    }

    // All solutions, as flat vectors indexed by variable id.
    std::vector<std::vector<typename Target::Val>> solve() {
        std::vector<std::vector<typename Target::Val>> out;
        std::vector<std::optional<typename Target::Val>> val(n_vars);
        if (n_vars == 0) {
            out.push_back({});
            return out;
        }
        if (!assign(val, unit_var, tgt.unit())) return out;
        search(0, val, out);
        return out;
    }

    // Verifies a given full assignment against every rule.
    CheckReport verify(const std::vector<typename Target::Val>& flat) {
        CheckReport rep;
        if (static_cast<int>(flat.size()) != n_vars) {
            rep.fail("assignment has wrong length");
            return rep;
        }
        if (n_vars > 0 && !tgt.eq(flat[unit_var], tgt.unit()))
            rep.fail("unit element is not sent to the distinguished value");
        for (const auto& r : nat) {
            auto nv = tgt.act(r.i, r.j, maps[r.pool][r.fidx], flat[r.prem]);
            if (!nv || !tgt.eq(*nv, flat[r.concl])) rep.fail("a restriction rule fails");
        }
        for (const auto& r : mul) {
            auto nv = tgt.mul(r.i, r.j, flat[r.prem1], flat[r.prem2]);
            if (!nv || !tgt.eq(*nv, flat[r.concl])) rep.fail("a multiplication rule fails");
        }
        rep.counts["rules"] = static_cast<long long>(nat.size() + mul.size() + 1);
        return rep;
    }
};

// ---------------------------------------------------------------------------
// Sem: models of a presheaf theory in finite sets
// ---------------------------------------------------------------------------

struct PModel {
    int C = 0;
    std::vector<std::vector<GradedMap>> xi;  // xi[i][p]: interpretation of obs[i]
};

namespace detail_strsem {

struct SemTarget {
    const GradedWindowSpec* M;
    int C;

    using Val = GradedMap;
    std::vector<Val> enumerate(int i) { return interpretations(M->fl, M->obs[i], C, C); }
    std::optional<Val> act(int, int, const GradedMap& f, const Val& v) {
        return graded_compose(v, f);
    }
    std::optional<Val> mul(int i, int j, const Val& a, const Val& b) {
        const auto& tr = M->tens.at({i, j});
        CheckReport local;
        auto comp = interp_compose(M->fl, tr.pres, a, b, C, C, C, &local);
        if (!local.ok) return std::nullopt;
        return graded_compose(comp, tr.iso_inv);
    }
    Val unit() { return interp_unit(M->fl, M->W, C); }
    bool eq(const Val& a, const Val& b) { return a.comp == b.comp; }
};

}  // namespace detail_strsem

inline std::vector<PModel> presheaf_models(const PresheafTheory& P, int C) {
    detail_strsem::SemTarget tgt{P.M.get(), C};
    LaxSolver<detail_strsem::SemTarget> solver(P, tgt);
    std::vector<PModel> out;
    for (auto& flat : solver.solve()) {
        PModel m;
        m.C = C;
        m.xi.resize(P.M->obs.size());
        for (std::size_t i = 0; i < P.M->obs.size(); ++i)
            for (int p = 0; p < P.card[i]; ++p)
                m.xi[i].push_back(std::move(flat[solver.offset[i] + p]));
        out.push_back(std::move(m));
    }
    return out;
}

inline CheckReport check_presheaf_model(const PresheafTheory& P, const PModel& m) {
    detail_strsem::SemTarget tgt{P.M.get(), m.C};
    LaxSolver<detail_strsem::SemTarget> solver(P, tgt);
    std::vector<GradedMap> flat;
    for (std::size_t i = 0; i < P.M->obs.size(); ++i)
        for (int p = 0; p < P.card[i]; ++p) flat.push_back(m.xi[i][p]);
    return solver.verify(flat);
}

inline bool is_presheaf_model_hom(const PresheafTheory& P, const PModel& A, const PModel& B,
                                  const std::vector<int>& f) {
    const auto& M = *P.M;
    for (std::size_t i = 0; i < M.obs.size(); ++i)
        for (int p = 0; p < P.card[i]; ++p)
            for (int n = 0; n <= M.W; ++n)
                for (int x = 0; x < M.obs[i].card[n]; ++x) {
                    long long tuples = 1;
                    for (int r = 0; r < n; ++r) tuples *= A.C;
                    std::vector<int> args(n), fargs(n);
                    for (long long t = 0; t < tuples; ++t) {
                        long long rest = t;
                        for (int r = 0; r < n; ++r) {
                            args[r] = static_cast<int>(rest % A.C);
                            fargs[r] = f[args[r]];
                            rest /= A.C;
                        }
                        int va = hom_eval(A.C, A.C, n, A.xi[i][p].comp[n][x], args);
                        int vb = hom_eval(B.C, B.C, n, B.xi[i][p].comp[n][x], fargs);
                        if (f[va] != vb) return false;
                    }
                }
    return true;
}

// The category of models with carriers <= maxC, over the finite-set window.
struct PModelCat {
    std::vector<PModel> models;
    std::shared_ptr<FinCategory> cat;
    std::vector<std::vector<int>> mor_tab;
    std::shared_ptr<FinCategory> base;
    std::vector<std::vector<int>> base_tab;
    FinFunctor forget;
};

inline PModelCat presheaf_model_category(const PresheafTheory& P, int maxC) {
    PModelCat out;
    out.base = std::make_shared<FinCategory>(finset_window_category(maxC, &out.base_tab));
    for (int C = 0; C <= maxC; ++C)
        for (auto& m : presheaf_models(P, C)) out.models.push_back(std::move(m));
    out.cat = std::make_shared<FinCategory>();
    for (std::size_t i = 0; i < out.models.size(); ++i)
        out.cat->add_object("M" + std::to_string(i) + "(" + std::to_string(out.models[i].C) +
                            ")");
    std::map<std::tuple<int, int, std::vector<int>>, int> index;
    for (std::size_t i = 0; i < out.models.size(); ++i)
        for (std::size_t j = 0; j < out.models.size(); ++j)
            for (const auto& f : all_functions(out.models[i].C, out.models[j].C))
                if (is_presheaf_model_hom(P, out.models[i], out.models[j], f)) {
                    int id = out.cat->add_morphism("h" + std::to_string(out.cat->n_morphisms()),
                                                   static_cast<int>(i), static_cast<int>(j));
                    index[{static_cast<int>(i), static_cast<int>(j), f}] = id;
                    out.mor_tab.push_back(f);
                }
    out.cat->identity.resize(out.cat->n_objects());
    for (std::size_t i = 0; i < out.models.size(); ++i) {
        std::vector<int> idt(out.models[i].C);
        std::iota(idt.begin(), idt.end(), 0);
        out.cat->identity[i] = index.at({static_cast<int>(i), static_cast<int>(i), idt});
    }
    for (int g = 0; g < out.cat->n_morphisms(); ++g)
        for (int f = 0; f < out.cat->n_morphisms(); ++f) {
            if (!out.cat->composable(g, f)) continue;
            const auto& ft = out.mor_tab[f];
            const auto& gt = out.mor_tab[g];
            std::vector<int> comp(ft.size());
            for (std::size_t i = 0; i < ft.size(); ++i) comp[i] = gt[ft[i]];
            out.cat->comp_table[g][f] = index.at({out.cat->src(f), out.cat->dst(g), comp});
        }
    std::map<std::tuple<int, int, std::vector<int>>, int> base_index;
    for (int f = 0; f < out.base->n_morphisms(); ++f)
        base_index[{out.base->src(f), out.base->dst(f), out.base_tab[f]}] = f;
    out.forget.source = out.cat.get();
    out.forget.target = out.base.get();
    for (const auto& m : out.models) out.forget.obj_map.push_back(m.C);
    for (int f = 0; f < out.cat->n_morphisms(); ++f)
        out.forget.mor_map.push_back(base_index.at({out.models[out.cat->src(f)].C,
                                                    out.models[out.cat->dst(f)].C,
                                                    out.mor_tab[f]}));
    return out;
}

// Oracle agreement: the models of J(t) correspond to the models of t itself,
// with the same homomorphism sets, via the component at the identity of the
// carrier. Requires the theory window built by theory_presheaf.
inline CheckReport check_sem_representable(const RepresentableTheory& R, const GradedMonoid& t,
                                           int maxC) {
    CheckReport rep;
    int idp = -1;
    for (std::size_t p = 0; p < R.core->elems[0].size(); ++p)
        if (R.core->elems[0][p].comp == graded_id(t.T).comp) idp = static_cast<int>(p);
    if (idp < 0) {
        rep.fail("identity of the carrier not found");
        return rep;
    }
    long long total = 0;
    for (int C = 0; C <= maxC; ++C) {
        auto pmods = presheaf_models(R.P, C);
        auto gmods = graded_models(t, C);
        if (pmods.size() != gmods.size())
            rep.fail("model counts differ at carrier " + std::to_string(C));
        total += static_cast<long long>(pmods.size());
        std::vector<int> match(pmods.size(), -1);
        for (std::size_t a = 0; a < pmods.size(); ++a) {
            const auto& xi = pmods[a].xi[0][idp];
            for (std::size_t b = 0; b < gmods.size(); ++b)
                if (gmods[b].xi.comp == xi.comp) match[a] = static_cast<int>(b);
            if (match[a] < 0) rep.fail("a presheaf model has no counterpart");
        }
        std::vector<bool> seen(gmods.size(), false);
        for (int b : match) {
            if (b < 0) continue;
            if (seen[b]) rep.fail("correspondence is not injective");
            seen[b] = true;
        }
        // Homomorphism sets agree.
        for (std::size_t a = 0; a < pmods.size(); ++a)
            for (std::size_t b = 0; b < pmods.size(); ++b) {
                if (match[a] < 0 || match[b] < 0) continue;
                for (const auto& f : all_functions(C, C)) {
                    bool ph = is_presheaf_model_hom(R.P, pmods[a], pmods[b], f);
                    bool gh = is_model_hom(t, gmods[match[a]], gmods[match[b]], f);
                    if (ph != gh)
                        rep.fail("homomorphism sets differ at carrier " + std::to_string(C));
                }
            }
    }
    rep.counts["models"] = total;
    return rep;
}

// ---------------------------------------------------------------------------
// Over-categories and Str
// ---------------------------------------------------------------------------

// An object of CAT over the finite-set window: a finite category A with a
// carrier set and a function table for every morphism.
struct OverCategory {
    FinCategory A;
    std::vector<int> carrier;          // per object
    std::vector<std::vector<int>> fn;  // per morphism
};

inline CheckReport check_over_category(const OverCategory& V) {
    CheckReport rep = check_category(V.A);
    for (int f = 0; f < V.A.n_morphisms(); ++f) {
        if (static_cast<int>(V.fn[f].size()) != V.carrier[V.A.src(f)])
            rep.fail("function table has wrong domain size");
        for (int v : V.fn[f])
            if (v < 0 || v >= V.carrier[V.A.dst(f)]) rep.fail("function table out of range");
    }
    for (int a = 0; a < V.A.n_objects(); ++a) {
        const auto& idt = V.fn[V.A.id(a)];
        for (int x = 0; x < V.carrier[a]; ++x)
            if (idt[x] != x) rep.fail("identity does not carry the identity function");
    }
    for (int g = 0; g < V.A.n_morphisms(); ++g)
        for (int f = 0; f < V.A.n_morphisms(); ++f) {
            if (!V.A.composable(g, f)) continue;
            int gf = V.A.compose(g, f);
            for (int x = 0; x < V.carrier[V.A.src(f)]; ++x)
                if (V.fn[gf][x] != V.fn[g][V.fn[f][x]])
                    rep.fail("function tables are not functorial");
        }
    return rep;
}

inline OverCategory over_empty() { return OverCategory{empty_category(), {}, {}}; }

inline OverCategory over_terminal(int C) {
    OverCategory V;
    V.A = terminal_category();
    V.carrier = {C};
    std::vector<int> idt(C);
    std::iota(idt.begin(), idt.end(), 0);
    V.fn = {idt};
    return V;
}

// Two objects with one non-identity arrow carrying the given function.
inline OverCategory over_arrow(int C0, int C1, std::vector<int> f) {
    OverCategory V;
    V.A.add_object("a");
    V.A.add_object("b");
    V.A.identity = {V.A.add_morphism("id_a", 0, 0), V.A.add_morphism("id_b", 1, 1)};
    int ar = V.A.add_morphism("f", 0, 1);
    V.A.comp_table[0][0] = 0;
    V.A.comp_table[1][1] = 1;
    V.A.comp_table[ar][0] = ar;
    V.A.comp_table[1][ar] = ar;
    V.carrier = {C0, C1};
    std::vector<int> id0(C0), id1(C1);
    std::iota(id0.begin(), id0.end(), 0);
    std::iota(id1.begin(), id1.end(), 0);
    V.fn = {id0, id1, std::move(f)};
    return V;
}

// The finite-set window itself as an object over itself.
inline OverCategory over_finset_window(int maxC) {
    OverCategory V;
    V.A = finset_window_category(maxC, &V.fn);
    for (int n = 0; n <= maxC; ++n) V.carrier.push_back(n);
    return V;
}

inline OverCategory model_cat_over(const PModelCat& MC) {
    OverCategory V;
    V.A = *MC.cat;
    for (const auto& m : MC.models) V.carrier.push_back(m.C);
    V.fn = MC.mor_tab;
    return V;
}

// Post-compose an interpretation's values with a carrier function h: B -> B2.
inline GradedMap interp_post(const GradedOb& X, const GradedMap& t, int A, int B, int B2,
                             const std::vector<int>& h) {
    GradedMap out;
    out.comp.resize(X.W + 1);
    for (int n = 0; n <= X.W; ++n) {
        out.comp[n].resize(X.card[n]);
        long long tuples = 1;
        for (int r = 0; r < n; ++r) tuples *= A;
        std::vector<int> args(n);
        for (int x = 0; x < X.card[n]; ++x) {
            int g = 0;
            long long place = 1;
            for (long long tp = 0; tp < tuples; ++tp) {
                long long rest = tp;
                for (int r = 0; r < n; ++r) {
                    args[r] = static_cast<int>(rest % A);
                    rest /= A;
                }
                g += h[hom_eval(A, B, n, t.comp[n][x], args)] * static_cast<int>(place);
                place *= B2;
            }
            out.comp[n][x] = g;
        }
    }
    return out;
}

// Pre-compose an interpretation's arguments with a carrier function h: A2 -> A.
inline GradedMap interp_pre(const GradedOb& X, const GradedMap& t, int A, int B, int A2,
                            const std::vector<int>& h) {
    GradedMap out;
    out.comp.resize(X.W + 1);
    for (int n = 0; n <= X.W; ++n) {
        out.comp[n].resize(X.card[n]);
        long long tuples = 1;
        for (int r = 0; r < n; ++r) tuples *= A2;
        std::vector<int> args(n), pulled(n);
        for (int x = 0; x < X.card[n]; ++x) {
            int g = 0;
            long long place = 1;
            for (long long tp = 0; tp < tuples; ++tp) {
                long long rest = tp;
                for (int r = 0; r < n; ++r) {
                    args[r] = static_cast<int>(rest % A2);
                    pulled[r] = h[args[r]];
                    rest /= A2;
                }
                g += hom_eval(A, B, n, t.comp[n][x], pulled) * static_cast<int>(place);
                place *= B;
            }
            out.comp[n][x] = g;
        }
    }
    return out;
}

// Str(V): stage sets are ends of the interpretation diagrams over A, computed
// by the generic end routine; the lax structure is inherited componentwise.
// The payload lives in a shared core that the closures of the exported
// PresheafTheory reference strongly, so copies of the theory stay valid.
struct StrCore {
    std::shared_ptr<GradedWindowSpec> M;
    OverCategory V;
    // interp[(i, Cb, Ca)] = interpretations of obs[i] with carriers Cb -> Ca.
    std::map<std::tuple<int, int, int>, std::vector<GradedMap>> interp;
    std::map<std::tuple<int, int, int>, std::map<std::vector<std::vector<int>>, int>> iidx;
    std::vector<std::vector<std::vector<int>>> families;  // families[i][p][a]
    std::vector<std::map<std::vector<int>, int>> fidx;

    int interp_index(int i, int Cb, int Ca, const GradedMap& t) const {
        auto it = iidx.at({i, Cb, Ca}).find(t.comp);
        return it == iidx.at({i, Cb, Ca}).end() ? -1 : it->second;
    }
    int family_index(int i, const std::vector<int>& fam) const {
        auto it = fidx[i].find(fam);
        return it == fidx[i].end() ? -1 : it->second;
    }
};

struct StrTheory {
    PresheafTheory P;
    std::shared_ptr<const StrCore> core;
};

inline StrTheory structure_theory(std::shared_ptr<GradedWindowSpec> M, const OverCategory& V,
                                  long long end_cap = 20000000) {
    auto S = std::make_shared<StrCore>();
    S->M = M;
    S->V = V;
    StrTheory out;
    out.P.M = M;
    int no = static_cast<int>(M->obs.size());
    const FinCategory& A = S->V.A;

    auto need = [&](int i, int Cb, int Ca) -> const std::vector<GradedMap>& {
        auto key = std::make_tuple(i, Cb, Ca);
        auto it = S->interp.find(key);
        if (it == S->interp.end()) {
            auto list = all_natural_maps(M->fl, M->obs[i], finset_hom_ob(M->fl, M->W, Cb, Ca));
            auto& idx = S->iidx[key];
            for (std::size_t p = 0; p < list.size(); ++p)
                idx[list[p].comp] = static_cast<int>(p);
            it = S->interp.emplace(key, std::move(list)).first;
        }
        return it->second;
    };

    S->families.resize(no);
    S->fidx.resize(no);
    for (int i = 0; i < no; ++i) {
        Profunctor D;
        D.A = &S->V.A;
        D.B = &S->V.A;
        D.allocate();
        long long product = 1;
        for (int b = 0; b < A.n_objects(); ++b)
            for (int a = 0; a < A.n_objects(); ++a)
                D.size[b][a] =
                    static_cast<int>(need(i, S->V.carrier[b], S->V.carrier[a]).size());
        for (int a = 0; a < A.n_objects(); ++a) {
            product *= std::max(1, D.size[a][a]);
            if (product > end_cap) throw SearchSpaceTooLarge("end product too large");
        }
        D.allocate_actions();
        for (int f = 0; f < A.n_morphisms(); ++f) {
            int a = A.src(f), ap = A.dst(f);
            for (int b = 0; b < A.n_objects(); ++b) {
                const auto& from = need(i, S->V.carrier[b], S->V.carrier[a]);
                for (std::size_t x = 0; x < from.size(); ++x) {
                    auto img = interp_post(M->obs[i], from[x], S->V.carrier[b],
                                           S->V.carrier[a], S->V.carrier[ap], S->V.fn[f]);
                    D.left_act[f][b][x] =
                        S->interp_index(i, S->V.carrier[b], S->V.carrier[ap], img);
                    assert(D.left_act[f][b][x] >= 0);
                }
            }
            // Contravariant leg: f also acts as a morphism on the b side.
            int bp = A.src(f), b = A.dst(f);
            for (int a = 0; a < A.n_objects(); ++a) {
                const auto& from = need(i, S->V.carrier[b], S->V.carrier[a]);
                for (std::size_t x = 0; x < from.size(); ++x) {
                    auto img = interp_pre(M->obs[i], from[x], S->V.carrier[b],
                                          S->V.carrier[a], S->V.carrier[bp], S->V.fn[f]);
                    D.right_act[f][a][x] =
                        S->interp_index(i, S->V.carrier[bp], S->V.carrier[a], img);
                    assert(D.right_act[f][a][x] >= 0);
                }
            }
        }
        S->families[i] = compute_end(D);
        for (std::size_t p = 0; p < S->families[i].size(); ++p)
            S->fidx[i][S->families[i][p]] = static_cast<int>(p);
        out.P.card.push_back(static_cast<int>(S->families[i].size()));
    }

    std::shared_ptr<const StrCore> c = S;
    out.P.act = [c](int i, int j, const GradedMap& f, int p) {
        std::vector<int> fam;
        for (int a = 0; a < c->V.A.n_objects(); ++a) {
            int C = c->V.carrier[a];
            const auto& phi = c->interp.at({j, C, C})[c->families[j][p][a]];
            int idx = c->interp_index(i, C, C, graded_compose(phi, f));
            assert(idx >= 0);
            fam.push_back(idx);
        }
        int res = c->family_index(i, fam);
        assert(res >= 0 && "restriction left the end");
        return res;
    };
    // Unit family: the distinguished argument-selection interpretation at
    // every object of A.
    {
        std::vector<int> fam;
        bool ok = true;
        for (int a = 0; a < A.n_objects(); ++a) {
            int C = S->V.carrier[a];
            int idx = S->interp_index(M->unit, C, C, interp_unit(M->fl, M->W, C));
            if (idx < 0) ok = false;
            fam.push_back(idx);
        }
        out.P.ebar = ok ? S->family_index(M->unit, fam) : -1;
        assert(out.P.ebar >= 0 && "unit family is not in the end");
    }
    out.P.mbar = [c](int i, int j, int p, int q) {
        const auto& M2 = *c->M;
        const auto& tr = M2.tens.at({i, j});
        std::vector<int> fam;
        for (int a = 0; a < c->V.A.n_objects(); ++a) {
            int C = c->V.carrier[a];
            const auto& phi = c->interp.at({i, C, C})[c->families[i][p][a]];
            const auto& psi = c->interp.at({j, C, C})[c->families[j][q][a]];
            CheckReport local;
            auto comp = interp_compose(M2.fl, tr.pres, phi, psi, C, C, C, &local);
            if (!local.ok) return -1;
            auto g = graded_compose(comp, tr.iso_inv);
            for (auto& row : g.comp)
                for (int v : row)
                    if (v < 0) return -1;
            int idx = c->interp_index(tr.k, C, C, g);
            if (idx < 0) return -1;
            fam.push_back(idx);
        }
        return c->family_index(tr.k, fam);
    };
    out.core = std::move(c);
    return out;
}

// ---------------------------------------------------------------------------
// Theory morphisms
// ---------------------------------------------------------------------------

namespace detail_strsem {

// Target wrapping an arbitrary presheaf theory Q over the same window; values
// at object i are elements of Q(i).
struct TheoryTarget {
    const PresheafTheory* Q;

    using Val = int;
    std::vector<Val> enumerate(int i) {
        std::vector<int> out(Q->card[i]);
        std::iota(out.begin(), out.end(), 0);
        return out;
    }
    std::optional<Val> act(int i, int j, const GradedMap& f, const Val& v) {
        return Q->act(i, j, f, v);
    }
    std::optional<Val> mul(int i, int j, const Val& a, const Val& b) {
        int v = Q->mbar(i, j, a, b);
        if (v < 0) return std::nullopt;
        return v;
    }
    Val unit() { return Q->ebar; }
    bool eq(const Val& a, const Val& b) { return a == b; }
};

}  // namespace detail_strsem

// A theory morphism P -> Q as functions sigma[i]: P(i) -> Q(i), stored flat
// per object.
using TheoryMor = std::vector<std::vector<int>>;

inline std::vector<TheoryMor> theory_morphisms(const PresheafTheory& P,
                                               const PresheafTheory& Q) {
    detail_strsem::TheoryTarget tgt{&Q};
    LaxSolver<detail_strsem::TheoryTarget> solver(P, tgt);
    std::vector<TheoryMor> out;
    for (auto& flat : solver.solve()) {
        TheoryMor m(P.M->obs.size());
        for (std::size_t i = 0; i < P.M->obs.size(); ++i)
            for (int p = 0; p < P.card[i]; ++p) m[i].push_back(flat[solver.offset[i] + p]);
        out.push_back(std::move(m));
    }
    return out;
}

inline CheckReport check_theory_morphism(const PresheafTheory& P, const PresheafTheory& Q,
                                         const TheoryMor& sigma) {
    detail_strsem::TheoryTarget tgt{&Q};
    LaxSolver<detail_strsem::TheoryTarget> solver(P, tgt);
    std::vector<int> flat;
    for (auto& row : sigma)
        for (int v : row) flat.push_back(v);
    return solver.verify(flat);
}

// ---------------------------------------------------------------------------
// The structure-semantics adjunction
// ---------------------------------------------------------------------------

// Functors A -> Mod(P) lying over V: an assignment of a model with the right
// carrier to every object of A such that every carried function is a model
// homomorphism (functoriality is then automatic, morphisms being functions).
struct OverMor {
    std::vector<int> model_of;  // per object of A: index into the model list
};

inline std::vector<OverMor> over_morphisms(const PresheafTheory& P, const OverCategory& V,
                                           const std::vector<PModel>& models) {
    std::vector<std::vector<int>> candidates(V.A.n_objects());
    for (int a = 0; a < V.A.n_objects(); ++a)
        for (std::size_t m = 0; m < models.size(); ++m)
            if (models[m].C == V.carrier[a]) candidates[a].push_back(static_cast<int>(m));
    std::vector<OverMor> out;
    std::vector<std::size_t> radix;
    for (auto& c : candidates) radix.push_back(c.size());
    for_each_tuple(radix, [&](const std::vector<std::size_t>& pick) {
        OverMor K;
        for (int a = 0; a < V.A.n_objects(); ++a) K.model_of.push_back(candidates[a][pick[a]]);
        for (int f = 0; f < V.A.n_morphisms(); ++f)
            if (!is_presheaf_model_hom(P, models[K.model_of[V.A.src(f)]],
                                       models[K.model_of[V.A.dst(f)]], V.fn[f]))
                return true;
        out.push_back(std::move(K));
        return true;
    });
    return out;
}

// The two directions of the correspondence Th(P, Str V) <-> Over(V, Sem P).
inline OverMor adjunct_forward(const PresheafTheory& P, const StrTheory& S,
                               const TheoryMor& sigma, const std::vector<PModel>& models) {
    const auto& M = *P.M;
    OverMor K;
    for (int a = 0; a < S.core->V.A.n_objects(); ++a) {
        int C = S.core->V.carrier[a];
        PModel m;
        m.C = C;
        m.xi.resize(M.obs.size());
        for (std::size_t i = 0; i < M.obs.size(); ++i)
            for (int p = 0; p < P.card[i]; ++p)
                m.xi[i].push_back(
                    S.core->interp.at({static_cast<int>(i), C, C})[S.core->families[i][sigma[i][p]][a]]);
        int found = -1;
        for (std::size_t idx = 0; idx < models.size(); ++idx)
            if (models[idx].C == C) {
                bool same = true;
                for (std::size_t i = 0; i < M.obs.size() && same; ++i)
                    for (int p = 0; p < P.card[i]; ++p)
                        if (models[idx].xi[i][p].comp != m.xi[i][p].comp) same = false;
                if (same) found = static_cast<int>(idx);
            }
        K.model_of.push_back(found);
    }
    return K;
}

inline TheoryMor adjunct_backward(const PresheafTheory& P, const StrTheory& S,
                                  const OverMor& K, const std::vector<PModel>& models) {
    const auto& M = *P.M;
    TheoryMor sigma(M.obs.size());
    for (std::size_t i = 0; i < M.obs.size(); ++i)
        for (int p = 0; p < P.card[i]; ++p) {
            std::vector<int> fam;
            for (int a = 0; a < S.core->V.A.n_objects(); ++a) {
                int C = S.core->V.carrier[a];
                int idx = S.core->interp_index(static_cast<int>(i), C, C,
                                         models[K.model_of[a]].xi[i][p]);
                fam.push_back(idx);
            }
            sigma[i].push_back(S.core->family_index(static_cast<int>(i), fam));
        }
    return sigma;
}

// Full verification of the adjunction bijection for one (P, V) pair:
// enumerate both sides, check the two maps are total, well defined and
// mutually inverse.
inline CheckReport adjunction_bijection(const PresheafTheory& P, const OverCategory& V,
                                        CheckReport* vrep = nullptr) {
    CheckReport rep;
    auto over_check = check_over_category(V);
    if (vrep) *vrep = over_check;
    if (!over_check.ok) {
        rep.fail("over-category data invalid");
        return rep;
    }
    auto S = structure_theory(P.M, V);

    auto lhs = theory_morphisms(P, S.P);
    // Models are needed at every carrier V uses.
    std::vector<PModel> models;
    std::vector<int> carriers = V.carrier;
    std::sort(carriers.begin(), carriers.end());
    carriers.erase(std::unique(carriers.begin(), carriers.end()), carriers.end());
    for (int C : carriers)
        for (auto& m : presheaf_models(P, C)) models.push_back(std::move(m));
    auto rhs = over_morphisms(P, V, models);

    rep.counts["lhs"] = static_cast<long long>(lhs.size());
    rep.counts["rhs"] = static_cast<long long>(rhs.size());
    if (lhs.size() != rhs.size()) rep.fail("hom-set cardinalities differ");

    auto same_over = [&](const OverMor& a, const OverMor& b) { return a.model_of == b.model_of; };
    std::vector<int> fwd(lhs.size(), -1);
    for (std::size_t s = 0; s < lhs.size(); ++s) {
        auto K = adjunct_forward(P, S, lhs[s], models);
        for (int m : K.model_of)
            if (m < 0) rep.fail("forward transpose does not land in a model");
        for (std::size_t r = 0; r < rhs.size(); ++r)
            if (same_over(K, rhs[r])) fwd[s] = static_cast<int>(r);
        if (fwd[s] < 0) {
            rep.fail("forward transpose is not an over-morphism");
            continue;
        }
        auto back = adjunct_backward(P, S, K, models);
        if (back != lhs[s]) rep.fail("backward transpose does not invert forward");
    }
    std::vector<bool> seen(rhs.size(), false);
    for (int r : fwd) {
        if (r < 0) continue;
        if (seen[r]) rep.fail("forward transpose is not injective");
        seen[r] = true;
    }
    for (std::size_t r = 0; r < rhs.size(); ++r) {
        if (seen[r]) continue;
        auto sigma = adjunct_backward(P, S, rhs[r], models);
        bool valid = true;
        for (auto& row : sigma)
            for (int v : row)
                if (v < 0) valid = false;
        if (!valid) {
            rep.fail("backward transpose leaves the end");
            continue;
        }
        bool found = false;
        for (auto& l : lhs)
            if (l == sigma) found = true;
        if (!found) rep.fail("forward transpose is not surjective");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Unit maps and triangle identities
// ---------------------------------------------------------------------------

// eta_P: P -> Str(Sem_{<=maxC} P), componentwise evaluation of each element
// across all models.
inline TheoryMor unit_into_structure(const PresheafTheory& P, const PModelCat& MC,
                                     const StrTheory& S, CheckReport* rep = nullptr) {
    const auto& M = *P.M;
    TheoryMor sigma(M.obs.size());
    for (std::size_t i = 0; i < M.obs.size(); ++i)
        for (int p = 0; p < P.card[i]; ++p) {
            std::vector<int> fam;
            for (std::size_t m = 0; m < MC.models.size(); ++m) {
                int C = MC.models[m].C;
                fam.push_back(S.core->interp_index(static_cast<int>(i), C, C, MC.models[m].xi[i][p]));
            }
            int idx = S.core->family_index(static_cast<int>(i), fam);
            if (idx < 0 && rep) rep->fail("unit component is not in the end");
            sigma[i].push_back(idx);
        }
    if (rep) rep->merge(check_theory_morphism(P, S.P, sigma), "unit");
    return sigma;
}

// eta'_V: V -> Sem(Str V), sending an object of A to the evaluation model at
// it. Returns the models (per object of A) for further checking.
inline std::vector<PModel> unit_into_semantics(const StrTheory& S, CheckReport* rep = nullptr) {
    const auto& M = *S.P.M;
    std::vector<PModel> out;
    for (int a = 0; a < S.core->V.A.n_objects(); ++a) {
        PModel m;
        m.C = S.core->V.carrier[a];
        m.xi.resize(M.obs.size());
        for (std::size_t i = 0; i < M.obs.size(); ++i)
            for (int p = 0; p < S.P.card[i]; ++p)
                m.xi[i].push_back(
                    S.core->interp.at({static_cast<int>(i), m.C, m.C})[S.core->families[i][p][a]]);
        if (rep) rep->merge(check_presheaf_model(S.P, m), "evaluation model");
        out.push_back(std::move(m));
    }
    if (rep)
        for (int f = 0; f < S.core->V.A.n_morphisms(); ++f)
            if (!is_presheaf_model_hom(S.P, out[S.core->V.A.src(f)], out[S.core->V.A.dst(f)], S.core->V.fn[f]))
                rep->fail("carried function is not a homomorphism of evaluation models");
    return out;
}

// Both triangle identities of Str -| Sem on one (P, V) instance.
inline CheckReport check_str_sem_triangles(const PresheafTheory& P, const OverCategory& V,
                                           int maxC) {
    CheckReport rep;
    auto S = structure_theory(P.M, V);

    // Triangle on the theory side: Sem(eta_P) o eta'_{Sem P} = id_{Sem P}.
    auto MC = presheaf_model_category(P, maxC);
    auto VP = model_cat_over(MC);
    auto SP = structure_theory(P.M, VP);
    auto eta = unit_into_structure(P, MC, SP, &rep);
    // eta'_{Sem P} at model m is the evaluation model of Str(Sem P); pulling
    // it back along eta_P must return m itself.
    auto evals = unit_into_semantics(SP, nullptr);
    for (std::size_t m = 0; m < MC.models.size(); ++m)
        for (std::size_t i = 0; i < P.M->obs.size(); ++i)
            for (int p = 0; p < P.card[i]; ++p) {
                if (eta[i][p] < 0) continue;
                const auto& back = evals[m].xi[i][eta[i][p]];
                if (back.comp != MC.models[m].xi[i][p].comp)
                    rep.fail("theory-side triangle fails");
            }

    // Triangle on the over side: Str(eta'_V) o eta_{Str V} = id_{Str V}.
    auto MCS = presheaf_model_category(S.P, maxC);
    auto VS = model_cat_over(MCS);
    auto SS = structure_theory(P.M, VS);
    auto etaS = unit_into_structure(S.P, MCS, SS, &rep);
    // eta'_V picks, per object a of A, the evaluation model of Str V.
    auto evV = unit_into_semantics(S, &rep);
    std::vector<int> pos(S.core->V.A.n_objects(), -1);
    for (int a = 0; a < S.core->V.A.n_objects(); ++a) {
        for (std::size_t m = 0; m < MCS.models.size(); ++m) {
            if (MCS.models[m].C != evV[a].C) continue;
            bool same = true;
            for (std::size_t i = 0; i < P.M->obs.size() && same; ++i)
                for (int p = 0; p < S.P.card[i]; ++p)
                    if (MCS.models[m].xi[i][p].comp != evV[a].xi[i][p].comp) same = false;
            if (same) pos[a] = static_cast<int>(m);
        }
        if (pos[a] < 0) rep.fail("evaluation model is missing from Sem(Str V)");
    }
    for (std::size_t i = 0; i < P.M->obs.size(); ++i)
        for (int q = 0; q < S.P.card[i]; ++q) {
            if (etaS[i][q] < 0) continue;
            for (int a = 0; a < S.core->V.A.n_objects(); ++a) {
                if (pos[a] < 0) continue;
                // Component of Str(eta'_V)(eta_{Str V}(q)) at a.
                int got = SS.core->families[i][etaS[i][q]][pos[a]];
                if (got != S.core->families[i][q][a]) rep.fail("over-side triangle fails");
            }
        }
    rep.counts["models"] = static_cast<long long>(MC.models.size());
    return rep;
}

}  // namespace algkit
