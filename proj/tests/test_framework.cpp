#include <catch2/catch_amalgamated.hpp>

#include "algkit/framework.hpp"
#include "algkit/terms.hpp"

using namespace algkit;

namespace {

constexpr int W = 2;

std::vector<GradedMonoid> all_theories() {
    return {plain_monoid_theory(W), commutative_monoid_theory(W), symmetric_monoid_theory(W),
            subst_monoid_theory(W), commutative_subst_theory(W)};
}

const char* theory_names[] = {"plain", "commutative", "symmetric", "substitution",
                              "commutative substitution"};

// Function table of a morphism in a category built by finset_window_category:
// morphisms between fixed objects are added in lexicographic table order.
std::vector<int> window_table(const FinCategory& c, int f) {
    auto hom = c.hom(c.src(f), c.dst(f));
    auto pos = std::find(hom.begin(), hom.end(), f) - hom.begin();
    return all_functions(c.src(f), c.dst(f))[pos];
}

}  // namespace

TEST_CASE("re-indexing maps per flavor", "[framework]") {
    SECTION("counts") {
        REQUIRE(flavor_maps(Flavor::Plain, 2, 2).size() == 1);
        REQUIRE(flavor_maps(Flavor::Plain, 1, 2).empty());
        REQUIRE(flavor_maps(Flavor::Symmetric, 3, 3).size() == 6);
        REQUIRE(flavor_maps(Flavor::Symmetric, 1, 2).empty());
        REQUIRE(flavor_maps(Flavor::Full, 2, 3).size() == 9);
        REQUIRE(flavor_maps(Flavor::Full, 0, 3).size() == 1);
    }
    SECTION("index inverts the enumeration") {
        const auto& maps = flavor_maps(Flavor::Full, 2, 2);
        for (int i = 0; i < static_cast<int>(maps.size()); ++i)
            REQUIRE(flavor_map_index(Flavor::Full, 2, 2, maps[i]) == i);
    }
    SECTION("representable stages are the hom sets out of [k]") {
        auto R = representable(Flavor::Full, 1, W);
        REQUIRE(R.card == std::vector<int>{0, 1, 2});
        auto S = unit_ob(Flavor::Symmetric, W);
        REQUIRE(S.card == std::vector<int>{0, 1, 0});
    }
}

TEST_CASE("natural maps between graded objects", "[framework]") {
    auto hom22 = [](Flavor fl) { return finset_hom_ob(fl, W, 2, 2); };
    SECTION("no constraints in the plain flavor") {
        auto t = plain_monoid_theory(W);
        REQUIRE(all_natural_maps(Flavor::Plain, t.T, hom22(Flavor::Plain)).size() == 2 * 4 * 16);
    }
    SECTION("bijection-invariance cuts the commutative carrier down") {
        // Stage 2 must be fixed by the swap: 8 of the 16 binary tables.
        auto t = commutative_monoid_theory(W);
        REQUIRE(all_natural_maps(Flavor::Symmetric, t.T, hom22(Flavor::Symmetric)).size() ==
                2 * 4 * 8);
    }
    SECTION("free carriers have free interpretation sets") {
        // One generator per stage in both the symmetric and substitution
        // encodings, so 2 * 4 * 16 interpretations with carriers 2, 2.
        REQUIRE(interpretations(Flavor::Symmetric, symmetric_monoid_theory(W).T, 2, 2).size() ==
                128);
        REQUIRE(interpretations(Flavor::Full, subst_monoid_theory(W).T, 2, 2).size() == 128);
    }
    SECTION("non-natural maps are rejected") {
        auto t = commutative_monoid_theory(W);
        GradedMap bad;
        bad.comp = {{0}, {0}, {2}};  // table 2 is not swap-invariant
        REQUIRE_FALSE(check_graded_map(Flavor::Symmetric, t.T, hom22(Flavor::Symmetric),
                                       bad).ok);
        GradedMap good;
        good.comp = {{0}, {0}, {0}};
        REQUIRE(check_graded_map(Flavor::Symmetric, t.T, hom22(Flavor::Symmetric), good).ok);
    }
}

TEST_CASE("substitution tensor", "[framework]") {
    SECTION("tensor of the substitution carrier matches the monad composite") {
        // Stagewise oracle: words of length <= W over the words of length <= W.
        auto t = subst_monoid_theory(W);
        auto TT = tensor_ob(Flavor::Full, W, t.T, t.T);
        for (int n = 0; n <= W; ++n)
            REQUIRE(TT.ob.card[n] ==
                    static_cast<int>(detail::word_count(detail::word_count(n, W), W)));
    }
    SECTION("triangle identity in all flavors") {
        for (auto [fl, T] :
             {std::pair<Flavor, GradedOb>{Flavor::Plain, plain_monoid_theory(W).T},
              {Flavor::Symmetric, symmetric_monoid_theory(W).T},
              {Flavor::Full, subst_monoid_theory(W).T}}) {
            auto rep = check_triangle(fl, W, T, T);
            INFO(flavor_name(fl) << ": " << rep.summary());
            REQUIRE(rep.ok);
            REQUIRE(rep.counts["checked"] > 0);
        }
    }
    SECTION("pentagon identity") {
        for (auto [fl, T] :
             {std::pair<Flavor, GradedOb>{Flavor::Plain, plain_monoid_theory(W).T},
              {Flavor::Symmetric, symmetric_monoid_theory(W).T},
              {Flavor::Full, unit_ob(Flavor::Full, W)}}) {
            auto rep = check_pentagon(fl, W, T, T, T, T);
            INFO(flavor_name(fl) << ": " << rep.summary());
            REQUIRE(rep.ok);
            REQUIRE(rep.counts["checked"] > 0);
        }
    }
    SECTION("tensor is functorial on sampled natural maps") {
        auto t = symmetric_monoid_theory(W);
        auto nats = all_natural_maps(Flavor::Symmetric, t.T, t.T);
        REQUIRE(nats.size() >= 2);
        nats.resize(2);
        auto rep = check_tensor_functorial(Flavor::Symmetric, W, t.T, t.T, nats, nats);
        INFO(rep.summary());
        REQUIRE(rep.ok);
    }
}

TEST_CASE("theory encodings are monoid objects", "[framework]") {
    SECTION("all five encodings satisfy unit and associativity laws") {
        auto ts = all_theories();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            auto rep = check_graded_monoid(ts[i]);
            INFO(theory_names[i] << ": " << rep.summary());
            REQUIRE(rep.ok);
            REQUIRE(rep.counts["checked"] > 0);
        }
    }
    SECTION("reversed substitution is rejected") {
        auto t = subst_monoid_theory(W);
        auto good = t.m_raw;
        t.m_raw = [good](int n, const TensorData::Raw& raw, const TensorData& d) {
            int v = good(n, raw, d);
            if (v < 0) return v;
            auto w = detail::word_decode(n, W, v);
            std::reverse(w.begin(), w.end());
            return static_cast<int>(detail::word_encode(n, W, w));
        };
        REQUIRE_FALSE(check_graded_monoid(t).ok);
    }
    SECTION("corrupted unit is rejected") {
        auto t = subst_monoid_theory(W);
        std::swap(t.e.comp[2][0], t.e.comp[2][1]);
        auto rep = check_graded_monoid(t);
        REQUIRE_FALSE(rep.ok);
    }
}

TEST_CASE("finite-set interpretations", "[framework]") {
    SECTION("hom stages and evaluation") {
        REQUIRE(hom_card(2, 2, 2) == 16);
        // Table code 6 = XOR on two booleans (little-endian over tuples).
        REQUIRE(hom_eval(2, 2, 2, 6, {0, 0}) == 0);
        REQUIRE(hom_eval(2, 2, 2, 6, {1, 0}) == 1);
        REQUIRE(hom_eval(2, 2, 2, 6, {1, 1}) == 0);
    }
    SECTION("coherence of composition with units and associativity") {
        auto T = subst_monoid_theory(W).T;
        auto rep = check_interpretation_coherence(Flavor::Full, W, T, T, T, 2, 2, 2, 2);
        INFO(rep.summary());
        REQUIRE(rep.ok);
        auto S = symmetric_monoid_theory(W).T;
        auto rep2 = check_interpretation_coherence(Flavor::Symmetric, W, S, S, S, 2, 2, 2, 2);
        INFO(rep2.summary());
        REQUIRE(rep2.ok);
    }
    SECTION("interpretations = functions on the collapsed action") {
        auto rep = check_action_interpretation(Flavor::Full, subst_monoid_theory(W).T, 2, 2);
        INFO(rep.summary());
        REQUIRE(rep.ok);
        REQUIRE(rep.counts["classes"] == 7);
        REQUIRE(rep.counts["interpretations"] == 128);
        auto rep2 =
            check_action_interpretation(Flavor::Symmetric, symmetric_monoid_theory(W).T, 2, 2);
        INFO(rep2.summary());
        REQUIRE(rep2.ok);
        REQUIRE(rep2.counts["interpretations"] == 128);
    }
}

TEST_CASE("models of the encoded theories", "[framework]") {
    SECTION("model counts agree with equational enumeration") {
        auto oracle2 = enumerate_models(monoid_presentation(), 2).size();
        REQUIRE(oracle2 == 4);
        auto ts = all_theories();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            INFO(theory_names[i]);
            REQUIRE(graded_models(ts[i], 0).empty());
            REQUIRE(graded_models(ts[i], 1).size() == 1);
            // Every 2-element monoid is commutative, so the commutative
            // encodings agree with the others at this carrier.
            REQUIRE(graded_models(ts[i], 2).size() == oracle2);
        }
    }
    SECTION("model category with its forgetful functor") {
        auto MC = graded_model_category(subst_monoid_theory(W), 2);
        REQUIRE(MC.cat->n_objects() == 5);
        REQUIRE(MC.cat->n_morphisms() == 33);
        REQUIRE(check_category(*MC.cat).ok);
        REQUIRE(check_category(*MC.base).ok);
        REQUIRE(check_functor(MC.forget).ok);
    }
    SECTION("homomorphism tables respect the model structure") {
        auto t = subst_monoid_theory(W);
        auto models = graded_models(t, 2);
        // Identity is always a homomorphism; a swap is one only between
        // matching structures.
        for (const auto& m : models) REQUIRE(is_model_hom(t, m, m, {0, 1}));
        int swaps = 0;
        for (const auto& a : models)
            for (const auto& b : models)
                if (is_model_hom(t, a, b, {1, 0})) ++swaps;
        REQUIRE(swaps > 0);
        REQUIRE(swaps < 16);
    }
}

TEST_CASE("flavor inclusions carry adjoint pairs", "[framework]") {
    SECTION("generator data and adjunction for the standard inclusions") {
        for (auto [name, L] : {std::pair<const char*, FlavorInclusion>{
                                   "plain->symmetric", plain_to_symmetric_inclusion(W)},
                               {"plain->full", plain_to_full_inclusion(W)},
                               {"symmetric->full", symmetric_to_full_inclusion(W)},
                               {"commutative symmetric->full",
                                commutative_symmetric_to_full_inclusion(W)}}) {
            auto rep = check_inclusion_adjoint_pair(L);
            INFO(name << ": " << rep.summary());
            REQUIRE(rep.ok);
        }
    }
    SECTION("identity inclusion is self-adjoint") {
        auto t = symmetric_monoid_theory(W);
        auto L = identity_inclusion(Flavor::Symmetric, W, {unit_ob(Flavor::Symmetric, W), t.T});
        REQUIRE(check_inclusion_adjoint_pair(L).ok);
    }
    SECTION("corrupted generator data is rejected") {
        auto L = symmetric_to_full_inclusion(W);
        auto good = L.eta;
        L.eta = [good](int i, int k, int x) {
            if (i != 1 || k != 2) return good(i, k, x);
            // Swap the two embedded transposition words.
            return good(i, k, 1 - x);
        };
        REQUIRE_FALSE(check_inclusion_data(L).ok);
    }
}

TEST_CASE("interpretation transfer along hom families", "[framework]") {
    SECTION("hom family of the window itself recovers the interpretations") {
        auto t = subst_monoid_theory(W);
        std::vector<GradedOb> mids = {unit_ob(Flavor::Full, W), t.T};
        auto T = transfer_interpretations(Flavor::Full, mids,
                                          homsets_into(Flavor::Full, t.T, mids), 2, 2);
        auto rep = check_transfer_bijection(Flavor::Full, t.T, 2, 2, T);
        INFO(rep.summary());
        REQUIRE(rep.ok);
        REQUIRE(rep.counts["classes"] == 128);
        auto s = symmetric_monoid_theory(W);
        std::vector<GradedOb> smids = {unit_ob(Flavor::Symmetric, W), s.T};
        auto TS = transfer_interpretations(Flavor::Symmetric, smids,
                                           homsets_into(Flavor::Symmetric, s.T, smids), 2, 2);
        REQUIRE(check_transfer_bijection(Flavor::Symmetric, s.T, 2, 2, TS).ok);
    }
    SECTION("poorer-flavor hom family computes the free extension") {
        // Maps out of the poorer carrier into the richer window transfer to
        // exactly the interpretations of the freely extended carrier, which
        // by adjointness are the direct interpretations of the original one.
        auto L = plain_to_full_inclusion(W);
        auto T = transfer_interpretations(
            Flavor::Full, L.to_obs, homsets_into(Flavor::Plain, L.from_obs[1], L.to_obs), 2, 2);
        auto rep = check_transfer_bijection(Flavor::Plain, L.from_obs[1], 2, 2, T);
        INFO(rep.summary());
        REQUIRE(rep.ok);
        REQUIRE(rep.counts["classes"] == 128);

        auto LS = symmetric_to_full_inclusion(W);
        auto TS = transfer_interpretations(
            Flavor::Full, LS.to_obs, homsets_into(Flavor::Symmetric, LS.from_obs[1], LS.to_obs),
            2, 2);
        REQUIRE(check_transfer_bijection(Flavor::Symmetric, LS.from_obs[1], 2, 2, TS).ok);
    }
    SECTION("an empty hom family fails the bijection") {
        auto t = subst_monoid_theory(W);
        std::vector<GradedOb> mids = {unit_ob(Flavor::Full, W), t.T};
        std::vector<std::vector<GradedMap>> H(2);
        auto T = transfer_interpretations(Flavor::Full, mids, H, 2, 2);
        REQUIRE_FALSE(check_transfer_bijection(Flavor::Full, t.T, 2, 2, T).ok);
    }
}

TEST_CASE("comparison isomorphisms between encodings", "[framework]") {
    SECTION("monoid theory across all three flavors") {
        auto r1 = verify_comparison_iso(plain_to_symmetric_inclusion(W),
                                        plain_monoid_theory(W), symmetric_monoid_theory(W), 2);
        INFO(r1.summary());
        REQUIRE(r1.ok);
        REQUIRE(r1.counts["models"] == 5);  // 0 + 1 + 4 across carriers 0..2
        auto r2 = verify_comparison_iso(plain_to_full_inclusion(W), plain_monoid_theory(W),
                                        subst_monoid_theory(W), 2);
        REQUIRE(r2.ok);
        auto r3 = verify_comparison_iso(symmetric_to_full_inclusion(W),
                                        symmetric_monoid_theory(W), subst_monoid_theory(W), 2);
        REQUIRE(r3.ok);
        REQUIRE(r3.counts["models"] == 5);
    }
    SECTION("commutative theory across the symmetric and full flavors") {
        auto rep = verify_comparison_iso(commutative_symmetric_to_full_inclusion(W),
                                         commutative_monoid_theory(W),
                                         commutative_subst_theory(W), 2);
        INFO(rep.summary());
        REQUIRE(rep.ok);
        // All four 2-element monoids are commutative, so both sides see the
        // same 4 models at carrier 2.
        REQUIRE(rep.counts["models"] == 5);
        REQUIRE(rep.counts["models"] == rep.counts["models_target"]);
    }
    SECTION("transport into the wrong target theory is rejected") {
        auto rep = verify_comparison_iso(symmetric_to_full_inclusion(W),
                                         symmetric_monoid_theory(W),
                                         commutative_subst_theory(W), 2);
        REQUIRE_FALSE(rep.ok);
    }
}

TEST_CASE("Day convolution on monoidal windows", "[framework]") {
    SECTION("presheaf validation") {
        auto M = ordinal_sum_window(2);
        auto P = representable_wpresheaf(M.cat, 2);
        REQUIRE(check_wpresheaf(M.cat, P).ok);
        auto bad = P;
        std::swap(bad.act[M.cat.id(2)][0], bad.act[M.cat.id(2)][1]);
        REQUIRE_FALSE(check_wpresheaf(M.cat, bad).ok);
    }
    SECTION("unit representable is a unit, finite-ordinal window") {
        auto M = ordinal_sum_window(2);
        for (int a = 0; a <= 2; ++a) {
            auto rep = check_day_unit(M, representable_wpresheaf(M.cat, a));
            INFO("y(" << a << "): " << rep.summary());
            REQUIRE(rep.ok);
        }
        // A non-representable presheaf: subsets of [n] with preimage action.
        WPresheaf S;
        S.card = {1, 2, 4};
        S.act.resize(M.cat.n_morphisms());
        for (int f = 0; f < M.cat.n_morphisms(); ++f) {
            auto tab = window_table(M.cat, f);
            int a = M.cat.src(f), b = M.cat.dst(f);
            S.act[f].resize(1 << b);
            for (int sub = 0; sub < (1 << b); ++sub) {
                int pre = 0;
                for (int i = 0; i < a; ++i)
                    if (sub >> tab[i] & 1) pre |= 1 << i;
                S.act[f][sub] = pre;
            }
        }
        REQUIRE(check_wpresheaf(M.cat, S).ok);
        auto rep = check_day_unit(M, S);
        INFO(rep.summary());
        REQUIRE(rep.ok);
    }
    SECTION("representables convolve to the representable at the tensor") {
        auto M = ordinal_sum_window(2);
        REQUIRE(check_day_representables(M, 1, 1).ok);
        REQUIRE(check_day_representables(M, 0, 2).ok);
        REQUIRE(check_day_representables(M, 2, 0).ok);
    }
    SECTION("discrete group window: graded product formula") {
        auto M = cyclic_group_window(3);
        WPresheaf Q, P;
        Q.card = {2, 1, 1};
        P.card = {1, 2, 3};
        for (auto* X : {&Q, &P}) {
            X->act.resize(3);
            for (int i = 0; i < 3; ++i) {
                X->act[i].resize(X->card[i]);
                std::iota(X->act[i].begin(), X->act[i].end(), 0);
            }
        }
        auto D = day_convolution(M, Q, P);
        for (int z = 0; z < 3; ++z) {
            int expect = 0;
            for (int a = 0; a < 3; ++a) expect += Q.card[a] * P.card[(z - a + 3) % 3];
            REQUIRE(D.P.card[z] == expect);
        }
        REQUIRE(check_wpresheaf(M.cat, D.P).ok);
        REQUIRE(check_day_unit(M, P).ok);
        REQUIRE(check_day_representables(M, 1, 2).ok);
    }
}
