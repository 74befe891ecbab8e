#include <catch2/catch_amalgamated.hpp>

#include "algkit/strsem.hpp"

using namespace algkit;

namespace {

constexpr int W = 2;

void require_ok(const CheckReport& rep) {
    INFO(rep.summary());
    for (const auto& v : rep.violations) INFO(v);
    REQUIRE(rep.ok);
}

}  // namespace

TEST_CASE("representable presheaf theories are valid", "[strsem]") {
    SECTION("theory windows") {
        struct Row {
            const char* name;
            GradedMonoid t;
            std::vector<int> cards;
        };
        std::vector<Row> rows = {{"plain", plain_monoid_theory(W), {1, 1, 1}},
                                 {"commutative", commutative_monoid_theory(W), {1, 1, 1}},
                                 {"symmetric", symmetric_monoid_theory(W), {2, 1, 16}}};
        for (auto& row : rows) {
            INFO(row.name);
            auto R = theory_presheaf(row.t);
            REQUIRE(R.P.card == row.cards);
            require_ok(check_presheaf_theory(R.P));
        }
    }
    SECTION("representable window") {
        auto M = representable_window(Flavor::Full, W);
        auto yI = unit_presheaf(M);
        REQUIRE(yI.P.card == std::vector<int>{1, 2});
        require_ok(check_presheaf_theory(yI.P));
        require_ok(check_presheaf_theory(terminal_presheaf(M)));
    }
    SECTION("broken unit law is reported") {
        auto M = representable_window(Flavor::Full, W);
        auto yI = unit_presheaf(M);
        PresheafTheory bad = yI.P;
        auto good = bad.mbar;
        bad.mbar = [good](int i, int j, int p, int q) {
            int v = good(i, j, p, q);
            // Flip the result of multiplying with the unit on the right.
            if (i == 1 && j == 0 && v >= 0) return 1 - v;
            return v;
        };
        auto rep = check_presheaf_theory(bad);
        REQUIRE_FALSE(rep.ok);
    }
}

TEST_CASE("models of representable theories match the direct search", "[strsem]") {
    struct Row {
        const char* name;
        GradedMonoid t;
    };
    std::vector<Row> rows = {{"plain", plain_monoid_theory(W)},
                             {"commutative", commutative_monoid_theory(W)},
                             {"symmetric", symmetric_monoid_theory(W)}};
    for (auto& row : rows) {
        INFO(row.name);
        auto R = theory_presheaf(row.t);
        auto rep = check_sem_representable(R, row.t, 2);
        require_ok(rep);
        // 0 + 1 + 4 models over carriers 0..2, with matching hom sets.
        REQUIRE(rep.counts.at("models") == 5);
    }

    SECTION("a corrupted family is rejected") {
        auto t = plain_monoid_theory(W);
        auto R = theory_presheaf(t);
        auto models = presheaf_models(R.P, 2);
        REQUIRE(models.size() == 4);
        require_ok(check_presheaf_model(R.P, models[0]));
        PModel bad = models[0];
        bad.xi[0][0].comp[2][0] ^= 1;  // tweak the binary operation
        REQUIRE_FALSE(check_presheaf_model(R.P, bad).ok);
    }
}

TEST_CASE("structure theories over the representable window", "[strsem]") {
    auto M = representable_window(Flavor::Full, W);

    SECTION("empty base gives the terminal theory") {
        auto S = structure_theory(M, over_empty());
        REQUIRE(S.P.card == std::vector<int>{1, 1});
        require_ok(check_presheaf_theory(S.P));
    }

    SECTION("one object gives the operations on its carrier") {
        auto S = structure_theory(M, over_terminal(2));
        // C(C^1, C) and C(C^2, C) at C = 2.
        REQUIRE(S.P.card == std::vector<int>{4, 16});
        require_ok(check_presheaf_theory(S.P));
    }

    SECTION("one arrow filters pairs of operations") {
        std::vector<int> swap = {1, 0};
        auto S = structure_theory(M, over_arrow(2, 2, swap));
        for (int i = 0; i < 2; ++i) {
            auto list = interpretations(M->fl, M->obs[i], 2, 2);
            int expect = 0;
            for (const auto& a : list)
                for (const auto& b : list) {
                    auto post = interp_post(M->obs[i], a, 2, 2, 2, swap);
                    auto pre = interp_pre(M->obs[i], b, 2, 2, 2, swap);
                    if (post.comp == pre.comp) ++expect;
                }
            INFO("window object " << i);
            REQUIRE(S.P.card[i] == expect);
        }
        require_ok(check_presheaf_theory(S.P));
    }

    SECTION("the finite-set window gives the natural operations") {
        auto S = structure_theory(M, over_finset_window(2));
        // Natural unary operations: the identity. Natural binary
        // operations: the two projections.
        REQUIRE(S.P.card == std::vector<int>{1, 2});
        require_ok(check_presheaf_theory(S.P));
        // Independent oracle: filter families of operations by naturality
        // along every function between the carriers.
        auto V = over_finset_window(2);
        for (int i = 0; i < 2; ++i) {
            std::vector<std::vector<GradedMap>> lists;
            for (int C = 0; C <= 2; ++C) lists.push_back(interpretations(M->fl, M->obs[i], C, C));
            std::vector<std::size_t> radix;
            for (auto& l : lists) radix.push_back(l.size());
            int count = 0;
            for_each_tuple(radix, [&](const std::vector<std::size_t>& pick) {
                for (int f = 0; f < V.A.n_morphisms(); ++f) {
                    int s = V.A.src(f), d = V.A.dst(f);
                    auto post = interp_post(M->obs[i], lists[s][pick[s]], s, s, d, V.fn[f]);
                    auto pre = interp_pre(M->obs[i], lists[d][pick[d]], d, d, s, V.fn[f]);
                    if (post.comp != pre.comp) return true;
                }
                ++count;
                return true;
            });
            INFO("window object " << i);
            REQUIRE(S.P.card[i] == count);
        }
    }

    SECTION("post- and pre-composition with identities do nothing") {
        auto list = interpretations(M->fl, M->obs[1], 2, 2);
        std::vector<int> idt = {0, 1};
        for (const auto& t : list) {
            REQUIRE(interp_post(M->obs[1], t, 2, 2, 2, idt).comp == t.comp);
            REQUIRE(interp_pre(M->obs[1], t, 2, 2, 2, idt).comp == t.comp);
        }
    }
}

TEST_CASE("theory morphisms", "[strsem]") {
    auto M = representable_window(Flavor::Full, W);
    auto A = structure_theory(M, over_arrow(2, 2, {1, 0}));
    auto T2 = structure_theory(M, over_terminal(2));

    auto homs = theory_morphisms(A.P, T2.P);
    REQUIRE(homs.size() == 48);
    for (const auto& sigma : homs) require_ok(check_theory_morphism(A.P, T2.P, sigma));

    // Corrupting one component breaks some compatibility rule.
    int broken = 0;
    for (auto sigma : homs) {
        sigma[1][0] = (sigma[1][0] + 1) % T2.P.card[1];
        if (!check_theory_morphism(A.P, T2.P, sigma).ok) ++broken;
    }
    REQUIRE(broken == 48);
}

TEST_CASE("structure-semantics adjunction bijection", "[strsem]") {
    auto M = representable_window(Flavor::Full, W);
    auto yI = unit_presheaf(M);
    auto term = terminal_presheaf(M);

    struct Pair {
        const char* name;
        PresheafTheory P;
        OverCategory V;
    };
    auto strP = [&](const OverCategory& V) { return structure_theory(M, V).P; };
    std::vector<Pair> pairs = {
        {"(y(I), empty)", yI.P, over_empty()},
        {"(terminal, empty)", term, over_empty()},
        {"(y(I), one object)", yI.P, over_terminal(2)},
        {"(terminal, one object)", term, over_terminal(2)},
        {"(y(I), one arrow)", yI.P, over_arrow(2, 2, {1, 0})},
        {"(y(I), finite-set window)", yI.P, over_finset_window(2)},
        {"(str(one arrow), one object)", strP(over_arrow(2, 2, {1, 0})), over_terminal(2)},
        {"(str(one object), one arrow)", strP(over_terminal(2)), over_arrow(2, 2, {1, 0})},
    };
    for (auto& pr : pairs) {
        INFO(pr.name);
        auto rep = adjunction_bijection(pr.P, pr.V);
        require_ok(rep);
        REQUIRE(rep.counts.at("lhs") == rep.counts.at("rhs"));
    }

    SECTION("hom sets can be genuinely large") {
        auto rep = adjunction_bijection(strP(over_arrow(2, 2, {1, 0})), over_terminal(2));
        REQUIRE(rep.counts.at("lhs") == 48);
    }

    SECTION("invalid base data is rejected") {
        auto rep = adjunction_bijection(yI.P, over_arrow(2, 2, {1, 2}));
        REQUIRE_FALSE(rep.ok);
    }
}

TEST_CASE("triangle identities of the adjunction", "[strsem]") {
    auto M = representable_window(Flavor::Full, W);
    auto yI = unit_presheaf(M);
    auto term = terminal_presheaf(M);

    struct Tri {
        const char* name;
        PresheafTheory P;
        OverCategory V;
        int maxC;
    };
    std::vector<Tri> rows = {
        {"(y(I), empty)", yI.P, over_empty(), 2},
        {"(terminal, empty)", term, over_empty(), 2},
        {"(y(I), one object)", yI.P, over_terminal(1), 2},
        {"(terminal, one object)", term, over_terminal(1), 2},
        {"(y(I), one arrow)", yI.P, over_arrow(1, 1, {0}), 2},
        {"(terminal, one arrow)", term, over_arrow(1, 1, {0}), 2},
        {"(str(one object), one object)", structure_theory(M, over_terminal(2)).P,
         over_terminal(1), 1},
    };
    for (auto& row : rows) {
        INFO(row.name);
        require_ok(check_str_sem_triangles(row.P, row.V, row.maxC));
    }
}

TEST_CASE("model categories of presheaf theories", "[strsem]") {
    auto t = plain_monoid_theory(W);
    auto R = theory_presheaf(t);
    auto MC = presheaf_model_category(R.P, 2);
    REQUIRE(MC.models.size() == 5);
    require_ok(check_category(*MC.cat));
    require_ok(check_functor(MC.forget));
    // Same shape as the direct model category of the theory.
    auto direct = graded_model_category(t, 2);
    REQUIRE(MC.cat->n_objects() == direct.cat->n_objects());
    REQUIRE(MC.cat->n_morphisms() == direct.cat->n_morphisms());
}
