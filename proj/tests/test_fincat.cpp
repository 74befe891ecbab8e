#include <catch2/catch_amalgamated.hpp>

#include "algkit/fincat.hpp"
#include "helpers.hpp"

using namespace algkit;
using namespace algkit::testing;

TEST_CASE("category validation", "[fincat]") {
    SECTION("terminal category is valid") {
        auto c = terminal_category();
        REQUIRE(check_category(c).ok);
    }
    SECTION("chain poset 0->1->2 has 6 morphisms and validates") {
        auto c = chain_category(3);
        REQUIRE(c.n_morphisms() == 6);
        REQUIRE(check_category(c).ok);
    }
    SECTION("mis-targeted composite is reported") {
        auto c = chain_category(3);
        // Redirect a composite to a wrong morphism: m02 := m01 (wrong target).
        int m01 = -1, m12 = -1, m02 = -1;
        for (int f = 0; f < c.n_morphisms(); ++f) {
            if (c.morphisms[f].name == "m01") m01 = f;
            if (c.morphisms[f].name == "m12") m12 = f;
            if (c.morphisms[f].name == "m02") m02 = f;
        }
        (void)m02;
        c.comp_table[m12][m01] = m01;
        auto rep = check_category(c);
        REQUIRE_FALSE(rep.ok);
    }
    SECTION("identity violation is reported") {
        auto c = idempotent_monoid_category();
        c.comp_table[c.identity[0]][1] = c.identity[0];  // id ∘ s := id
        auto rep = check_category(c);
        REQUIRE_FALSE(rep.ok);
        bool found = false;
        for (auto& v : rep.violations)
            if (v.find("Violation") != std::string::npos) found = true;
        REQUIRE(found);
    }
}

TEST_CASE("hom profunctor and unit law of composition", "[fincat]") {
    for (const FinCategory& c : {chain_category(3), parallel_pair_category(), idempotent_monoid_category()}) {
        auto H = hom_profunctor(c);
        REQUIRE(check_profunctor(H).ok);
        // K = hom acts as identity: K⊙H ≅ H with matching class counts.
        auto comp = compose_profunctors(H, H);
        REQUIRE(check_profunctor(comp.prof).ok);
        for (int b = 0; b < c.n_objects(); ++b)
            for (int a = 0; a < c.n_objects(); ++a)
                REQUIRE(comp.prof.card(b, a) == H.card(b, a));
    }
}

TEST_CASE("functor profunctors compose like functors", "[fincat]") {
    auto A = parallel_pair_category();
    auto B = chain_category(3);
    auto fs = all_functors(A, B);
    auto gs = all_functors(B, B);
    REQUIRE_FALSE(fs.empty());
    REQUIRE_FALSE(gs.empty());
    Rng rng(20240817);
    for (int trial = 0; trial < 6; ++trial) {
        const auto& F = fs[rng.below(fs.size())];
        const auto& G = gs[rng.below(gs.size())];
        auto FP = functor_to_profunctors(F);
        auto GP = functor_to_profunctors(G);
        auto comp = compose_profunctors(FP.lower, GP.lower);  // G_* ⊙ F_*
        // Canonical comparison: class of (b, k: c -> Gb, h: b -> Fa) ↦ G(h)∘k,
        // which must be constant per class and a bijection onto B(c, GFa).
        for (int cobj = 0; cobj < B.n_objects(); ++cobj)
            for (int a = 0; a < A.n_objects(); ++a) {
                const auto& P = comp.pres[cobj][a];
                std::vector<int> value(P.n_classes, -1);
                for (int b = 0; b < B.n_objects(); ++b) {
                    auto hK = B.hom(cobj, G.on_obj(b));
                    auto hH = B.hom(b, F.on_obj(a));
                    for (std::size_t k = 0; k < hK.size(); ++k)
                        for (std::size_t h = 0; h < hH.size(); ++h) {
                            std::size_t raw = P.summand_offset[b] + k * hH.size() + h;
                            int img = B.compose(G.on_mor(hH[h]), hK[k]);
                            auto cl = P.cls[raw];
                            if (value[cl] == -1)
                                value[cl] = img;
                            else
                                REQUIRE(value[cl] == img);
                        }
                }
                auto target = B.hom(cobj, G.on_obj(F.on_obj(a)));
                REQUIRE(P.n_classes == target.size());
                std::set<int> images(value.begin(), value.end());
                REQUIRE(images.size() == P.n_classes);
            }
    }
}

TEST_CASE("coend classes match the connected-components oracle", "[fincat]") {
    std::vector<FinCategory> cats = {chain_category(2), parallel_pair_category(),
                                     idempotent_monoid_category(), discrete_category(2)};
    Rng rng(987654321);
    int instances = 0;
    while (instances < 60) {
        const auto& A = cats[rng.below(cats.size())];
        const auto& B = cats[rng.below(cats.size())];
        const auto& C = cats[rng.below(cats.size())];
        auto rand_pairs = [&](const FinCategory& S, const FinCategory& T) {
            std::vector<std::pair<int, int>> xy;
            int n = 1 + static_cast<int>(rng.below(2));
            for (int i = 0; i < n; ++i)
                xy.emplace_back(static_cast<int>(rng.below(T.n_objects())),
                                static_cast<int>(rng.below(S.n_objects())));
            return xy;
        };
        if (A.n_objects() == 0 || B.n_objects() == 0 || C.n_objects() == 0) continue;
        auto H = representable_sum_profunctor(A, B, rand_pairs(A, B));
        auto K = representable_sum_profunctor(B, C, rand_pairs(B, C));
        REQUIRE(check_profunctor(H).ok);
        REQUIRE(check_profunctor(K).ok);
        long long total = 0;
        for (int b = 0; b < B.n_objects(); ++b)
            for (int a = 0; a < A.n_objects(); ++a) total += H.card(b, a);
        if (total > 200) continue;
        auto comp = compose_profunctors(H, K);
        REQUIRE(check_profunctor(comp.prof).ok);
        for (int c = 0; c < C.n_objects(); ++c)
            for (int a = 0; a < A.n_objects(); ++a)
                REQUIRE(static_cast<std::size_t>(comp.prof.card(c, a)) ==
                        coend_classes_oracle(H, K, c, a));
        ++instances;
    }
    REQUIRE(instances >= 50);
}

TEST_CASE("ends", "[fincat]") {
    SECTION("discrete diagram is a product") {
        auto A = discrete_category(2);
        Profunctor D;
        D.A = &A;
        D.B = &A;
        D.allocate();
        D.size = {{1, 0}, {0, 1}};  // D(0,0)={x}, D(1,1)={y}
        D.allocate_actions();
        for (int i = 0; i < 2; ++i) D.left_act[A.id(i)][i] = {0}, D.right_act[A.id(i)][i] = {0};
        auto end = compute_end(D);
        REQUIRE(end.size() == 1);
    }
    SECTION("nonidentity endomorphism filters to fixed points") {
        auto A = idempotent_monoid_category();
        // D(*,*) = {0,1,2}; s acts on the left by collapsing to 0, trivially on the right.
        Profunctor D;
        D.A = &A;
        D.B = &A;
        D.allocate();
        D.size = {{3}};
        D.allocate_actions();
        D.left_act[A.id(0)][0] = {0, 1, 2};
        D.right_act[A.id(0)][0] = {0, 1, 2};
        D.left_act[1][0] = {0, 0, 0};   // s · x = 0
        D.right_act[1][0] = {0, 1, 2};  // x · s = x
        REQUIRE(check_profunctor(D).ok);
        auto end = compute_end(D);
        // Naturality: left s(ξ) = right s(ξ)  ⇒  0 = ξ.
        REQUIRE(end.size() == 1);
        REQUIRE(end[0][0] == 0);
    }
    SECTION("empty diagram has a singleton end") {
        auto A = empty_category();
        Profunctor D;
        D.A = &A;
        D.B = &A;
        D.allocate();
        D.allocate_actions();
        auto end = compute_end(D);
        REQUIRE(end.size() == 1);
        REQUIRE(end[0].empty());
    }
}

TEST_CASE("companion adjunction triangle identities", "[fincat]") {
    auto A = parallel_pair_category();
    auto B = chain_category(3);
    SECTION("identity functor") {
        auto F = identity_functor(B);
        REQUIRE(check_companion_adjunction(F).ok);
    }
    SECTION("random functors on small categories") {
        auto fs = all_functors(A, B);
        Rng rng(5150);
        for (int t = 0; t < 5; ++t) {
            const auto& F = fs[rng.below(fs.size())];
            auto rep = check_companion_adjunction(F);
            INFO(rep.summary());
            REQUIRE(rep.ok);
        }
    }
    SECTION("functor into idempotent monoid") {
        auto M = idempotent_monoid_category();
        for (const auto& F : all_functors(A, M)) REQUIRE(check_companion_adjunction(F).ok);
    }
}

TEST_CASE("pullbacks in a finite category", "[fincat]") {
    SECTION("identity leg gives the other domain") {
        auto c = chain_category(3);
        int m02 = -1, id2 = c.identity[2];
        for (int f = 0; f < c.n_morphisms(); ++f)
            if (c.morphisms[f].name == "m02") m02 = f;
        auto pb = pullback(c, m02, id2);
        REQUIRE(pb.has_value());
        REQUIRE(pb->apex == c.src(m02));
    }
    SECTION("FinSet fiber products match pair counts") {
        Rng rng(24601);
        for (int t = 0; t < 20; ++t) {
            FinSetInstance::Obj A{1 + static_cast<int>(rng.below(4))};
            FinSetInstance::Obj B{1 + static_cast<int>(rng.below(4))};
            FinSetInstance::Obj X{1 + static_cast<int>(rng.below(4))};
            FinSetInstance::Mor f{A, X, {}}, g{B, X, {}};
            for (int i = 0; i < A.size; ++i) f.img.push_back(static_cast<int>(rng.below(X.size)));
            for (int i = 0; i < B.size; ++i) g.img.push_back(static_cast<int>(rng.below(X.size)));
            auto pb = FinSetInstance::pullback(f, g);
            int expected = 0;
            for (int a = 0; a < A.size; ++a)
                for (int b = 0; b < B.size; ++b)
                    if (f.img[a] == g.img[b]) ++expected;
            REQUIRE(pb.apex.size == expected);
        }
    }
}

TEST_CASE("extensivity probes", "[fincat]") {
    SECTION("finite sets: both directions hold") {
        std::vector<FinSetInstance::Obj> family = {{2}, {3}};
        auto total = FinSetInstance::coproduct(family, nullptr);
        std::vector<FinSetInstance::Mor> probes;
        Rng rng(77);
        for (int t = 0; t < 10; ++t) {
            FinSetInstance::Mor f;
            f.src = {1 + static_cast<int>(rng.below(4))};
            f.dst = total;
            for (int i = 0; i < f.src.size; ++i) f.img.push_back(static_cast<int>(rng.below(total.size)));
            probes.push_back(std::move(f));
        }
        auto rep = check_extensive_instance<FinSetInstance>(family, probes, true);
        INFO(rep.summary());
        REQUIRE(rep.ok);
    }
    SECTION("empty index set: strict initial object") {
        std::vector<FinSetInstance::Obj> family;
        auto total = FinSetInstance::coproduct(family, nullptr);
        REQUIRE(total.size == 0);
        // The only probe into the empty coproduct is from the empty set.
        std::vector<FinSetInstance::Mor> probes = {{{0}, total, {}}};
        auto rep = check_extensive_instance<FinSetInstance>(family, probes, true);
        REQUIRE(rep.ok);
    }
    SECTION("pointed sets with wedge sum fail") {
        std::vector<FinPointedSetInstance::Obj> family = {{2}, {2}};
        auto total = FinPointedSetInstance::coproduct(family, nullptr);
        REQUIRE(total.size == 3);
        std::vector<FinPointedSetInstance::Mor> probes;
        // Probe sending a non-basepoint to the basepoint: its fibers over the
        // two wedge summands overlap, so the decomposition is not a coproduct.
        FinPointedSetInstance::Mor f;
        f.src = {2};
        f.dst = total;
        f.img = {0, 0};
        probes.push_back(f);
        auto rep = check_extensive_instance<FinPointedSetInstance>(family, probes, false);
        INFO(rep.summary());
        REQUIRE(rep.ok);
        REQUIRE(rep.counts["failing_probes"] > 0);
    }
}
