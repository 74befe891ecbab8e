#include <catch2/catch_amalgamated.hpp>

#include "algkit/doublecat.hpp"

using namespace algkit;

namespace {

constexpr int W = 2;

void require_ok(const CheckReport& rep) {
    INFO(rep.summary());
    for (const auto& v : rep.violations) INFO(v);
    REQUIRE(rep.ok);
}

FinCategory group_z2() {
    FinCategory c;
    c.add_object("*");
    int e = c.add_morphism("e", 0, 0);
    int s = c.add_morphism("s", 0, 0);
    c.identity = {e};
    c.comp_table = {{e, s}, {s, e}};
    return c;
}

FinCategory arrow_category() {
    FinCategory c;
    c.add_object("0");
    c.add_object("1");
    int i0 = c.add_morphism("id0", 0, 0);
    int i1 = c.add_morphism("id1", 1, 1);
    int a = c.add_morphism("a", 0, 1);
    c.identity = {i0, i1};
    c.comp_table.assign(3, std::vector<int>(3, -1));
    c.comp_table[i0][i0] = i0;
    c.comp_table[i1][i1] = i1;
    c.comp_table[a][i0] = a;
    c.comp_table[i1][a] = a;
    return c;
}

FinCategory chain3() {
    FinCategory c;
    c.add_object("0");
    c.add_object("1");
    c.add_object("2");
    int i0 = c.add_morphism("id0", 0, 0);
    int i1 = c.add_morphism("id1", 1, 1);
    int i2 = c.add_morphism("id2", 2, 2);
    int f = c.add_morphism("f", 0, 1);
    int g = c.add_morphism("g", 1, 2);
    int gf = c.add_morphism("gf", 0, 2);
    c.identity = {i0, i1, i2};
    c.comp_table.assign(6, std::vector<int>(6, -1));
    c.comp_table[i0][i0] = i0;
    c.comp_table[i1][i1] = i1;
    c.comp_table[i2][i2] = i2;
    c.comp_table[f][i0] = f;
    c.comp_table[i1][f] = f;
    c.comp_table[g][i1] = g;
    c.comp_table[i2][g] = g;
    c.comp_table[gf][i0] = gf;
    c.comp_table[i2][gf] = gf;
    c.comp_table[g][f] = gf;
    return c;
}

// The theory whose carrier is the unit itself; everything collapses.
GradedMonoid trivial_theory(int w) {
    GradedMonoid t;
    t.fl = Flavor::Full;
    t.W = w;
    t.T = unit_ob(Flavor::Full, w);
    t.e = graded_id(t.T);
    t.m_raw = [](int n, const TensorData::Raw& raw, const TensorData& d) {
        const auto& s = d.shapes[n][raw.sidx];
        int sel = flavor_maps(d.fl, 1, s.k)[raw.y][0];
        const auto& h = flavor_maps(d.fl, s.sum, n)[raw.h];
        auto off = slot_offsets(s);
        std::vector<int> u(s.ns[sel]);
        for (int r = 0; r < s.ns[sel]; ++r) u[r] = h[off[sel] + r];
        return d.X.act(u, s.ns[sel], n, raw.xs[sel]);
    };
    return t;
}

// A unital but non-associative binary table lifted to a graded theory: the
// fold b(b(1,1),1) = 1 differs from b(1,b(1,1)) = 2. Every class is a
// singleton in the plain flavor, so the structure is well-formed except for
// associativity.
GradedMonoid broken_assoc_theory(int w) {
    GradedMonoid t;
    t.fl = Flavor::Plain;
    t.W = w;
    t.T.W = w;
    t.T.card.assign(w + 1, 3);
    t.T.act = [](const std::vector<int>&, int, int, int x) { return x; };
    GradedOb I = unit_ob(Flavor::Plain, w);
    t.e.comp.resize(w + 1);
    for (int n = 0; n <= w; ++n) t.e.comp[n].assign(I.card[n], 0);
    t.m_raw = [](int, const TensorData::Raw& raw, const TensorData&) {
        auto b = [](int x, int y) {
            if (x == 0) return y;
            if (y == 0) return x;
            static const int tab[2][2] = {{2, 2}, {1, 0}};
            return tab[x - 1][y - 1];
        };
        int v = raw.y;
        for (int x : raw.xs) v = b(v, x);
        return v;
    };
    return t;
}

}  // namespace

TEST_CASE("profunctor double category over a one-object group window", "[doublecat]") {
    auto window = std::make_shared<std::vector<FinCategory>>();
    window->push_back(group_z2());
    auto D = prof_double_instance(window, {}, 4);

    // 1 + 1 + 2 + 5 bracketings of up to four unit leaves.
    REQUIRE(D.trees.size() == 9);
    // The regular bimodule is idempotent: every composite has two elements.
    for (std::size_t o = 0; o < D.trees.size(); ++o) {
        INFO("cell " << o);
        REQUIRE(D.conc[o]->card(0, 0) == 2);
    }
    // Independent connected-components count for the first composite.
    REQUIRE(coend_classes_oracle(D.gens[0], D.gens[0], 0, 0) == 2);

    auto rep = check_pseudo_double(D);
    require_ok(rep);
    REQUIRE(rep.counts.at("pentagons") >= 1);
    REQUIRE(rep.counts.at("triangles") >= 1);
    REQUIRE(rep.counts.at("assoc_naturality") > 0);
}

TEST_CASE("profunctor double category over a two-category window", "[doublecat]") {
    auto window = std::make_shared<std::vector<FinCategory>>();
    window->push_back(terminal_category());
    window->push_back(arrow_category());
    auto& cats = *window;
    FinFunctor u0;  // terminal -> arrow picking the source object
    u0.source = &cats[0];
    u0.target = &cats[1];
    u0.obj_map = {0};
    u0.mor_map = {cats[1].id(0)};
    auto D = prof_double_instance(window, {functor_to_profunctors(u0).lower}, 3);

    // The seed is the companion of u0: its elements are arrow morphisms into
    // the image object.
    int seed_tree = D.tree_index.at({2, -1, -1});
    REQUIRE(D.conc[seed_tree]->card(0, 0) == 1);
    REQUIRE(D.conc[seed_tree]->card(1, 0) == 1);  // the arrow 0 -> 1

    auto rep = check_pseudo_double(D);
    require_ok(rep);
    REQUIRE(rep.counts.at("triangles") >= 1);
}

TEST_CASE("cones over the models of a theory", "[doublecat]") {
    auto t = plain_monoid_theory(W);
    auto MC = graded_model_category(t, 2);
    REQUIRE(MC.models.size() == 5);

    auto cone = canonical_double_cone(MC);
    require_ok(check_double_cone(cone, t));

    SECTION("a corrupted component is rejected") {
        DoubleCone bad = cone;
        // Tweak one value of a component at a non-identity morphism.
        for (int x = 0; x < MC.cat->n_morphisms(); ++x) {
            if (x == MC.cat->id(MC.cat->src(x))) continue;
            if (bad.v[x].comp[2].empty()) continue;
            int Cb = bad.V.carrier[MC.cat->dst(x)];
            if (Cb < 2) continue;
            bad.v[x].comp[2][0] = (bad.v[x].comp[2][0] + 1) % (Cb * Cb * Cb * Cb);
            break;
        }
        REQUIRE_FALSE(check_double_cone(bad, t).ok);
    }

    SECTION("a corrupted base table is rejected") {
        DoubleCone bad = cone;
        for (auto& fn : bad.V.fn)
            if (fn.size() == 2) {
                std::swap(fn[0], fn[1]);
                break;
            }
        REQUIRE_FALSE(check_double_cone(bad, t).ok);
    }

    SECTION("a non-model structure is rejected") {
        DoubleCone bad;
        bad.V = over_terminal(2);
        auto models = graded_models(t, 2);
        bool placed = false;
        for (const auto& xi : interpretations(t.fl, t.T, 2, 2)) {
            bool is_model = false;
            for (const auto& m : models) is_model = is_model || m.xi.comp == xi.comp;
            if (!is_model) {
                bad.v = {xi};
                placed = true;
                break;
            }
        }
        REQUIRE(placed);
        REQUIRE_FALSE(check_double_cone(bad, t).ok);
        REQUIRE_FALSE(mediating_functor(bad, MC).rep.ok);
    }
}

TEST_CASE("mediating functors exist and are unique", "[doublecat]") {
    auto t = plain_monoid_theory(W);
    auto MC = graded_model_category(t, 2);

    SECTION("the canonical cone mediates through the identity") {
        auto cone = canonical_double_cone(MC);
        auto med = mediating_functor(cone, MC);
        require_ok(med.rep);
        REQUIRE(med.rep.counts.at("mediators") == 1);
        for (int a = 0; a < MC.cat->n_objects(); ++a) REQUIRE(med.K.obj_map[a] == a);
        for (int x = 0; x < MC.cat->n_morphisms(); ++x) REQUIRE(med.K.mor_map[x] == x);
    }

    SECTION("every functor cone over a small shape mediates through its functor") {
        struct Row {
            const char* name;
            FinCategory shape;
        };
        std::vector<Row> rows = {{"terminal", terminal_category()},
                                 {"discrete 2", discrete_category(2)},
                                 {"discrete 3", discrete_category(3)},
                                 {"arrow", arrow_category()},
                                 {"chain 3", chain3()}};
        long long cones = 0;
        for (auto& row : rows) {
            INFO(row.name);
            auto Ks = all_functors(row.shape, *MC.cat);
            REQUIRE_FALSE(Ks.empty());
            for (const auto& K0 : Ks) {
                auto cone = functor_double_cone(MC, K0);
                require_ok(check_double_cone(cone, t));
                auto med = mediating_functor(cone, MC);
                require_ok(med.rep);
                REQUIRE(med.rep.counts.at("mediators") == 1);
                REQUIRE(med.K.obj_map == K0.obj_map);
                REQUIRE(med.K.mor_map == K0.mor_map);
                ++cones;
            }
        }
        REQUIRE(cones >= 100);
    }
}

TEST_CASE("cone squares lift uniquely to model morphisms", "[doublecat]") {
    auto t = plain_monoid_theory(W);
    auto MC = graded_model_category(t, 2);
    FinCategory shape = arrow_category();
    auto Ks = all_functors(shape, *MC.cat);
    REQUIRE(Ks.size() >= 3);
    const FinFunctor& K1 = Ks[0];
    const FinFunctor& K2 = Ks[Ks.size() / 2];
    auto c1 = functor_double_cone(MC, K1);
    auto c2 = functor_double_cone(MC, K2);
    require_ok(check_double_cone(c1, t));
    require_ok(check_double_cone(c2, t));

    auto full = full_cone_square(c1, c2, t);
    require_ok(check_profunctor(full.H));

    SECTION("the full square of structure maps") {
        auto med = cone_square_mediator(full, c1, c2, MC, K1, K2);
        require_ok(med.rep);
        // Element-wise oracle: each lift carries exactly the given table and
        // the table is a structure map between the endpoint models.
        for (std::size_t a = 0; a < med.sigma.size(); ++a)
            for (std::size_t a2 = 0; a2 < med.sigma[a].size(); ++a2)
                for (std::size_t x = 0; x < med.sigma[a][a2].size(); ++x) {
                    int j = med.sigma[a][a2][x];
                    REQUIRE(MC.mor_tab[j] == full.theta[a][a2][x]);
                    REQUIRE(is_model_hom(t, MC.models[MC.cat->src(j)],
                                         MC.models[MC.cat->dst(j)], MC.mor_tab[j]));
                }
    }

    SECTION("random action-closed subsquares lift as well") {
        long long lifted = 0;
        for (std::uint64_t seed = 1; seed <= 12; ++seed) {
            Rng rng(seed);
            auto sub = random_cone_subsquare(full, rng);
            require_ok(check_profunctor(sub.H));
            auto med = cone_square_mediator(sub, c1, c2, MC, K1, K2);
            require_ok(med.rep);
            REQUIRE(med.rep.counts.at("elements") >= 1);
            ++lifted;
        }
        REQUIRE(lifted >= 10);
    }

    SECTION("a table violating the precondition throws with a witness") {
        ConeSquare bad = full;
        bool placed = false;
        for (std::size_t a = 0; a < bad.theta.size() && !placed; ++a)
            for (std::size_t a2 = 0; a2 < bad.theta[a].size() && !placed; ++a2) {
                if (bad.theta[a][a2].empty()) continue;
                GradedModel M1{c1.V.carrier[a], c1.v[c1.V.A.id(static_cast<int>(a))]};
                GradedModel M2{c2.V.carrier[a2], c2.v[c2.V.A.id(static_cast<int>(a2))]};
                for (const auto& tab : all_functions(M1.C, M2.C))
                    if (!is_model_hom(t, M1, M2, tab)) {
                        bad.theta[a][a2][0] = tab;
                        placed = true;
                        break;
                    }
            }
        REQUIRE(placed);
        REQUIRE_THROWS_AS(cone_square_mediator(bad, c1, c2, MC, K1, K2),
                          PreconditionFailure);
    }
}

TEST_CASE("the face/degeneracy encoding of a theory", "[doublecat]") {
    SECTION("the simplicial identities hold exactly for lawful theories") {
        struct Row {
            const char* name;
            GradedMonoid t;
        };
        std::vector<Row> rows = {{"plain", plain_monoid_theory(W)},
                                 {"commutative", commutative_monoid_theory(W)},
                                 {"symmetric", symmetric_monoid_theory(W)},
                                 {"substitution", subst_monoid_theory(W)},
                                 {"commutative substitution", commutative_subst_theory(W)},
                                 {"trivial", trivial_theory(W)},
                                 {"broken associativity", broken_assoc_theory(W)}};
        for (auto& row : rows) {
            INFO(row.name);
            auto simp = check_theory_simplex(row.t);
            auto mono = check_graded_monoid(row.t);
            // The encoding detects a lawful theory exactly when the direct
            // axiom check does.
            REQUIRE(simp.ok == mono.ok);
            REQUIRE(simp.counts.at("cells_checked") > 0);
        }
    }

    SECTION("the violated axiom is named") {
        auto rep = check_theory_simplex(broken_assoc_theory(W));
        REQUIRE_FALSE(rep.ok);
        bool named = false;
        for (const auto& v : rep.violations)
            named = named || v.find("associativity") != std::string::npos;
        REQUIRE(named);
    }

    SECTION("the trivial theory gives a levelwise-trivial encoding") {
        auto S = theory_to_simplex(trivial_theory(W));
        REQUIRE(S.F1.card == S.F0.card);
        REQUIRE(S.F2.ob.card == S.F0.card);
        REQUIRE(S.F3.ob.card == S.F0.card);
        REQUIRE(graded_bijective(S.face[1][0], S.F1, S.F2.ob));
        REQUIRE(graded_bijective(S.degen[0][0], S.F2.ob, S.F1));
    }

    SECTION("a too-small window is refused") {
        REQUIRE_THROWS_AS(theory_to_simplex(plain_monoid_theory(1)), WindowTooSmall);
        REQUIRE_THROWS_AS(check_theory_simplex(plain_monoid_theory(0)), WindowTooSmall);
    }
}
