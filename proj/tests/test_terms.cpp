#include <catch2/catch_amalgamated.hpp>

#include "algkit/terms.hpp"

using namespace algkit;

namespace {
Term x(int i, int n) { return Term::var(i, n); }
Term app(const std::string& s, std::vector<Term> as, int n) {
    return Term::app(s, std::move(as), n);
}

// The OR-monoid on {0,1}: unit 0, m = max.
SigmaAlgebra or_monoid() {
    SigmaAlgebra A;
    A.carrier = 2;
    A.interp["e"] = {0};
    A.interp["m"] = {0, 1, 1, 1};
    return A;
}
}  // namespace

TEST_CASE("interpretation", "[terms]") {
    SECTION("a bare variable is a projection") {
        SigmaAlgebra A = or_monoid();
        REQUIRE(interpret(x(1, 1), A) == std::vector<int>{0, 1});
        // x2 at arity 2 (little-endian tuple order: input i has weight k^i).
        REQUIRE(interpret(x(2, 2), A) == std::vector<int>{0, 0, 1, 1});
    }
    SECTION("m(x1,e) in the OR-monoid is the identity table") {
        auto t = app("m", {x(1, 1), app("e", {}, 1)}, 1);
        REQUIRE(interpret(t, or_monoid()) == std::vector<int>{0, 1});
    }
    SECTION("associativity holds as tables in every enumerated monoid") {
        auto P = monoid_presentation();
        auto l = app("m", {app("m", {x(1, 3), x(2, 3)}, 3), x(3, 3)}, 3);
        auto r = app("m", {x(1, 3), app("m", {x(2, 3), x(3, 3)}, 3)}, 3);
        for (const auto& A : enumerate_models(P, 2))
            REQUIRE(interpret(l, A) == interpret(r, A));
    }
}

TEST_CASE("model enumeration", "[terms]") {
    SECTION("monoids on 2 elements: 4 models (independent oracle)") {
        auto models = enumerate_models(monoid_presentation(), 2);
        // Oracle: scan 2 unit choices x 16 binary tables directly.
        int oracle = 0;
        for (int e = 0; e < 2; ++e)
            for (int tab = 0; tab < 16; ++tab) {
                auto m = [&](int a, int b) { return (tab >> (a + 2 * b)) & 1; };
                bool ok = true;
                for (int a = 0; a < 2 && ok; ++a) {
                    if (m(a, e) != a || m(e, a) != a) ok = false;
                }
                for (int a = 0; a < 2 && ok; ++a)
                    for (int b = 0; b < 2 && ok; ++b)
                        for (int c = 0; c < 2 && ok; ++c)
                            if (m(m(a, b), c) != m(a, m(b, c))) ok = false;
                if (ok) ++oracle;
            }
        REQUIRE(oracle == 4);
        REQUIRE(models.size() == 4);
    }
    SECTION("groups on 2 elements: 2 models") {
        REQUIRE(enumerate_models(group_presentation(), 2).size() == 2);
    }
    SECTION("commutative monoids on 2 elements: all 4 monoids are commutative") {
        // Oracle: every 2-element monoid table is symmetric (OR, XOR, AND and
        // the relabeled XOR with unit 1), so the commutativity axiom filters
        // nothing at k=2.
        auto monoids = enumerate_models(monoid_presentation(), 2);
        int symmetric = 0;
        for (const auto& A : monoids) {
            const auto& m = A.interp.at("m");
            bool sym = true;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (m[a + 2 * b] != m[b + 2 * a]) sym = false;
            if (sym) ++symmetric;
        }
        REQUIRE(symmetric == 4);
        REQUIRE(enumerate_models(commutative_monoid_presentation(), 2).size() == 4);
    }
    SECTION("k=0 with a constant: no models") {
        REQUIRE(enumerate_models(monoid_presentation(), 0).empty());
    }
    SECTION("closed under carrier permutation") {
        auto P = group_presentation();
        auto models = enumerate_models(P, 2);
        // Swap 0 and 1 in every table; the relabeled algebra must be a model.
        for (const auto& A : models) {
            SigmaAlgebra B;
            B.carrier = 2;
            for (const auto& [s, tab] : A.interp) {
                int n = P.signature.arity_of(s);
                std::vector<int> nt(tab.size());
                for (std::size_t idx = 0; idx < tab.size(); ++idx) {
                    // Relabel inputs and output through the swap.
                    std::size_t src = 0, w = 1, rem = idx;
                    for (int i = 0; i < n; ++i) {
                        src += w * (1 - rem % 2);
                        rem /= 2;
                        w *= 2;
                    }
                    nt[idx] = 1 - tab[src];
                }
                B.interp[s] = std::move(nt);
            }
            for (const auto& ax : P.axioms) REQUIRE(check_satisfaction(B, ax));
        }
    }
}

TEST_CASE("term classification", "[terms]") {
    REQUIRE(classify_term(app("m", {x(1, 1), app("i", {x(1, 1)}, 1)}, 1)) == TermClass::general);
    REQUIRE(classify_term(app("m", {x(2, 2), x(1, 2)}, 2)) == TermClass::regular);
    REQUIRE(classify_term(app("m", {x(1, 2), x(2, 2)}, 2)) == TermClass::strongly_regular);
    REQUIRE(classify_term(app("e", {}, 1)) == TermClass::general);  // x1 unused

    SECTION("strongly regular implies regular on generated terms") {
        auto sig = group_presentation().signature;
        for (int n = 0; n <= 2; ++n)
            for (const auto& t : enumerate_terms(sig, n, 2)) {
                auto c = classify_term(t);
                if (c == TermClass::strongly_regular) {
                    std::vector<int> occ;
                    variable_occurrences(t, occ);
                    std::vector<int> counts(n + 1, 0);
                    for (int i : occ) counts[i]++;
                    for (int i = 1; i <= n; ++i) REQUIRE(counts[i] == 1);
                }
            }
    }
}

TEST_CASE("proof checking", "[terms]") {
    auto P = monoid_presentation();
    SECTION("single Refl node") {
        Proof p;
        p.rule = Rule::Refl;
        p.conclusion = {x(1, 1), x(1, 1), 1};
        REQUIRE(check_proof(p, P).ok);
    }
    SECTION("Ax cites a real axiom") {
        Proof p;
        p.rule = Rule::Ax;
        p.conclusion = P.axioms[0];
        REQUIRE(check_proof(p, P).ok);
    }
    SECTION("Ax on a non-axiom is rejected") {
        Proof p;
        p.rule = Rule::Ax;
        p.conclusion = {x(1, 1), app("e", {}, 1), 1};
        auto r = check_proof(p, P);
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.error.find("AxiomNotFound") != std::string::npos);
    }
    SECTION("Trans with disagreeing middle terms is rejected") {
        Proof a, b, t;
        a.rule = Rule::Refl;
        a.conclusion = {x(1, 1), x(1, 1), 1};
        b.rule = Rule::Refl;
        b.conclusion = {app("e", {}, 1), app("e", {}, 1), 1};
        t.rule = Rule::Trans;
        t.conclusion = {x(1, 1), app("e", {}, 1), 1};
        t.premises = {a, b};
        auto r = check_proof(t, P);
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.error.find("Trans") != std::string::npos);
    }
    SECTION("Cong with a wrong substitution is rejected") {
        Proof outer;
        outer.rule = Rule::Ax;
        outer.conclusion = P.axioms[0];  // m(x1,e) ~1 x1
        Proof arg;
        arg.rule = Rule::Refl;
        arg.conclusion = {app("e", {}, 1), app("e", {}, 1), 1};
        Proof cong;
        cong.rule = Rule::Cong;
        cong.premises = {outer, arg};
        cong.conclusion = {x(1, 1), x(1, 1), 1};  // not the substitution instance
        REQUIRE_FALSE(check_proof(cong, P).ok);
    }
}

TEST_CASE("proof search", "[terms]") {
    auto P = monoid_presentation();
    SECTION("axiom instance found immediately") {
        auto res = search_proof(P, P.axioms[0], 2, 1000);
        REQUIRE(res.found);
        REQUIRE(check_proof(res.proof, P).ok);
        REQUIRE(check_proof(res.proof, P).conclusion == P.axioms[0]);
    }
    SECTION("m(e, m(x1, e)) ~ x1 needs two rewrite steps") {
        Term e = app("e", {}, 1);
        Equation goal{app("m", {e, app("m", {x(1, 1), e}, 1)}, 1), x(1, 1), 1};
        auto res = search_proof(P, goal, 4, 100000);
        REQUIRE(res.found);
        auto chk = check_proof(res.proof, P);
        REQUIRE(chk.ok);
        REQUIRE(chk.conclusion == goal);
    }
    SECTION("rewriting below the root produces checkable congruences") {
        // m(m(x1,e), x2) ~ m(x1, x2): one step strictly inside the term.
        Equation goal{app("m", {app("m", {x(1, 2), app("e", {}, 2)}, 2), x(2, 2)}, 2),
                      app("m", {x(1, 2), x(2, 2)}, 2), 2};
        auto res = search_proof(P, goal, 3, 100000);
        REQUIRE(res.found);
        REQUIRE(check_proof(res.proof, P).ok);
    }
    SECTION("false group equation is not proved and is refuted by a model") {
        auto G = group_presentation();
        Equation goal{app("e", {}, 1), app("m", {x(1, 1), x(1, 1)}, 1), 1};
        auto res = search_proof(G, goal, 3, 2000);
        REQUIRE_FALSE(res.found);
        // Both 2-element groups are copies of Z/2, where x*x = e does hold;
        // the refuting model is Z/3 at carrier size 3.
        bool refuted = false;
        for (int k = 2; k <= 3; ++k)
            for (const auto& A : enumerate_models(G, k))
                if (!check_satisfaction(A, goal)) refuted = true;
        REQUIRE(refuted);
    }
}

TEST_CASE("soundness of accepted proofs", "[terms]") {
    // Any equation search_proof establishes must hold in every finite model
    // with small carrier.
    auto P = monoid_presentation();
    Term e1 = app("e", {}, 1);
    std::vector<Equation> goals = {
        {app("m", {e1, app("m", {x(1, 1), e1}, 1)}, 1), x(1, 1), 1},
        {app("m", {app("m", {x(1, 1), e1}, 1), e1}, 1), x(1, 1), 1},
    };
    for (const auto& goal : goals) {
        auto res = search_proof(P, goal, 4, 100000);
        REQUIRE(res.found);
        REQUIRE(check_proof(res.proof, P).ok);
        for (int k = 1; k <= 3; ++k)
            for (const auto& A : enumerate_models(P, k)) REQUIRE(check_satisfaction(A, goal));
    }
}
