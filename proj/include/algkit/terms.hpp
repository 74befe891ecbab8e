#pragma once

// Graded signatures, terms, equational logic (proof trees + bounded proof
// search), and finite-model enumeration.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "report.hpp"
#include "util.hpp"

namespace algkit {

// ---------------------------------------------------------------------------
// Signatures and terms
// ---------------------------------------------------------------------------

// A graded set of operation symbols: finitely many arities, each with a finite
// list of globally distinct symbol names.
struct GradedSet {
    std::map<int, std::vector<std::string>> arities;

    // Arity of a symbol, or -1 if absent.
    int arity_of(const std::string& sym) const {
        for (const auto& [n, syms] : arities)
            for (const auto& s : syms)
                if (s == sym) return n;
        return -1;
    }

    bool contains(const std::string& sym) const { return arity_of(sym) >= 0; }
};

inline CheckReport check_graded_set(const GradedSet& sig) {
    CheckReport rep;
    std::set<std::string> seen;
    for (const auto& [n, syms] : sig.arities) {
        if (n < 0) rep.fail("negative arity");
        for (const auto& s : syms)
            if (!seen.insert(s).second) rep.fail("duplicate symbol " + s);
    }
    return rep;
}

// A term over a signature, with its ambient arity n recorded at every node.
// Variables are 1-based: Var(i, n) with 1 <= i <= n.
struct Term {
    bool is_var = false;
    int var_index = 0;       // when is_var
    std::string sym;         // when !is_var
    std::vector<Term> args;  // when !is_var, |args| = arity of sym
    int ambient = 0;

    static Term var(int i, int n) {
        Term t;
        t.is_var = true;
        t.var_index = i;
        t.ambient = n;
        return t;
    }
    static Term app(std::string s, std::vector<Term> as, int n) {
        Term t;
        t.sym = std::move(s);
        t.args = std::move(as);
        t.ambient = n;
        return t;
    }

    bool operator==(const Term& o) const {
        if (is_var != o.is_var || ambient != o.ambient) return false;
        if (is_var) return var_index == o.var_index;
        return sym == o.sym && args == o.args;
    }
    bool operator!=(const Term& o) const { return !(*this == o); }
};

inline std::string term_to_string(const Term& t) {
    if (t.is_var) return "x" + std::to_string(t.var_index);
    std::string out = t.sym;
    if (!t.args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < t.args.size(); ++i) {
            if (i) out += ",";
            out += term_to_string(t.args[i]);
        }
        out += ")";
    }
    return out;
}

// Total order on terms of equal ambient arity, for deterministic containers.
inline bool term_less(const Term& a, const Term& b) {
    if (a.is_var != b.is_var) return a.is_var;  // variables first
    if (a.is_var) return a.var_index < b.var_index;
    if (a.sym != b.sym) return a.sym < b.sym;
    for (std::size_t i = 0; i < std::min(a.args.size(), b.args.size()); ++i) {
        if (term_less(a.args[i], b.args[i])) return true;
        if (term_less(b.args[i], a.args[i])) return false;
    }
    return a.args.size() < b.args.size();
}

struct TermLess {
    bool operator()(const Term& a, const Term& b) const { return term_less(a, b); }
};

// Height of the syntax tree with variables at depth 0.
inline int term_depth(const Term& t) {
    int d = 0;
    for (const auto& a : t.args) d = std::max(d, 1 + term_depth(a));
    return d;
}

inline int term_size(const Term& t) {
    int s = 1;
    for (const auto& a : t.args) s += term_size(a);
    return s;
}

// Well-formedness: symbols declared, arities match, variables in range, and a
// consistent ambient arity through the whole tree.
inline bool term_well_formed(const Term& t, const GradedSet& sig, int ambient) {
    if (t.ambient != ambient) return false;
    if (t.is_var) return 1 <= t.var_index && t.var_index <= ambient;
    int ar = sig.arity_of(t.sym);
    if (ar < 0 || static_cast<int>(t.args.size()) != ar) return false;
    for (const auto& a : t.args)
        if (!term_well_formed(a, sig, ambient)) return false;
    return true;
}

struct Equation {
    Term lhs, rhs;
    int n = 0;

    bool operator==(const Equation& o) const { return n == o.n && lhs == o.lhs && rhs == o.rhs; }
};

inline std::string equation_to_string(const Equation& e) {
    return term_to_string(e.lhs) + " ~" + std::to_string(e.n) + " " + term_to_string(e.rhs);
}

struct Presentation {
    GradedSet signature;
    std::vector<Equation> axioms;
};

inline CheckReport check_presentation(const Presentation& P) {
    CheckReport rep = check_graded_set(P.signature);
    for (const auto& ax : P.axioms) {
        if (!term_well_formed(ax.lhs, P.signature, ax.n) ||
            !term_well_formed(ax.rhs, P.signature, ax.n))
            rep.fail("malformed axiom " + equation_to_string(ax));
    }
    return rep;
}

// Simultaneous substitution: every Var(i, k) in s is replaced by ts[i-1]; the
// result lives at the common ambient arity of the ts.
inline Term substitute(const Term& s, const std::vector<Term>& ts, int ambient) {
    if (s.is_var) {
        assert(1 <= s.var_index && s.var_index <= static_cast<int>(ts.size()));
        return ts[s.var_index - 1];
    }
    std::vector<Term> args;
    args.reserve(s.args.size());
    for (const auto& a : s.args) args.push_back(substitute(a, ts, ambient));
    return Term::app(s.sym, std::move(args), ambient);
}

// Variable occurrence census in left-to-right order.
inline void variable_occurrences(const Term& t, std::vector<int>& out) {
    if (t.is_var) {
        out.push_back(t.var_index);
        return;
    }
    for (const auto& a : t.args) variable_occurrences(a, out);
}

enum class TermClass { general, regular, strongly_regular };

// regular: every ambient variable occurs exactly once; strongly_regular:
// additionally the occurrences are x1, x2, ..., xn in left-to-right order.
inline TermClass classify_term(const Term& t) {
    std::vector<int> occ;
    variable_occurrences(t, occ);
    std::vector<int> counts(t.ambient + 1, 0);
    for (int i : occ) counts[i]++;
    for (int i = 1; i <= t.ambient; ++i)
        if (counts[i] != 1) return TermClass::general;
    for (int i = 0; i < t.ambient; ++i)
        if (occ[i] != i + 1) return TermClass::regular;
    return TermClass::strongly_regular;
}

// ---------------------------------------------------------------------------
// Finite algebras and interpretation
// ---------------------------------------------------------------------------

// A finite algebra on the carrier {0,...,k-1}; each symbol of arity n is a
// total table of length k^n, indexed by the little-endian mixed-radix tuple
// (input i has weight k^i).
struct SigmaAlgebra {
    int carrier = 0;
    std::map<std::string, std::vector<int>> interp;

    const std::vector<int>& table(const std::string& sym) const {
        auto it = interp.find(sym);
        assert(it != interp.end() && "SymbolNotInterpreted");
        return it->second;
    }
};

inline long long pow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline int eval_term(const Term& t, const SigmaAlgebra& A, const std::vector<int>& env) {
    if (t.is_var) return env[t.var_index - 1];
    const auto& tab = A.table(t.sym);
    long long idx = 0, w = 1;
    for (const auto& a : t.args) {
        idx += w * eval_term(a, A, env);
        w *= A.carrier;
    }
    return tab[idx];
}

// The full function table carrier^n -> carrier of a term of ambient arity n.
inline std::vector<int> interpret(const Term& t, const SigmaAlgebra& A) {
    int n = t.ambient, k = A.carrier;
    std::vector<int> out(pow_ll(k, n));
    std::vector<std::size_t> radix(n, static_cast<std::size_t>(k));
    for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
        std::vector<int> env(tup.begin(), tup.end());
        // Index with the same little-endian weights as symbol tables.
        std::size_t idx = 0, w = 1;
        for (int i = 0; i < n; ++i) {
            idx += w * tup[i];
            w *= k;
        }
        out[idx] = eval_term(t, A, env);
        return true;
    });
    return out;
}

inline bool check_satisfaction(const SigmaAlgebra& A, const Equation& eq) {
    return interpret(eq.lhs, A) == interpret(eq.rhs, A);
}

// All interpretations of `sig` on {0,...,k-1} satisfying every axiom,
// enumerated in a deterministic (odometer) order. Throws SearchSpaceTooLarge
// when the raw space exceeds the configured cap.
inline std::vector<SigmaAlgebra> enumerate_models(const Presentation& P, int k) {
    std::vector<std::pair<std::string, int>> syms;  // (name, arity), sorted by map order
    for (const auto& [n, ss] : P.signature.arities)
        for (const auto& s : ss) syms.emplace_back(s, n);
    // Each symbol contributes k^(k^arity) choices.
    long double raw = 1.0L;
    std::vector<std::size_t> radix;
    for (auto& [s, n] : syms) {
        long long cells = pow_ll(k, n);
        raw *= powl(static_cast<long double>(k), static_cast<long double>(cells));
        for (long long c = 0; c < cells; ++c) radix.push_back(static_cast<std::size_t>(k));
    }
    if (raw > static_cast<long double>(max_search_cap()))
        throw SearchSpaceTooLarge("enumerate_models: " + std::to_string(static_cast<double>(raw)));
    std::vector<SigmaAlgebra> out;
    if (k == 0) {
        // The empty algebra exists iff there is nothing to interpret at arity 0
        // (a constant has no value in the empty carrier).
        bool has_constant = false;
        auto it = P.signature.arities.find(0);
        if (it != P.signature.arities.end() && !it->second.empty()) has_constant = true;
        if (!has_constant) {
            // Every axiom holds vacuously: with no constants all terms have
            // positive ambient arity, whose tables over the empty carrier are
            // empty.
            SigmaAlgebra A;
            A.carrier = 0;
            for (auto& [s, n] : syms) A.interp[s] = {};
            out.push_back(std::move(A));
        }
        return out;
    }
    for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
        SigmaAlgebra A;
        A.carrier = k;
        std::size_t pos = 0;
        for (auto& [s, n] : syms) {
            long long cells = pow_ll(k, n);
            std::vector<int> tab(cells);
            for (long long c = 0; c < cells; ++c) tab[c] = static_cast<int>(tup[pos++]);
            A.interp[s] = std::move(tab);
        }
        for (const auto& ax : P.axioms)
            if (!check_satisfaction(A, ax)) return true;
        out.push_back(std::move(A));
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Proof trees
// ---------------------------------------------------------------------------

enum class Rule { Ax, Refl, Sym, Trans, Cong };

// A proof tree node. Every node states its conclusion; Cong carries the outer
// equation s ~k s' as its first premise and the k substituted pairs as the
// remaining premises, so checking is local.
struct Proof {
    Rule rule = Rule::Refl;
    Equation conclusion;
    std::vector<Proof> premises;
};

struct ProofCheck {
    bool ok = false;
    Equation conclusion;
    std::string error;
};

inline ProofCheck check_proof(const Proof& p, const Presentation& P) {
    auto bad = [&](const std::string& msg) {
        ProofCheck r;
        r.error = msg + " at " + equation_to_string(p.conclusion);
        return r;
    };
    std::vector<ProofCheck> prem;
    for (const auto& q : p.premises) {
        prem.push_back(check_proof(q, P));
        if (!prem.back().ok) return prem.back();
    }
    const Equation& c = p.conclusion;
    if (!term_well_formed(c.lhs, P.signature, c.n) || !term_well_formed(c.rhs, P.signature, c.n))
        return bad("BadRuleInstance: malformed conclusion");
    switch (p.rule) {
        case Rule::Ax: {
            if (!prem.empty()) return bad("BadRuleInstance: Ax with premises");
            for (const auto& ax : P.axioms)
                if (ax == c) {
                    ProofCheck r;
                    r.ok = true;
                    r.conclusion = c;
                    return r;
                }
            return bad("AxiomNotFound");
        }
        case Rule::Refl: {
            if (!prem.empty() || c.lhs != c.rhs) return bad("BadRuleInstance: Refl");
            break;
        }
        case Rule::Sym: {
            if (prem.size() != 1) return bad("BadRuleInstance: Sym arity");
            const Equation& q = prem[0].conclusion;
            if (q.n != c.n || q.lhs != c.rhs || q.rhs != c.lhs)
                return bad("BadRuleInstance: Sym mismatch");
            break;
        }
        case Rule::Trans: {
            if (prem.size() != 2) return bad("BadRuleInstance: Trans arity");
            const Equation& l = prem[0].conclusion;
            const Equation& r = prem[1].conclusion;
            if (l.n != c.n || r.n != c.n || l.lhs != c.lhs || r.rhs != c.rhs || l.rhs != r.lhs)
                return bad("BadRuleInstance: Trans middle terms disagree");
            break;
        }
        case Rule::Cong: {
            if (prem.empty()) return bad("BadRuleInstance: Cong without outer premise");
            const Equation& outer = prem[0].conclusion;
            int karity = outer.n;
            if (static_cast<int>(prem.size()) != karity + 1)
                return bad("SubstitutionMismatch: wrong tuple length");
            std::vector<Term> ts, tps;
            for (int i = 1; i <= karity; ++i) {
                if (prem[i].conclusion.n != c.n)
                    return bad("SubstitutionMismatch: premise arity");
                ts.push_back(prem[i].conclusion.lhs);
                tps.push_back(prem[i].conclusion.rhs);
            }
            if (substitute(outer.lhs, ts, c.n) != c.lhs ||
                substitute(outer.rhs, tps, c.n) != c.rhs)
                return bad("SubstitutionMismatch: conclusion is not the stated substitution");
            break;
        }
    }
    ProofCheck r;
    r.ok = true;
    r.conclusion = c;
    return r;
}

// ---------------------------------------------------------------------------
// Bounded proof search
// ---------------------------------------------------------------------------

namespace detail {

// Matches pattern (a term over variables x1..xk) against `t`; binds each
// pattern variable to a subterm. Returns false on clash.
inline bool match_pattern(const Term& pat, const Term& t, std::vector<std::optional<Term>>& bind) {
    if (pat.is_var) {
        auto& slot = bind[pat.var_index - 1];
        if (!slot) {
            slot = t;
            return true;
        }
        return *slot == t;
    }
    if (t.is_var || t.sym != pat.sym || t.args.size() != pat.args.size()) return false;
    for (std::size_t i = 0; i < pat.args.size(); ++i)
        if (!match_pattern(pat.args[i], t.args[i], bind)) return false;
    return true;
}

inline bool vars_subset(const Term& t, const std::vector<std::optional<Term>>& bind) {
    if (t.is_var) return static_cast<bool>(bind[t.var_index - 1]);
    for (const auto& a : t.args)
        if (!vars_subset(a, bind)) return false;
    return true;
}

struct RewriteStep {
    std::vector<int> path;  // argument indices from the root to the redex
    int axiom = 0;
    bool forward = true;  // lhs -> rhs when true
    std::vector<Term> binding;
    Term result;  // the whole term after the step
};

// All single rewrite steps applicable to `t` (either orientation of every
// axiom, at every position). When the replacement side has variables not
// bound by the match (an expansion step, e.g. e -> m(x, i(x))), they are
// instantiated from `pool`; an empty pool disables expansions.
inline void all_steps(const Term& t, const Presentation& P, std::vector<int>& path,
                      const Term& whole, const std::vector<Term>& pool,
                      std::vector<RewriteStep>& out) {
    auto splice = [&](const Term& replaced) {
        std::vector<const Term*> spine;
        const Term* cur = &whole;
        for (int ix : path) {
            spine.push_back(cur);
            cur = &cur->args[ix];
        }
        Term acc = replaced;
        for (int lvl = static_cast<int>(path.size()) - 1; lvl >= 0; --lvl) {
            Term node = *spine[lvl];
            node.args[path[lvl]] = std::move(acc);
            acc = std::move(node);
        }
        return acc;
    };
    for (std::size_t ai = 0; ai < P.axioms.size(); ++ai) {
        const Equation& ax = P.axioms[ai];
        for (int dir = 0; dir < 2; ++dir) {
            const Term& from = dir == 0 ? ax.lhs : ax.rhs;
            const Term& to = dir == 0 ? ax.rhs : ax.lhs;
            std::vector<std::optional<Term>> bind(ax.n);
            if (!match_pattern(from, t, bind)) continue;
            std::vector<int> missing;
            for (int i = 0; i < ax.n; ++i)
                if (!bind[i]) missing.push_back(i);
            if (!missing.empty() && pool.empty()) continue;
            auto emit = [&](const std::vector<std::optional<Term>>& full) {
                RewriteStep st;
                st.path = path;
                st.axiom = static_cast<int>(ai);
                st.forward = dir == 0;
                for (const auto& b : full) st.binding.push_back(*b);
                st.result = splice(substitute(to, st.binding, whole.ambient));
                out.push_back(std::move(st));
            };
            if (missing.empty()) {
                emit(bind);
            } else {
                std::vector<std::size_t> radix(missing.size(), pool.size());
                for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
                    auto full = bind;
                    for (std::size_t i = 0; i < missing.size(); ++i)
                        full[missing[i]] = pool[tup[i]];
                    emit(full);
                    return true;
                });
            }
        }
    }
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        path.push_back(static_cast<int>(i));
        all_steps(t.args[i], P, path, whole, pool, out);
        path.pop_back();
    }
}

// Proof of (before ~ after) for one rewrite step: Cong nodes down the path,
// Ax (possibly under Sym) wrapped in a substitution Cong at the redex.
inline Proof step_proof(const Term& before, const RewriteStep& st, const Presentation& P) {
    // Proof of the redex equation at the end of the path.
    const Term* red = &before;
    for (int ix : st.path) red = &red->args[ix];
    const Equation& ax = P.axioms[st.axiom];

    Proof axp;
    axp.rule = Rule::Ax;
    axp.conclusion = ax;
    if (!st.forward) {
        Proof s;
        s.rule = Rule::Sym;
        s.conclusion = {ax.rhs, ax.lhs, ax.n};
        s.premises.push_back(std::move(axp));
        axp = std::move(s);
    }
    int n = before.ambient;
    Proof cur;
    cur.rule = Rule::Cong;
    cur.premises.push_back(std::move(axp));
    for (const auto& b : st.binding) {
        Proof r;
        r.rule = Rule::Refl;
        r.conclusion = {b, b, n};
        cur.premises.push_back(std::move(r));
    }
    const Term& from = st.forward ? ax.lhs : ax.rhs;
    const Term& to = st.forward ? ax.rhs : ax.lhs;
    cur.conclusion = {substitute(from, st.binding, n), substitute(to, st.binding, n), n};
    assert(cur.conclusion.lhs == *red);

    // Wrap in per-level congruences: at each level use the generic application
    // sigma(x1..xk) ~ sigma(x1..xk) as the outer premise with the changed
    // argument in position path[lvl].
    for (int lvl = static_cast<int>(st.path.size()) - 1; lvl >= 0; --lvl) {
        const Term* node = &before;
        for (int j = 0; j < lvl; ++j) node = &node->args[st.path[j]];
        int k = static_cast<int>(node->args.size());
        Term generic = Term::app(node->sym, {}, k);
        for (int i = 1; i <= k; ++i) generic.args.push_back(Term::var(i, k));
        Proof outer;
        outer.rule = Rule::Refl;
        outer.conclusion = {generic, generic, k};
        Proof cong;
        cong.rule = Rule::Cong;
        cong.premises.push_back(std::move(outer));
        Term newnode = *node;
        for (int i = 0; i < k; ++i) {
            if (i == st.path[lvl]) {
                newnode.args[i] = cur.conclusion.rhs;
                cong.premises.push_back(std::move(cur));
            } else {
                Proof r;
                r.rule = Rule::Refl;
                r.conclusion = {node->args[i], node->args[i], n};
                cong.premises.push_back(std::move(r));
            }
        }
        cong.conclusion = {*node, newnode, n};
        cur = std::move(cong);
    }
    return cur;
}

}  // namespace detail

inline std::vector<Term> enumerate_terms(const GradedSet& sig, int n, int d);

struct SearchResult {
    bool found = false;
    Proof proof;  // valid iff found
    long long explored = 0;
};

struct SearchOptions {
    int expansion_pool_depth = 1;  // pool = terms up to this depth; -1 disables expansions
    int max_term_size = 0;         // 0: auto (largest goal side + 6)
};

// Bidirectional breadth-first search over the rewrite graph generated by the
// axioms. Both orientations of every axiom are used; orientations that
// introduce fresh variables (expansions) instantiate them from a small pool of
// shallow terms. Intermediate terms are capped in size, so failure is not a
// refutation. A returned proof always re-validates under check_proof.
inline SearchResult search_proof(const Presentation& P, const Equation& goal, int depth_budget,
                                 long long size_budget, const SearchOptions& opt = {}) {
    SearchResult res;
    if (goal.lhs == goal.rhs) {
        res.found = true;
        res.proof.rule = Rule::Refl;
        res.proof.conclusion = goal;
        return res;
    }
    struct Edge {
        Term parent;
        detail::RewriteStep step;
    };
    // side 0 grows from lhs, side 1 from rhs.
    std::map<Term, std::optional<Edge>, TermLess> seen[2];
    std::queue<Term> frontier[2];
    seen[0][goal.lhs] = std::nullopt;
    seen[1][goal.rhs] = std::nullopt;
    frontier[0].push(goal.lhs);
    frontier[1].push(goal.rhs);

    // Builds the proof of (origin ~ t) by walking parent edges back to origin.
    auto chain_proof = [&](int side, Term t) -> std::optional<Proof> {
        std::vector<Edge> edges;
        Term cur = t;
        while (true) {
            const auto& e = seen[side].at(cur);
            if (!e) break;
            edges.push_back(*e);
            cur = e->parent;
        }
        std::optional<Proof> acc;  // proof of (parent-of-last ... ~ t), built backwards
        for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
            Proof step = detail::step_proof(it->parent, it->step, P);
            if (!acc)
                acc = std::move(step);
            else {
                Proof tr;
                tr.rule = Rule::Trans;
                tr.conclusion = {acc->conclusion.lhs, step.conclusion.rhs, goal.n};
                tr.premises.push_back(std::move(*acc));
                tr.premises.push_back(std::move(step));
                acc = std::move(tr);
            }
        }
        return acc;
    };

    auto finish = [&](const Term& meet) {
        auto left = chain_proof(0, meet);   // lhs ~ meet (or none if meet == lhs)
        auto right = chain_proof(1, meet);  // rhs ~ meet
        Proof p;
        if (right) {
            Proof sym;
            sym.rule = Rule::Sym;
            sym.conclusion = {right->conclusion.rhs, right->conclusion.lhs, goal.n};
            sym.premises.push_back(std::move(*right));
            if (left) {
                p.rule = Rule::Trans;
                p.conclusion = goal;
                p.premises.push_back(std::move(*left));
                p.premises.push_back(std::move(sym));
            } else {
                p = std::move(sym);
            }
        } else {
            p = std::move(*left);
        }
        res.found = true;
        res.proof = std::move(p);
    };

    std::vector<Term> pool;
    if (opt.expansion_pool_depth >= 0)
        pool = enumerate_terms(P.signature, goal.n, opt.expansion_pool_depth);
    int size_cap = opt.max_term_size;
    if (size_cap == 0) size_cap = std::max(term_size(goal.lhs), term_size(goal.rhs)) + 6;

    for (int depth = 0; depth < depth_budget; ++depth) {
        for (int side = 0; side < 2; ++side) {
            std::queue<Term> next;
            while (!frontier[side].empty()) {
                Term t = frontier[side].front();
                frontier[side].pop();
                std::vector<detail::RewriteStep> steps;
                std::vector<int> path;
                detail::all_steps(t, P, path, t, pool, steps);
                for (auto& st : steps) {
                    if (term_size(st.result) > size_cap) continue;
                    if (res.explored >= size_budget) return res;
                    ++res.explored;
                    if (seen[side].count(st.result)) continue;
                    seen[side][st.result] = Edge{t, st};
                    if (seen[1 - side].count(st.result)) {
                        finish(st.result);
                        return res;
                    }
                    next.push(st.result);
                }
            }
            frontier[side] = std::move(next);
        }
    }
    return res;
}

// All well-formed terms of ambient arity n with depth <= d (for property
// tests; grows fast, keep d small).
inline std::vector<Term> enumerate_terms(const GradedSet& sig, int n, int d) {
    std::vector<Term> cur;
    for (int i = 1; i <= n; ++i) cur.push_back(Term::var(i, n));
    if (d == 0) return cur;
    std::vector<Term> smaller = enumerate_terms(sig, n, d - 1);
    std::vector<Term> out = smaller;  // depth <= d-1 terms are depth <= d terms
    std::set<Term, TermLess> dedup(out.begin(), out.end());
    for (const auto& [k, syms] : sig.arities)
        for (const auto& s : syms) {
            std::vector<std::size_t> radix(k, smaller.size());
            for_each_tuple(radix, [&](const std::vector<std::size_t>& tup) {
                std::vector<Term> args;
                for (auto ix : tup) args.push_back(smaller[ix]);
                Term t = Term::app(s, std::move(args), n);
                if (dedup.insert(t).second) out.push_back(std::move(t));
                return true;
            });
        }
    return out;
}

// ---------------------------------------------------------------------------
// Stock presentations
// ---------------------------------------------------------------------------

inline Presentation monoid_presentation() {
    Presentation P;
    P.signature.arities[0] = {"e"};
    P.signature.arities[2] = {"m"};
    auto x = [](int i, int n) { return Term::var(i, n); };
    Term e1 = Term::app("e", {}, 1);
    P.axioms.push_back({Term::app("m", {x(1, 1), e1}, 1), x(1, 1), 1});
    P.axioms.push_back({Term::app("m", {e1, x(1, 1)}, 1), x(1, 1), 1});
    Term l = Term::app("m", {Term::app("m", {x(1, 3), x(2, 3)}, 3), x(3, 3)}, 3);
    Term r = Term::app("m", {x(1, 3), Term::app("m", {x(2, 3), x(3, 3)}, 3)}, 3);
    P.axioms.push_back({l, r, 3});
    return P;
}

inline Presentation commutative_monoid_presentation() {
    Presentation P = monoid_presentation();
    auto x = [](int i, int n) { return Term::var(i, n); };
    P.axioms.push_back({Term::app("m", {x(1, 2), x(2, 2)}, 2),
                        Term::app("m", {x(2, 2), x(1, 2)}, 2), 2});
    return P;
}

inline Presentation group_presentation() {
    Presentation P;
    P.signature.arities[0] = {"e"};
    P.signature.arities[1] = {"i"};
    P.signature.arities[2] = {"m"};
    auto x = [](int i, int n) { return Term::var(i, n); };
    Term e1 = Term::app("e", {}, 1);
    P.axioms.push_back({Term::app("m", {x(1, 1), e1}, 1), x(1, 1), 1});
    P.axioms.push_back({Term::app("m", {x(1, 1), Term::app("i", {x(1, 1)}, 1)}, 1), e1, 1});
    Term l = Term::app("m", {Term::app("m", {x(1, 3), x(2, 3)}, 3), x(3, 3)}, 3);
    Term r = Term::app("m", {x(1, 3), Term::app("m", {x(2, 3), x(3, 3)}, 3)}, 3);
    P.axioms.push_back({l, r, 3});
    return P;
}

}  // namespace algkit
