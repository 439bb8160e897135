#include "properties.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "ddlite/engine/evaluate.hpp"
#include "ddlite/engine/proof_tree.hpp"
#include "ddlite/substitution.hpp"
#include "ddlite/syntax/printer.hpp"
#include "oracles.hpp"

namespace ddlite::testing {

namespace {

std::string show(const Program& p) { return "\n" + syntax::print_program(p); }

}  // namespace

std::string check_fixpoints(int programs, std::uint32_t seed) {
    std::mt19937 rng(seed);
    for (int i = 0; i < programs; ++i) {
        Program p = random_program(rng);
        engine::EvalOptions naive, par;
        naive.semi_naive = false;
        par.parallel = true;
        auto semi = atom_strings(engine::evaluate(p));
        if (semi != atom_strings(engine::evaluate(p, naive))) return "semi-naive != naive for" + show(p);
        if (semi != atom_strings(engine::evaluate(p, par))) return "parallel != serial for" + show(p);
        if (semi != ground_fixpoint(p)) return "engine != ground oracle for" + show(p);
    }
    return {};
}

std::string check_rule_order(int programs, std::uint32_t seed) {
    std::mt19937 rng(seed);
    for (int i = 0; i < programs; ++i) {
        Program p = random_program(rng);
        auto base = atom_strings(engine::evaluate(p));
        Program q = p;
        for (int k = 0; k < 3; ++k) {
            std::shuffle(q.rules.begin(), q.rules.end(), rng);
            if (atom_strings(engine::evaluate(q)) != base) return "rule order changes the fixpoint of" + show(p);
        }
    }
    return {};
}

std::string check_mgu(int pairs, std::uint32_t seed) {
    std::mt19937 rng(seed);
    int unified = 0;
    for (int i = 0; i < pairs; ++i) {
        Term a = random_term(rng, 3), b = random_term(rng, 3);
        // bias towards unifiable pairs: sometimes b is an instance-ish variant of a
        if (i % 3 == 0) {
            Substitution s;
            s.bind("X", random_term(rng, 1));
            b = apply(s, a);
        }
        auto s = mgu(a, b);
        std::string pair = syntax::format_term(a) + " = " + syntax::format_term(b);
        if (!s) {
            if (a == b) return "no mgu for identical terms " + pair;
            continue;
        }
        ++unified;
        Term sa = apply(*s, a), sb = apply(*s, b);
        if (sa != sb) return "mgu is not a unifier: " + pair;
        if (apply(*s, sa) != sa) return "mgu is not idempotent: " + pair;
        // nothing left to unify
        if (auto again = mgu(sa, sb); !again || !again->empty()) return "unified terms still differ: " + pair;
        auto rev = mgu(b, a);
        if (!rev || !is_variant(apply(*rev, a), sa)) return "mgu is not symmetric up to renaming: " + pair;
    }
    if (unified < pairs / 10) return "too few unifiable pairs generated (" + std::to_string(unified) + ")";
    return {};
}

std::string check_proof_replay(int programs, std::uint32_t seed) {
    std::mt19937 rng(seed);
    for (int i = 0; i < programs; ++i) {
        Program p = random_program(rng);
        engine::EvalOptions opts;
        opts.witness_predicates = engine::auto_pt_witnesses(p);
        auto store = engine::evaluate(engine::auto_pt(p), opts);
        std::set<std::string> stripped;
        for (const auto& key : p.idb()) {
            PredKey wide{key.prefix, key.name, key.arity + 1};
            for (const auto& f : store.facts(wide)) {
                auto t = engine::ProofTree::from_term(f.args.back());
                if (!t) return "not a proof tree: " + syntax::format_atom(f);
                if (auto why = replay_proof(p, store, *t); !why.empty()) return why + show(p);
                stripped.insert(syntax::format_atom(t->conclusion));
            }
        }
        if (stripped != atom_strings(engine::evaluate(p))) return "instrumentation changes the model of" + show(p);
    }
    return {};
}

}  // namespace ddlite::testing
