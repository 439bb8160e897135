#include "ddlite/engine/evaluate.hpp"

#include <exception>
#include <unordered_set>

#include "json.hpp"

#include "ddlite/engine/builtins.hpp"
#include "ddlite/engine/checks.hpp"
#include "ddlite/error.hpp"
#include "ddlite/syntax/printer.hpp"
#include "plan.hpp"

namespace ddlite::engine {

namespace {

using Range = FactStore::Range;
using detail::LitKind;

struct CompiledRule {
    const Rule* rule;
    std::vector<detail::Step> plan;
    int stratum = 0;
    // plan positions of positive literals over predicates of the same stratum
    std::vector<std::size_t> recursive;
};

struct Task {
    const CompiledRule* rule;
    std::vector<Range> modes;  // per plan position
};

class Joiner {
public:
    Joiner(const FactStore& store, const Task& task) : store_(store), task_(task) {}

    std::vector<Atom> run() {
        Substitution s;
        try {
            step(0, s);
        } catch (const Error& e) {
            const Rule& r = *task_.rule->rule;
            if (e.message().rfind("in rule ", 0) == 0) throw;
            throw Error(e.code(), "in rule " + r.name + ": " + e.message(), e.span().known() ? e.span() : r.span);
        }
        return std::move(out_);
    }

private:
    void step(std::size_t k, const Substitution& s) {
        const CompiledRule& cr = *task_.rule;
        if (k == cr.plan.size()) {
            Atom h = apply(s, cr.rule->head);
            if (!h.is_ground())
                throw Error(Errc::NonGroundHead, "derived non-ground " + syntax::format_atom(h), cr.rule->span);
            h.span = {};
            out_.push_back(std::move(h));
            return;
        }
        const detail::Step& st = cr.plan[k];
        const Atom& a = cr.rule->body[st.index].atom;
        switch (st.kind) {
            case LitKind::Db: {
                Atom pattern = apply(s, a);
                std::vector<const Atom*> cands;
                store_.candidates(pattern, task_.modes[k], cands);
                for (const Atom* f : cands) {
                    Substitution next = s;
                    bool ok = true;
                    for (std::size_t i = 0; ok && i < pattern.args.size(); ++i)
                        ok = match_ground(pattern.args[i], f->args[i], next);
                    if (ok) step(k + 1, next);
                }
                return;
            }
            case LitKind::Neg: {
                Atom pattern = apply(s, a);
                std::vector<const Atom*> cands;
                store_.candidates(pattern, Range::Full, cands);
                for (const Atom* f : cands) {
                    Substitution local;
                    bool ok = true;
                    for (std::size_t i = 0; ok && i < pattern.args.size(); ++i)
                        ok = match_ground(pattern.args[i], f->args[i], local);
                    if (ok) return;
                }
                step(k + 1, s);
                return;
            }
            case LitKind::Builtin:
                for (const auto& ans : call_builtin(a, s)) step(k + 1, ans);
                return;
        }
    }

    const FactStore& store_;
    const Task& task_;
    std::vector<Atom> out_;
};

std::vector<CompiledRule> compile(const Program& p, const Strata* strata) {
    auto defined = p.idb();
    std::vector<CompiledRule> out;
    out.reserve(p.rules.size());
    for (const auto& r : p.rules) {
        CompiledRule cr;
        cr.rule = &r;
        cr.plan = detail::plan_body(r, defined);
        cr.stratum = strata ? strata->of(r.head.key()) : 0;
        for (std::size_t k = 0; k < cr.plan.size(); ++k) {
            const Atom& a = r.body[cr.plan[k].index].atom;
            if (cr.plan[k].kind == LitKind::Builtin) require_known_builtin(a);
            if (cr.plan[k].kind == LitKind::Db && strata && strata->of(a.key()) == cr.stratum)
                cr.recursive.push_back(k);
        }
        out.push_back(std::move(cr));
    }
    return out;
}

Task full_task(const CompiledRule& cr) { return Task{&cr, std::vector<Range>(cr.plan.size(), Range::Full)}; }

// Reference kernel.
std::vector<std::vector<Atom>> run_serial(const FactStore& store, const std::vector<Task>& tasks) {
    std::vector<std::vector<Atom>> results(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = Joiner(store, tasks[i]).run();
    return results;
}

// Same work split over threads: the store is only read during a step, and
// each task writes its own slot.
std::vector<std::vector<Atom>> run_parallel(const FactStore& store, const std::vector<Task>& tasks) {
    std::vector<std::vector<Atom>> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    const long n = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            results[i] = Joiner(store, tasks[i]).run();
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

std::vector<std::vector<Atom>> run_tasks(const FactStore& store, const std::vector<Task>& tasks, bool parallel) {
    return parallel ? run_parallel(store, tasks) : run_serial(store, tasks);
}

[[noreturn]] void limit_exceeded(int stratum, const std::string& what, const FactStore& store) {
    std::string msg = "stratum " + std::to_string(stratum) + ": " + what + "; last delta:";
    auto sample = store.delta_sample(3);
    if (sample.empty()) msg += " (empty)";
    for (std::size_t i = 0; i < sample.size(); ++i) msg += (i ? ", " : " ") + syntax::format_atom(sample[i]);
    throw Error(Errc::ResourceLimitExceeded, msg);
}

}  // namespace

std::vector<Atom> tp_step(const Program& p, const FactStore& store, bool parallel) {
    auto rules = compile(p, nullptr);
    std::vector<Task> tasks;
    for (const auto& cr : rules) tasks.push_back(full_task(cr));
    std::vector<Atom> out;
    std::unordered_set<Atom, AtomHash> seen;
    for (auto& batch : run_tasks(store, tasks, parallel))
        for (auto& a : batch)
            if (!store.contains(a) && seen.insert(a).second) out.push_back(std::move(a));
    return out;
}

FactStore evaluate(const Program& p, const EvalOptions& opts, EvalStats* stats) {
    auto violations = check_safety(p);
    if (!violations.empty()) {
        std::string msg = violations.front().to_string();
        if (violations.size() > 1) msg += " (and " + std::to_string(violations.size() - 1) + " more)";
        throw Error(Errc::Safety, msg, violations.front().span);
    }
    Strata strata = stratify(p);
    auto rules = compile(p, &strata);

    FactStore store;
    for (const auto& k : opts.witness_predicates) store.set_witness(k);
    if (stats) *stats = {};
    for (int k = 0; k < strata.count(); ++k) {
        std::vector<const CompiledRule*> mine;
        for (const auto& cr : rules)
            if (cr.stratum == k) mine.push_back(&cr);
        std::size_t iterations = 0;
        if (!mine.empty()) {
            std::vector<Task> tasks;
            for (const auto* cr : mine) tasks.push_back(full_task(*cr));
            while (true) {
                if (iterations >= opts.max_iterations)
                    limit_exceeded(k, "no fixpoint after " + std::to_string(opts.max_iterations) + " iterations", store);
                ++iterations;
                std::size_t added = 0;
                for (auto& batch : run_tasks(store, tasks, opts.parallel)) {
                    if (stats) stats->rule_firings += batch.size();
                    for (auto& a : batch) added += store.insert(a);
                }
                store.advance();
                if (store.size() > opts.max_facts)
                    limit_exceeded(k, "more than " + std::to_string(opts.max_facts) + " facts", store);
                if (added == 0) break;

                tasks.clear();
                for (const auto* cr : mine) {
                    if (!opts.semi_naive) {
                        tasks.push_back(full_task(*cr));
                        continue;
                    }
                    for (std::size_t i = 0; i < cr->recursive.size(); ++i) {
                        Task t = full_task(*cr);
                        for (std::size_t j = 0; j < i; ++j) t.modes[cr->recursive[j]] = Range::Old;
                        t.modes[cr->recursive[i]] = Range::Delta;
                        tasks.push_back(std::move(t));
                    }
                }
                if (tasks.empty()) break;
            }
        }
        if (stats) stats->iterations_per_stratum.push_back(iterations);
    }
    store.finalize();
    return store;
}

std::string dump_facts(const FactStore& store) {
    std::string out;
    for (const auto& a : store.sorted()) out += syntax::format_atom(a) + ".\n";
    return out;
}

std::string dump_facts_json(const FactStore& store) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& a : store.sorted()) {
        nlohmann::ordered_json j;
        j["pred"] = a.prefix.empty() ? a.predicate : a.prefix + ":" + a.predicate;
        auto args = nlohmann::ordered_json::array();
        for (const auto& t : a.args) {
            if (t.is_int()) args.push_back(t.int_value());
            else if (t.is_float()) args.push_back(t.float_value());
            else args.push_back(syntax::format_term(t));
        }
        j["args"] = args;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

}  // namespace ddlite::engine
