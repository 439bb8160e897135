#include "ddlite/engine/proof_tree.hpp"

#include "ddlite/engine/builtins.hpp"
#include "ddlite/syntax/printer.hpp"

namespace ddlite::engine {

Term ProofTree::to_term() const {
    std::vector<Term> args{conclusion.to_term(), Term::constant(tag)};
    for (const auto& c : children) args.push_back(c.to_term());
    args.insert(args.end(), side_conditions.begin(), side_conditions.end());
    return Term::compound("t", std::move(args));
}

std::optional<ProofTree> ProofTree::from_term(const Term& t) {
    if (!t.is_compound() || t.name() != "t" || t.arity() < 2 || !t.arg(1).is_const()) return std::nullopt;
    auto concl = Atom::from_term(t.arg(0));
    if (!concl) return std::nullopt;
    ProofTree out;
    out.conclusion = *concl;
    out.tag = t.arg(1).name();
    for (std::size_t i = 2; i < t.arity(); ++i) {
        auto child = from_term(t.arg(i));
        if (child && out.side_conditions.empty()) {
            out.children.push_back(std::move(*child));
        } else {
            out.side_conditions.push_back(t.arg(i));
        }
    }
    return out;
}

namespace {

void ascii(const ProofTree& t, int depth, std::string& out) {
    std::string pad(2 * depth, ' ');
    out += pad + syntax::format_atom(t.conclusion) + "  [" + t.tag + "]\n";
    for (const auto& c : t.children) ascii(c, depth + 1, out);
    for (const auto& s : t.side_conditions) out += pad + "  { " + syntax::format_term(s) + " }\n";
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

int dot(const ProofTree& t, int& next, std::string& out) {
    int me = next++;
    std::string id = "n" + std::to_string(me);
    out += "  " + id + " [shape=box,label=\"" + dot_escape(syntax::format_atom(t.conclusion)) + "\\n[" +
           dot_escape(t.tag) + "]\"];\n";
    for (const auto& c : t.children) {
        int child = dot(c, next, out);
        out += "  " + id + " -> n" + std::to_string(child) + ";\n";
    }
    for (const auto& s : t.side_conditions) {
        std::string sid = "n" + std::to_string(next++);
        out += "  " + sid + " [shape=plaintext,label=\"" + dot_escape(syntax::format_term(s)) + "\"];\n";
        out += "  " + id + " -> " + sid + " [style=dashed];\n";
    }
    return me;
}

}  // namespace

std::string render_proof_tree(const ProofTree& t, TreeFormat format) {
    switch (format) {
        case TreeFormat::Term: return syntax::format_term(t.to_term());
        case TreeFormat::Ascii: {
            std::string out;
            ascii(t, 0, out);
            return out;
        }
        case TreeFormat::Dot: {
            std::string out = "digraph proof {\n";
            int next = 0;
            dot(t, next, out);
            return out + "}\n";
        }
    }
    return {};
}

Program auto_pt(const Program& p) {
    auto defined = p.idb();
    auto instrumented = [&](const Atom& a) { return defined.count(a.key()) && !is_builtin(a, defined); };
    Program out;
    for (const auto& r : p.rules) {
        Rule n;
        n.name = r.name;
        n.span = r.span;
        n.head = r.head;
        Term tree = Term::var("PT__");
        n.head.args.push_back(tree);

        std::vector<Term> children, sides;
        int k = 0;
        for (const auto& l : r.body) {
            Literal m = l;
            if (!l.negated() && instrumented(l.atom)) {
                Term v = Term::var("PT__" + std::to_string(++k));
                m.atom.args.push_back(v);
                children.push_back(v);
            } else if (l.negated() && instrumented(l.atom)) {
                m.atom.args.push_back(Term::var("_PT__" + std::to_string(++k)));
            } else if (!l.negated() && is_builtin(l.atom, defined)) {
                const auto& name = l.atom.predicate;
                if (name != "pt" && name != "true" && name != "!") sides.push_back(l.atom.to_term());
            }
            n.body.push_back(std::move(m));
        }

        std::vector<Term> targs{r.head.to_term(), Term::constant(r.name)};
        targs.insert(targs.end(), children.begin(), children.end());
        targs.insert(targs.end(), sides.begin(), sides.end());
        Literal pt;
        pt.atom = Atom("pt", {tree, Term::compound("t", std::move(targs))}, "prolog");
        n.body.push_back(std::move(pt));
        out.rules.push_back(std::move(n));
    }
    return out;
}

std::set<PredKey> auto_pt_witnesses(const Program& p) {
    std::set<PredKey> out;
    for (const auto& r : p.rules) {
        PredKey k = r.head.key();
        ++k.arity;
        out.insert(k);
    }
    return out;
}

}  // namespace ddlite::engine
