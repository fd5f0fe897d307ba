// Command-line surface over the library: parsing, evaluation, entailment,
// rule soundness, monadicity, proof search, derivation checking, system
// transforms, tree-to-linear translation, desk-scale agreement sweeps, and
// corpus export.
//
// Exit codes: 0 holds/accepted/success, 1 fails/rejected/no proof,
// 2 usage or input error, 3 inconclusive (budget exhausted).

#include "wk/corpus.hpp"
#include "wk/transforms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace wk;
using nlohmann::json;

namespace {

struct CmdError {
    int code;
    std::string msg;
};

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CmdError{2, "cannot read file: " + path};
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw CmdError{2, "cannot write file: " + out_path};
    os << text;
}

Signature matrix_signature(const Matrix& m) {
    return Signature(m.algebra.arities);
}

const Matrix& find_matrix(const std::string& id) {
    try {
        return corpus().get_matrix(id);
    } catch (const std::invalid_argument& e) {
        throw CmdError{2, e.what()};
    }
}

struct LoadedSystem {
    HSystem sys;
    Signature sig;
    std::string matrix_id; // empty for file-loaded systems
};

LoadedSystem load_system(const std::string& id, const std::string& file) {
    if (id.empty() == file.empty())
        throw CmdError{2, "give exactly one of --system and --system-file"};
    if (!id.empty()) {
        try {
            return {corpus().get_system(id), corpus().system_signature(id),
                    corpus().system_matrix_id(id)};
        } catch (const std::invalid_argument& e) {
            throw CmdError{2, e.what()};
        }
    }
    HSystem sys = parse_system(slurp(file));
    return {std::move(sys), Signature::and_or_imp_not(), ""};
}

FormulaSet parse_side(const std::string& text, const Signature& sig) {
    std::vector<Formula> fs = parse_formula_list(text, sig, true);
    return FormulaSet(fs.begin(), fs.end());
}

Valuation parse_assignment(const std::string& text, const Matrix& m) {
    Valuation v;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw CmdError{2, "assignment entries look like p=t: " + item};
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string var = strip(item.substr(0, eq));
        std::string val = strip(item.substr(eq + 1));
        v[var] = m.algebra.value_index(val);
    }
    return v;
}

// ------------------------------------------------- structured/graph output

json formula_list_json(const std::vector<Formula>& fs) {
    json a = json::array();
    for (const Formula& f : fs) a.push_back(f.text());
    return a;
}

json formula_set_json(const FormulaSet& fs) {
    json a = json::array();
    for (const Formula& f : fs) a.push_back(f.text());
    return a;
}

json subst_json(const Substitution& s) {
    json o = json::object();
    for (const auto& [var, f] : s) o[var] = f.text();
    return o;
}

json claim_json(const Statement& claim) {
    return json{{"antecedent", formula_set_json(claim.antecedent)},
                {"succedent", formula_set_json(claim.succedent)}};
}

json tree_node_json(const std::shared_ptr<TreeNode>& n) {
    if (n->kind == TreeNode::Kind::Close)
        return json{{"close", n->close_with.text()}};
    json o{{"rule", n->rule}, {"subst", subst_json(n->subst)}};
    if (n->star) {
        o["star"] = true;
        return o;
    }
    json branches = json::array();
    for (const auto& [f, child] : n->branches)
        branches.push_back(json{{"formula", f.text()}, {"node", tree_node_json(child)}});
    o["branches"] = branches;
    return o;
}

std::string derivation_json_text(const DerivationDocument& doc) {
    json o{{"system", doc.system_id},
           {"kind", kind_name(doc.kind)},
           {"claim", claim_json(doc.claim)}};
    if (doc.linear) {
        json steps = json::array();
        for (const Step& s : doc.linear->steps) {
            json e{{"index", s.index}, {"formula", s.formula.text()}};
            switch (s.just.kind) {
            case Justification::Kind::Premise:
                e["premise"] = true;
                break;
            case Justification::Kind::Rule:
            case Justification::Kind::Derived:
            case Justification::Kind::Chain: {
                json rules = json::array();
                for (const std::string& r : s.just.rules) rules.push_back(r);
                e["rules"] = rules;
                e["refs"] = s.just.refs;
                json substs = json::array();
                for (const Substitution& sub : s.just.substs)
                    substs.push_back(subst_json(sub));
                e["substs"] = substs;
                break;
            }
            }
            steps.push_back(e);
        }
        o["steps"] = steps;
        o["qed"] = doc.linear->conclusion_index();
    } else if (doc.tree) {
        o["root_label"] = formula_list_json(doc.tree->root_label);
        o["root"] = tree_node_json(doc.tree->root);
    }
    return o.dump(2) + "\n";
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void tree_dot_walk(const std::shared_ptr<TreeNode>& n, int& counter, int my_id,
                   std::ostringstream& os) {
    if (n->kind == TreeNode::Kind::Close) {
        os << "  n" << my_id << " [shape=ellipse, label=\"close "
           << dot_escape(n->close_with.text()) << "\"];\n";
        return;
    }
    std::string label = n->rule;
    std::string sub = render_substitution(n->subst);
    if (!sub.empty()) label += " " + sub;
    if (n->star) {
        os << "  n" << my_id << " [shape=box, label=\"" << dot_escape(label)
           << "\\nstar\"];\n";
        return;
    }
    os << "  n" << my_id << " [shape=box, label=\"" << dot_escape(label) << "\"];\n";
    for (const auto& [f, child] : n->branches) {
        int child_id = ++counter;
        os << "  n" << my_id << " -> n" << child_id << " [label=\""
           << dot_escape(f.text()) << "\"];\n";
        tree_dot_walk(child, counter, child_id, os);
    }
}

std::string tree_dot(const DerivationDocument& doc) {
    std::ostringstream os;
    os << "digraph derivation {\n";
    os << "  graph [label=\"" << dot_escape(render_statement(doc.claim))
       << "\", labelloc=t];\n";
    int counter = 0;
    tree_dot_walk(doc.tree->root, counter, 0, os);
    os << "}\n";
    return os.str();
}

std::string emit_derivation(const DerivationDocument& doc, const Signature& sig,
                            const std::string& format) {
    if (format == "drv") return serialize_derivation(doc, sig);
    if (format == "json") return derivation_json_text(doc);
    if (format == "dot") {
        if (!doc.tree) throw CmdError{2, "dot output needs a tree derivation"};
        return tree_dot(doc);
    }
    throw CmdError{2, "unknown format: " + format};
}

// ------------------------------------------------------------ family sweep

// All distinct formulas over the first `vars` variable names with nesting
// depth at most `depth`, in canonical order.
std::vector<Formula> formula_pool(const Signature& sig, int vars, int depth) {
    static const char* kNames[] = {"p", "q", "r", "s"};
    if (vars < 1 || vars > 4) throw CmdError{2, "--vars must be between 1 and 4"};
    std::set<Formula> layer;
    for (int i = 0; i < vars; ++i) layer.insert(Formula::variable(kNames[i]));
    std::set<Formula> pool = layer;
    for (int d = 0; d < depth; ++d) {
        std::set<Formula> next;
        std::vector<Formula> base(pool.begin(), pool.end());
        for (const auto& [conn, arity] : sig.connectives()) {
            if (arity == 1) {
                for (const Formula& f : base) next.insert(Formula::apply(conn, {f}));
            } else if (arity == 2) {
                for (const Formula& a : base)
                    for (const Formula& b : base)
                        next.insert(Formula::apply(conn, {a, b}));
            }
        }
        pool.insert(next.begin(), next.end());
    }
    return std::vector<Formula>(pool.begin(), pool.end());
}

// All subsets of the pool with at most `max_size` elements, in a fixed order:
// the empty set, then singletons, then pairs (i < j), and so on.
std::vector<FormulaSet> side_family(const std::vector<Formula>& pool, int max_size) {
    std::vector<FormulaSet> out;
    out.push_back({});
    for (int size = 1; size <= max_size; ++size) {
        std::vector<std::size_t> pick;
        auto combos = [&](auto&& self, std::size_t start, int need) -> void {
            if (need == 0) {
                FormulaSet s;
                for (std::size_t j : pick) s.insert(pool[j]);
                out.push_back(std::move(s));
                return;
            }
            for (std::size_t i = start; i < pool.size(); ++i) {
                pick.push_back(i);
                self(self, i + 1, need - 1);
                pick.pop_back();
            }
        };
        combos(combos, 0, size);
    }
    return out;
}

Formula random_formula(std::mt19937& rng, const Signature& sig,
                       const std::vector<std::string>& vars, int depth) {
    if (depth == 0) return Formula::variable(vars[rng() % vars.size()]);
    std::vector<std::pair<std::string, int>> conns(sig.connectives().begin(),
                                                   sig.connectives().end());
    const auto& [conn, arity] = conns[rng() % conns.size()];
    std::vector<Formula> args;
    std::size_t deep_slot = rng() % static_cast<std::size_t>(arity);
    for (int i = 0; i < arity; ++i) {
        int child_depth = (static_cast<std::size_t>(i) == deep_slot)
                              ? depth - 1
                              : static_cast<int>(rng() % static_cast<unsigned>(depth));
        args.push_back(random_formula(rng, sig, vars, child_depth));
    }
    return Formula::apply(conn, args);
}

// ------------------------------------------------------------- subcommands

int cmd_parse(const std::string& sig_name, const std::string& text) {
    const Signature* sig = nullptr;
    if (sig_name == "and_or_not") sig = &Signature::and_or_not();
    else if (sig_name == "imp_not") sig = &Signature::imp_not();
    else if (sig_name == "and_or_imp_not") sig = &Signature::and_or_imp_not();
    else throw CmdError{2, "unknown signature: " + sig_name};
    Formula f = parse_formula(text, *sig, true);
    std::cout << "formula: " << f.text() << "\n";
    std::cout << "size: " << f.size() << "\n";
    std::string vars;
    for (const std::string& v : f.variables()) {
        if (!vars.empty()) vars += ", ";
        vars += v;
    }
    std::cout << "variables: " << vars << "\n";
    return 0;
}

int cmd_eval(const std::string& matrix_id, const std::string& assign,
             const std::string& text) {
    const Matrix& m = find_matrix(matrix_id);
    Formula f = parse_formula(text, matrix_signature(m), true);
    Valuation v = parse_assignment(assign, m);
    int val = evaluate(f, m.algebra, v);
    std::cout << "value: " << m.algebra.values.at(val) << "\n";
    std::cout << "designated: " << (m.is_designated(val) ? "yes" : "no") << "\n";
    return m.is_designated(val) ? 0 : 1;
}

int cmd_entails(const std::string& matrix_id, const std::string& lhs,
                const std::string& rhs) {
    const Matrix& m = find_matrix(matrix_id);
    Signature sig = matrix_signature(m);
    EntailmentVerdict v = consequence_holds(m, parse_side(lhs, sig), parse_side(rhs, sig));
    if (v.holds) {
        std::cout << "holds\n";
        return 0;
    }
    std::cout << "fails\n";
    std::cout << "countermodel: " << render_valuation(m, *v.countermodel) << "\n";
    return 1;
}

int cmd_rule_sound(const std::string& matrix_id, const std::string& system_id,
                   const std::string& system_file, const std::string& rule_name) {
    const Matrix& m = find_matrix(matrix_id);
    LoadedSystem ls = load_system(system_id, system_file);
    int sound = 0, total = 0;
    for (const RuleSchema& r : ls.sys.rules) {
        if (!rule_name.empty() && r.name != rule_name) continue;
        ++total;
        EntailmentVerdict v = rule_sound(m, r);
        if (v.holds) {
            ++sound;
            std::cout << "rule " << r.name << ": sound\n";
        } else {
            std::cout << "rule " << r.name << ": unsound  countermodel: "
                      << render_valuation(m, *v.countermodel) << "\n";
        }
    }
    if (total == 0) throw CmdError{2, "no such rule: " + rule_name};
    std::cout << "sound: " << sound << "/" << total << "\n";
    return sound == total ? 0 : 1;
}

int cmd_monadic(const std::string& matrix_id, const std::string& theta_text) {
    const Matrix& m = find_matrix(matrix_id);
    std::vector<Formula> theta =
        parse_formula_list(theta_text, matrix_signature(m), true);
    MonadicityReport rep;
    try {
        rep = check_monadicity(m, theta);
    } catch (const std::invalid_argument& e) {
        throw CmdError{2, e.what()};
    }
    bool all = true;
    for (const auto& [pair, sep] : rep) {
        std::cout << "pair (" << m.algebra.values.at(pair.first) << ", "
                  << m.algebra.values.at(pair.second) << "): ";
        if (sep) {
            std::cout << "separated by " << sep->text() << "\n";
        } else {
            std::cout << "no separator\n";
            all = false;
        }
    }
    std::cout << (all ? "monadic\n" : "not monadic\n");
    return all ? 0 : 1;
}

int cmd_prove(const std::string& system_id, const std::string& system_file,
              const std::string& lhs, const std::string& rhs, bool analytic,
              bool bounded, const std::string& theta_text, long max_nodes,
              long max_steps, const std::string& format, const std::string& out) {
    LoadedSystem ls = load_system(system_id, system_file);
    Statement claim{parse_side(lhs, ls.sig), parse_side(rhs, ls.sig)};
    if (analytic && bounded) throw CmdError{2, "--analytic and --bounded conflict"};
    bool use_analytic = analytic || (!bounded && ls.sys.kind == SystemKind::SetSet);
    if (use_analytic && ls.sys.kind != SystemKind::SetSet)
        throw CmdError{2, "analytic search needs a multiple-conclusion system"};

    SearchConfig cfg;
    cfg.max_nodes = max_nodes;
    cfg.max_steps = max_steps;
    if (!theta_text.empty()) cfg.theta = parse_formula_list(theta_text, ls.sig, true);

    DerivationDocument doc;
    doc.system_id = ls.sys.name;
    doc.claim = claim;
    doc.kind = ls.sys.kind;
    SearchOutcome outcome;
    if (use_analytic) {
        TreeSearchResult res = prove_setset_analytic(ls.sys, claim, cfg);
        outcome = res.outcome;
        if (res.proof) doc.tree = std::move(res.proof);
    } else {
        if (claim.succedent.size() != 1)
            throw CmdError{2, "bounded search needs a single succedent formula"};
        LinearSearchResult res = prove_setfmla_bounded(ls.sys, claim, cfg);
        outcome = res.outcome;
        if (res.proof) doc.linear = std::move(res.proof);
    }

    switch (outcome) {
    case SearchOutcome::Proved: {
        std::string text = emit_derivation(doc, ls.sig, format);
        emit(text, out);
        if (!out.empty()) std::cout << "proved\n";
        return 0;
    }
    case SearchOutcome::NoProof:
        if (use_analytic) {
            std::cout << "no proof\n";
            return 1;
        }
        std::cout << "inconclusive\n";
        return 3;
    case SearchOutcome::BudgetExhausted:
        std::cout << "budget exhausted\n";
        return 3;
    }
    return 2;
}

int cmd_verify(const std::string& path, const std::string& system_id,
               const std::string& system_file) {
    std::string text = slurp(path);
    std::string header_id = peek_derivation_system(text);
    LoadedSystem ls;
    if (!system_file.empty()) {
        ls = load_system("", system_file);
        if (ls.sys.name != header_id)
            throw CmdError{2, "derivation names system '" + header_id +
                                  "' but the file defines '" + ls.sys.name + "'"};
    } else {
        if (!system_id.empty() && system_id != header_id)
            throw CmdError{2, "derivation names system '" + header_id +
                                  "' but --system says '" + system_id + "'"};
        ls = load_system(header_id, "");
    }
    DerivationDocument doc = parse_derivation(text, ls.sig, ls.sys.kind);
    VerifyResult v = doc.linear ? verify_derivation(ls.sys, *doc.linear, doc.claim)
                                : verify_derivation(ls.sys, *doc.tree, doc.claim);
    if (v.accepted) {
        std::cout << "accepted\n";
        return 0;
    }
    std::cout << "rejected at " << v.location << ": " << v.reason;
    if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
    std::cout << "\n";
    return 1;
}

int cmd_transform_dualize(const std::string& system_id, const std::string& system_file,
                          const std::string& out) {
    LoadedSystem ls = load_system(system_id, system_file);
    if (ls.sys.kind != SystemKind::SetSet)
        throw CmdError{2, "dualize needs a multiple-conclusion system"};
    emit(serialize_system(dualize_system(ls.sys)), out);
    return 0;
}

int cmd_transform_or_convert(const std::string& system_id,
                             const std::string& system_file, const std::string& out) {
    LoadedSystem ls = load_system(system_id, system_file);
    if (ls.sys.kind != SystemKind::SetSet)
        throw CmdError{2, "or-convert needs a multiple-conclusion system"};
    FreshNamer fresh("p");
    fresh.reserve_system(ls.sys);
    OrConvertReport report;
    HSystem converted = or_convert_system(ls.sys, fresh, &report);
    std::string text = serialize_system(converted);
    for (const auto& d : report.discarded)
        text += "# discarded " + d.source_rule + ": trivial image " +
                render_statement({FormulaSet(d.image.antecedent.begin(),
                                             d.image.antecedent.end()),
                                  FormulaSet(d.image.succedent.begin(),
                                             d.image.succedent.end())}) +
                "\n";
    emit(text, out);
    return 0;
}

int cmd_transform_lift(const std::string& system_id, const std::string& system_file,
                       const std::string& rule_name, const std::string& mode_name) {
    LoadedSystem ls = load_system(system_id, system_file);
    const RuleSchema* r = ls.sys.find_rule(rule_name);
    if (!r) throw CmdError{2, "no such rule: " + rule_name};
    LiftMode mode;
    if (mode_name == "or") mode = LiftMode::Or;
    else if (mode_name == "imp") mode = LiftMode::Imp;
    else throw CmdError{2, "--mode must be or|imp"};
    FreshNamer fresh("v");
    fresh.reserve_system(ls.sys);
    RuleSchema lifted = lift_rule(*r, mode, fresh);
    FormulaSet ant(lifted.antecedent.begin(), lifted.antecedent.end());
    FormulaSet suc(lifted.succedent.begin(), lifted.succedent.end());
    std::cout << "rule " << lifted.name << " : " << render_statement({ant, suc}) << "\n";
    return 0;
}

int cmd_translate_bk(const std::string& path, const std::string& format,
                     const std::string& out) {
    std::string text = slurp(path);
    std::string header_id = peek_derivation_system(text);
    if (header_id != "R_BK_star")
        throw CmdError{2, "translate-bk expects a derivation in system R_BK_star, got '" +
                              header_id + "'"};
    const HSystem& star = corpus().get_system("R_BK_star");
    const HSystem& h_bk = corpus().get_system("H_BK");
    const Signature& sig = corpus().system_signature("R_BK_star");
    DerivationDocument doc = parse_derivation(text, sig, star.kind);
    if (!doc.tree) throw CmdError{2, "translate-bk expects a tree derivation"};
    VerifyResult v = verify_derivation(star, *doc.tree, doc.claim);
    if (!v.accepted) {
        std::cout << "rejected at " << v.location << ": " << v.reason << "\n";
        return 1;
    }
    TransformResult res = translate_bk(star, h_bk, *doc.tree, doc.claim);
    DerivationDocument out_doc;
    out_doc.system_id = h_bk.name;
    out_doc.claim = res.claim;
    out_doc.kind = SystemKind::SetFmla;
    out_doc.linear = std::move(res.derivation);
    std::string rendered = emit_derivation(out_doc, sig, format);
    emit(rendered, out);
    if (!out.empty()) std::cout << "translated\n";
    return 0;
}

int cmd_compare(const std::string& system_id, const std::string& matrix_id, int vars,
                int depth, int side, int sample, int sample_depth, unsigned seed,
                long max_nodes, int show) {
    const HSystem& sys = corpus().get_system(system_id);
    const Matrix& m = find_matrix(matrix_id);
    if (sys.kind != SystemKind::SetSet)
        throw CmdError{2, "compare needs a multiple-conclusion system"};
    const Signature& sig = corpus().system_signature(system_id);

    std::vector<Formula> pool = formula_pool(sig, vars, depth);
    std::vector<FormulaSet> sides = side_family(pool, side);

    SearchConfig cfg;
    cfg.max_nodes = max_nodes;

    long agreements = 0, disagreements = 0, exhausted = 0, total = 0;
    int shown = 0;
    auto check = [&](const FormulaSet& ant, const FormulaSet& suc) {
        ++total;
        EntailmentVerdict sem = consequence_holds(m, ant, suc);
        TreeSearchResult res = prove_setset_analytic(sys, {ant, suc}, cfg);
        if (res.outcome == SearchOutcome::BudgetExhausted) {
            ++exhausted;
            return;
        }
        bool proved = res.outcome == SearchOutcome::Proved;
        if (proved == sem.holds) {
            ++agreements;
        } else {
            ++disagreements;
            if (shown < show) {
                ++shown;
                std::cout << "disagree: " << render_statement({ant, suc})
                          << "  semantic=" << (sem.holds ? "holds" : "fails")
                          << " search=" << (proved ? "proved" : "no proof") << "\n";
            }
        }
    };

    for (const FormulaSet& ant : sides)
        for (const FormulaSet& suc : sides) check(ant, suc);

    if (sample > 0) {
        std::mt19937 rng(seed);
        std::vector<std::string> names;
        {
            static const char* kNames[] = {"p", "q", "r", "s"};
            for (int i = 0; i < vars; ++i) names.push_back(kNames[i]);
        }
        for (int i = 0; i < sample; ++i) {
            auto random_side = [&](int max_size) {
                FormulaSet s;
                int size = static_cast<int>(rng() % static_cast<unsigned>(max_size + 1));
                while (static_cast<int>(s.size()) < size)
                    s.insert(random_formula(
                        rng, sig, names,
                        static_cast<int>(rng() % static_cast<unsigned>(sample_depth + 1))));
                return s;
            };
            check(random_side(side), random_side(side));
        }
    }

    std::cout << "family: system=" << system_id << " matrix=" << matrix_id
              << " vars=" << vars << " depth=" << depth << " sides<=" << side
              << " statements=" << total << "\n";
    std::cout << "agreements: " << agreements << "\n";
    std::cout << "disagreements: " << disagreements << "\n";
    std::cout << "budget-exhausted: " << exhausted << "\n";
    return (disagreements == 0 && exhausted == 0) ? 0 : 1;
}

int cmd_systems_list() {
    for (const std::string& id : corpus().system_ids()) {
        const HSystem& s = corpus().get_system(id);
        std::cout << id << "  " << kind_name(s.kind) << "  " << s.rules.size()
                  << " rules";
        if (!s.derived.empty()) std::cout << " + " << s.derived.size() << " derived";
        std::cout << "  matrix " << corpus().system_matrix_id(id) << "\n";
    }
    return 0;
}

int cmd_systems_show(const std::string& id) {
    const HSystem* sys = nullptr;
    try {
        sys = &corpus().get_system(id);
    } catch (const std::invalid_argument& e) {
        throw CmdError{2, e.what()};
    }
    std::cout << serialize_system(*sys);
    for (const auto& [name, d] : sys->derived) {
        FormulaSet ant(d.schema.antecedent.begin(), d.schema.antecedent.end());
        FormulaSet suc(d.schema.succedent.begin(), d.schema.succedent.end());
        std::cout << "# derived " << name << " : " << render_statement({ant, suc})
                  << "\n";
    }
    return 0;
}

int cmd_corpus_export(const std::string& dir) {
    int n = corpus().export_files(dir);
    std::cout << "exported " << n << " files to " << dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite proof systems and matrix semantics for the weak Kleene logics"};
    app.require_subcommand(1);
    int rc = 0;

    // parse
    std::string p_sig = "and_or_imp_not", p_formula;
    auto* parse_cmd = app.add_subcommand("parse", "parse a formula and print it canonically");
    parse_cmd->add_option("--sig", p_sig, "signature: and_or_not|imp_not|and_or_imp_not");
    parse_cmd->add_option("formula", p_formula, "formula text")->required();
    parse_cmd->callback([&] { rc = cmd_parse(p_sig, p_formula); });

    // eval
    std::string e_matrix, e_assign, e_formula;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula under an assignment");
    eval_cmd->add_option("--matrix", e_matrix, "matrix id")->required();
    eval_cmd->add_option("--assign", e_assign, "assignment, e.g. \"p=t, q=u\"")->required();
    eval_cmd->add_option("formula", e_formula, "formula text")->required();
    eval_cmd->callback([&] { rc = cmd_eval(e_matrix, e_assign, e_formula); });

    // entails
    std::string n_matrix, n_lhs, n_rhs;
    auto* entails_cmd = app.add_subcommand("entails", "semantic consequence check");
    entails_cmd->add_option("--matrix", n_matrix, "matrix id")->required();
    entails_cmd->add_option("--lhs", n_lhs, "antecedent formulas, comma separated");
    entails_cmd->add_option("--rhs", n_rhs, "succedent formulas, comma separated");
    entails_cmd->callback([&] { rc = cmd_entails(n_matrix, n_lhs, n_rhs); });

    // rule-sound
    std::string rs_matrix, rs_system, rs_file, rs_rule;
    auto* rs_cmd = app.add_subcommand("rule-sound", "check rules against a matrix");
    rs_cmd->add_option("--matrix", rs_matrix, "matrix id")->required();
    rs_cmd->add_option("--system", rs_system, "system id from the corpus");
    rs_cmd->add_option("--system-file", rs_file, "system definition file");
    rs_cmd->add_option("--rule", rs_rule, "check a single rule");
    rs_cmd->callback([&] { rc = cmd_rule_sound(rs_matrix, rs_system, rs_file, rs_rule); });

    // monadic
    std::string mo_matrix, mo_theta = "x, ~x";
    auto* mo_cmd = app.add_subcommand("monadic", "separator coverage of a matrix");
    mo_cmd->add_option("--matrix", mo_matrix, "matrix id")->required();
    mo_cmd->add_option("--theta", mo_theta, "one-variable formulas, comma separated");
    mo_cmd->callback([&] { rc = cmd_monadic(mo_matrix, mo_theta); });

    // prove
    std::string pr_system, pr_file, pr_lhs, pr_rhs, pr_theta, pr_format = "drv", pr_out;
    bool pr_analytic = false, pr_bounded = false;
    long pr_max_nodes = 200000, pr_max_steps = 20000;
    auto* pr_cmd = app.add_subcommand("prove", "search for a derivation");
    pr_cmd->add_option("--system", pr_system, "system id from the corpus");
    pr_cmd->add_option("--system-file", pr_file, "system definition file");
    pr_cmd->add_option("--lhs", pr_lhs, "antecedent formulas, comma separated");
    pr_cmd->add_option("--rhs", pr_rhs, "succedent formulas, comma separated");
    pr_cmd->add_flag("--analytic", pr_analytic, "tree search (multiple-conclusion)");
    pr_cmd->add_flag("--bounded", pr_bounded, "forward search (single-conclusion)");
    pr_cmd->add_option("--theta", pr_theta, "search-universe formulas, comma separated");
    pr_cmd->add_option("--max-nodes", pr_max_nodes, "tree-search node budget");
    pr_cmd->add_option("--max-steps", pr_max_steps, "forward-search step budget");
    pr_cmd->add_option("--format", pr_format, "proof output: drv|json|dot");
    pr_cmd->add_option("--out", pr_out, "write the proof to this file");
    pr_cmd->callback([&] {
        rc = cmd_prove(pr_system, pr_file, pr_lhs, pr_rhs, pr_analytic, pr_bounded,
                       pr_theta, pr_max_nodes, pr_max_steps, pr_format, pr_out);
    });

    // verify
    std::string v_path, v_system, v_file;
    auto* v_cmd = app.add_subcommand("verify", "check a derivation file");
    v_cmd->add_option("file", v_path, "derivation file")->required();
    v_cmd->add_option("--system", v_system, "expected system id");
    v_cmd->add_option("--system-file", v_file, "system definition file");
    v_cmd->callback([&] { rc = cmd_verify(v_path, v_system, v_file); });

    // transform
    auto* tr_cmd = app.add_subcommand("transform", "system transformations");
    tr_cmd->require_subcommand(1);
    std::string td_system, td_file, td_out;
    auto* td_cmd = tr_cmd->add_subcommand("dualize", "swap sides and interchange & with |");
    td_cmd->add_option("--system", td_system, "system id from the corpus");
    td_cmd->add_option("--system-file", td_file, "system definition file");
    td_cmd->add_option("--out", td_out, "write the system to this file");
    td_cmd->callback([&] { rc = cmd_transform_dualize(td_system, td_file, td_out); });

    std::string to_system, to_file, to_out;
    auto* to_cmd = tr_cmd->add_subcommand("or-convert",
                                          "single-conclusion disjunctive companion");
    to_cmd->add_option("--system", to_system, "system id from the corpus");
    to_cmd->add_option("--system-file", to_file, "system definition file");
    to_cmd->add_option("--out", to_out, "write the system to this file");
    to_cmd->callback([&] { rc = cmd_transform_or_convert(to_system, to_file, to_out); });

    std::string tl_system, tl_file, tl_rule, tl_mode = "or";
    auto* tl_cmd = tr_cmd->add_subcommand("lift", "disjunctive or conditional lift of a rule");
    tl_cmd->add_option("--system", tl_system, "system id from the corpus");
    tl_cmd->add_option("--system-file", tl_file, "system definition file");
    tl_cmd->add_option("--rule", tl_rule, "rule name")->required();
    tl_cmd->add_option("--mode", tl_mode, "or|imp");
    tl_cmd->callback([&] { rc = cmd_transform_lift(tl_system, tl_file, tl_rule, tl_mode); });

    // translate-bk
    std::string tb_path, tb_format = "drv", tb_out;
    auto* tb_cmd = app.add_subcommand(
        "translate-bk", "turn an R_BK_star tree derivation into an H_BK linear one");
    tb_cmd->add_option("file", tb_path, "tree derivation file")->required();
    tb_cmd->add_option("--format", tb_format, "proof output: drv|json");
    tb_cmd->add_option("--out", tb_out, "write the derivation to this file");
    tb_cmd->callback([&] { rc = cmd_translate_bk(tb_path, tb_format, tb_out); });

    // compare
    std::string c_system, c_matrix;
    int c_vars = 2, c_depth = 1, c_side = 2, c_sample = 0, c_sample_depth = 2, c_show = 10;
    unsigned c_seed = 12345;
    long c_max_nodes = 200000;
    auto* c_cmd = app.add_subcommand(
        "compare", "sweep a statement family: proof search vs truth tables");
    c_cmd->add_option("--system", c_system, "system id from the corpus")->required();
    c_cmd->add_option("--matrix", c_matrix, "matrix id")->required();
    c_cmd->add_option("--vars", c_vars, "number of variables (1-4)");
    c_cmd->add_option("--depth", c_depth, "maximum formula depth");
    c_cmd->add_option("--side", c_side, "maximum side size");
    c_cmd->add_option("--sample", c_sample, "extra seeded random statements");
    c_cmd->add_option("--sample-depth", c_sample_depth, "depth of sampled formulas");
    c_cmd->add_option("--seed", c_seed, "sampling seed");
    c_cmd->add_option("--max-nodes", c_max_nodes, "tree-search node budget");
    c_cmd->add_option("--show", c_show, "max disagreements to print");
    c_cmd->callback([&] {
        rc = cmd_compare(c_system, c_matrix, c_vars, c_depth, c_side, c_sample,
                         c_sample_depth, c_seed, c_max_nodes, c_show);
    });

    // systems
    auto* sy_cmd = app.add_subcommand("systems", "built-in proof systems");
    sy_cmd->require_subcommand(1);
    auto* sl_cmd = sy_cmd->add_subcommand("list", "list the built-in systems");
    sl_cmd->callback([&] { rc = cmd_systems_list(); });
    std::string ss_id;
    auto* ss_cmd = sy_cmd->add_subcommand("show", "print one system");
    ss_cmd->add_option("id", ss_id, "system id")->required();
    ss_cmd->callback([&] { rc = cmd_systems_show(ss_id); });

    // corpus
    auto* co_cmd = app.add_subcommand("corpus", "built-in corpus");
    co_cmd->require_subcommand(1);
    std::string ce_dir = "corpus";
    auto* ce_cmd = co_cmd->add_subcommand("export", "write all entries as files");
    ce_cmd->add_option("--dir", ce_dir, "target directory");
    ce_cmd->callback([&] { rc = cmd_corpus_export(ce_dir); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const CmdError& e) {
        std::cerr << "error: " << e.msg << "\n";
        return e.code;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " (at offset " << e.position << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
