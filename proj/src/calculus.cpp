// Proof systems and rule schemas, derivation verification for the linear and
// tree shapes, expansion of derived and chained steps into primitive rule
// applications, analytic multiple-conclusion search, and bounded
// single-conclusion forward search.
#include "wk/calculus.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace wk {

namespace {

std::string trim_copy(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

int to_int(const std::string& s, const char* what) {
    std::string t = trim_copy(s);
    if (t.empty()) throw std::runtime_error(std::string(what) + ": missing number");
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(t, &used);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string(what) + ": bad number '" + t + "'");
    }
    if (used != t.size())
        throw std::runtime_error(std::string(what) + ": bad number '" + t + "'");
    return value;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(trim_copy(s.substr(pos)));
            break;
        }
        out.push_back(trim_copy(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

} // namespace

// --------------------------------------------------------------- basic types

std::string kind_name(SystemKind k) {
    return k == SystemKind::SetSet ? "setset" : "setfmla";
}

std::set<std::string> RuleSchema::schema_variables() const {
    std::set<std::string> vars;
    for (const Formula& f : antecedent) {
        auto v = f.variables();
        vars.insert(v.begin(), v.end());
    }
    for (const Formula& f : succedent) {
        auto v = f.variables();
        vars.insert(v.begin(), v.end());
    }
    return vars;
}

Justification Justification::premise() {
    Justification j;
    j.kind = Kind::Premise;
    return j;
}

Justification Justification::rule(std::string name, std::vector<int> refs, Substitution s) {
    Justification j;
    j.kind = Kind::Rule;
    j.rules = {std::move(name)};
    j.refs = std::move(refs);
    j.substs = {std::move(s)};
    return j;
}

Justification Justification::derived(std::string name, std::vector<int> refs, Substitution s) {
    Justification j = rule(std::move(name), std::move(refs), std::move(s));
    j.kind = Kind::Derived;
    return j;
}

Justification Justification::chain(std::vector<std::string> names, std::vector<int> refs,
                                   std::vector<Substitution> substs) {
    Justification j;
    j.kind = Kind::Chain;
    j.rules = std::move(names);
    j.refs = std::move(refs);
    j.substs = std::move(substs);
    return j;
}

int LinearDerivation::conclusion_index() const {
    if (qed > 0) return qed;
    return static_cast<int>(steps.size());
}

const Formula& LinearDerivation::conclusion() const {
    return steps.at(static_cast<std::size_t>(conclusion_index()) - 1).formula;
}

FormulaSet LinearDerivation::premises() const {
    FormulaSet out;
    for (const Step& s : steps)
        if (s.just.kind == Justification::Kind::Premise) out.insert(s.formula);
    return out;
}

std::shared_ptr<TreeNode> TreeNode::close(Formula with) {
    auto n = std::make_shared<TreeNode>();
    n->kind = Kind::Close;
    n->close_with = std::move(with);
    return n;
}

std::shared_ptr<TreeNode> TreeNode::discontinue(std::string rule, Substitution s) {
    auto n = std::make_shared<TreeNode>();
    n->kind = Kind::Apply;
    n->rule = std::move(rule);
    n->subst = std::move(s);
    n->star = true;
    return n;
}

std::shared_ptr<TreeNode> TreeNode::apply(
    std::string rule, Substitution s,
    std::vector<std::pair<Formula, std::shared_ptr<TreeNode>>> branches) {
    auto n = std::make_shared<TreeNode>();
    n->kind = Kind::Apply;
    n->rule = std::move(rule);
    n->subst = std::move(s);
    n->branches = std::move(branches);
    return n;
}

const RuleSchema* HSystem::find_rule(const std::string& name) const {
    for (const RuleSchema& r : rules)
        if (r.name == name) return &r;
    return nullptr;
}

const DerivedRule* HSystem::find_derived(const std::string& name) const {
    for (const auto& entry : derived)
        if (entry.first == name) return &entry.second;
    return nullptr;
}

std::set<std::string> HSystem::all_variables() const {
    std::set<std::string> vars;
    for (const RuleSchema& r : rules) {
        auto v = r.schema_variables();
        vars.insert(v.begin(), v.end());
    }
    for (const auto& entry : derived) {
        auto v = entry.second.schema.schema_variables();
        vars.insert(v.begin(), v.end());
    }
    return vars;
}

void HSystem::register_derived(const std::string& name, DerivedRule rule) {
    if (find_rule(name) || find_derived(name))
        throw std::runtime_error("register_derived: name '" + name + "' already in use");
    if (rule.schema.succedent.size() != 1)
        throw std::runtime_error("register_derived: '" + name + "' needs a single succedent formula");
    rule.schema.name = name;
    rule.schema.kind = SystemKind::SetFmla;
    Statement claim;
    claim.antecedent.insert(rule.schema.antecedent.begin(), rule.schema.antecedent.end());
    claim.succedent.insert(rule.schema.succedent[0]);
    VerifyResult v = verify_derivation(*this, rule.body, claim);
    if (!v.accepted)
        throw std::runtime_error("register_derived: template for '" + name + "' rejected at " +
                                 v.location + " (" + v.reason + "): " + v.detail);
    derived.emplace_back(name, std::move(rule));
}

// ------------------------------------------------------------ system file IO

namespace {

std::string render_side(const std::vector<Formula>& side) {
    if (side.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < side.size(); ++i) {
        if (i) out += ", ";
        out += side[i].text();
    }
    return out;
}

std::vector<Formula> parse_rule_side(const std::string& text, const Signature& sig) {
    std::string t = trim_copy(text);
    if (t == "-" || t.empty()) return {};
    return parse_formula_list(t, sig, false);
}

} // namespace

std::string serialize_system(const HSystem& sys) {
    std::ostringstream os;
    os << "system " << sys.name << " " << kind_name(sys.kind) << "\n";
    for (const RuleSchema& r : sys.rules)
        os << "rule " << r.name << " : " << render_side(r.antecedent) << " |- "
           << render_side(r.succedent) << "\n";
    return os.str();
}

HSystem parse_system(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    HSystem sys;
    bool header = false;
    const Signature sig = Signature::and_or_imp_not();
    while (std::getline(is, line)) {
        std::string t = trim_copy(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ls(t);
        std::string kw;
        ls >> kw;
        if (!header) {
            if (kw != "system")
                throw std::runtime_error("system file: expected 'system NAME setset|setfmla'");
            std::string kind;
            ls >> sys.name >> kind;
            if (sys.name.empty())
                throw std::runtime_error("system file: missing system name");
            if (kind == "setset")
                sys.kind = SystemKind::SetSet;
            else if (kind == "setfmla")
                sys.kind = SystemKind::SetFmla;
            else
                throw std::runtime_error("system file: unknown kind '" + kind + "'");
            header = true;
            continue;
        }
        if (kw != "rule")
            throw std::runtime_error("system file: expected 'rule', got '" + kw + "'");
        std::string name, colon;
        ls >> name >> colon;
        if (name.empty() || colon != ":")
            throw std::runtime_error("system file: malformed rule line '" + t + "'");
        std::string rest;
        std::getline(ls, rest);
        std::size_t bar = rest.find("|-");
        if (bar == std::string::npos)
            throw std::runtime_error("system file: rule '" + name + "' lacks '|-'");
        RuleSchema r;
        r.name = name;
        r.kind = sys.kind;
        r.antecedent = parse_rule_side(rest.substr(0, bar), sig);
        r.succedent = parse_rule_side(rest.substr(bar + 2), sig);
        FormulaSet ant(r.antecedent.begin(), r.antecedent.end());
        FormulaSet suc(r.succedent.begin(), r.succedent.end());
        if (ant.size() != r.antecedent.size() || suc.size() != r.succedent.size())
            throw std::runtime_error("system file: rule '" + name + "' repeats a side formula");
        if (sys.kind == SystemKind::SetFmla && r.succedent.size() != 1)
            throw std::runtime_error("system file: rule '" + name +
                                     "' must have exactly one succedent formula");
        if (sys.find_rule(name))
            throw std::runtime_error("system file: duplicate rule name '" + name + "'");
        sys.rules.push_back(std::move(r));
    }
    if (!header) throw std::runtime_error("system file: missing 'system' header");
    return sys;
}

// ------------------------------------------------------------------ checking

EntailmentVerdict rule_sound(const Matrix& m, const RuleSchema& r) {
    FormulaSet ant(r.antecedent.begin(), r.antecedent.end());
    FormulaSet suc(r.succedent.begin(), r.succedent.end());
    return consequence_holds(m, ant, suc);
}

VerifyResult VerifyResult::fail(std::string loc, std::string code, std::string detail) {
    VerifyResult v;
    v.accepted = false;
    v.location = std::move(loc);
    v.reason = std::move(code);
    v.detail = std::move(detail);
    return v;
}

// ----------------------------------------------------------------- expansion

namespace {

struct ExpandError {
    int orig_step = 0;
    std::string code;
    std::string detail;
};

// A positional image check produced by a derived-rule application: the
// referenced expanded step must carry the given antecedent image.
struct Obligation {
    int orig_step = 0;
    int ref = 0; // 1-based index into the expanded steps
    Formula expected;
    std::string code;
};

struct Expansion {
    std::vector<Step> steps;  // primitive steps only (premises and rule apps)
    std::vector<int> origin;  // original step index, per expanded step
    std::map<int, int> final_of; // original index -> expanded index of its output
    std::vector<Obligation> obligations;
    std::vector<std::pair<int, Formula>> declared; // (expanded index, stated formula)
    std::optional<ExpandError> error;
};

class Expander {
public:
    explicit Expander(const HSystem& sys) : sys_(sys) {}

    bool run(const LinearDerivation& d, Expansion& out) {
        out_ = &out;
        int expected = 1;
        for (const Step& st : d.steps) {
            orig_ = st.index;
            if (st.index != expected++)
                return fail("step-numbering", "steps must be numbered consecutively from 1");
            std::vector<int> mapped;
            if (st.just.kind != Justification::Kind::Premise) {
                for (int r : st.just.refs) {
                    if (r < 1 || r >= st.index)
                        return fail("bad-reference", "reference " + std::to_string(r) +
                                                         " does not point to an earlier step");
                    mapped.push_back(out.final_of.at(r));
                }
            }
            int idx = 0;
            switch (st.just.kind) {
            case Justification::Kind::Premise:
                if (!st.formula.valid())
                    return fail("missing-formula", "premise step lacks its formula");
                idx = push(st.formula, Justification::premise());
                break;
            case Justification::Kind::Rule:
            case Justification::Kind::Derived:
                if (st.just.rules.size() != 1 || st.just.substs.size() != 1)
                    return fail("malformed-justification",
                                "rule step needs one rule name and one substitution");
                idx = apply_name(st.just.rules[0], mapped, st.just.substs[0]);
                break;
            case Justification::Kind::Chain:
                idx = apply_chain(st.just.rules, mapped, st.just.substs);
                break;
            }
            if (idx == 0) return false;
            out.final_of[st.index] = idx;
            if (st.just.kind != Justification::Kind::Premise && st.formula.valid())
                out.declared.emplace_back(idx, st.formula);
        }
        return true;
    }

private:
    const HSystem& sys_;
    Expansion* out_ = nullptr;
    int orig_ = 0;

    bool fail(std::string code, std::string detail) {
        if (!out_->error) out_->error = ExpandError{orig_, std::move(code), std::move(detail)};
        return false;
    }

    int push(Formula f, Justification j) {
        Step s;
        s.index = static_cast<int>(out_->steps.size()) + 1;
        s.formula = std::move(f);
        s.just = std::move(j);
        out_->steps.push_back(std::move(s));
        out_->origin.push_back(orig_);
        return static_cast<int>(out_->steps.size());
    }

    bool check_domain(const RuleSchema& schema, const Substitution& s) {
        std::set<std::string> vars = schema.schema_variables();
        for (const std::string& v : vars)
            if (!s.count(v))
                return fail("substitution-domain",
                            schema.name + ": no image for schema variable " + v);
        for (const auto& entry : s)
            if (!vars.count(entry.first))
                return fail("substitution-domain",
                            schema.name + ": extraneous variable " + entry.first);
        return true;
    }

    int apply_name(const std::string& name, const std::vector<int>& refs, const Substitution& s) {
        if (const RuleSchema* r = sys_.find_rule(name)) {
            if (r->succedent.size() != 1) {
                fail("rule-shape", name + " is not single-succedent");
                return 0;
            }
            if (refs.size() != r->antecedent.size()) {
                fail("reference-count", name + " takes " + std::to_string(r->antecedent.size()) +
                                            " references, got " + std::to_string(refs.size()));
                return 0;
            }
            if (!check_domain(*r, s)) return 0;
            return push(substitute(r->succedent[0], s), Justification::rule(name, refs, s));
        }
        if (const DerivedRule* dr = sys_.find_derived(name)) return apply_derived(*dr, refs, s);
        fail("unknown-rule", name);
        return 0;
    }

    int apply_derived(const DerivedRule& dr, const std::vector<int>& refs, const Substitution& s) {
        const RuleSchema& sch = dr.schema;
        if (refs.size() != sch.antecedent.size()) {
            fail("reference-count", sch.name + " takes " + std::to_string(sch.antecedent.size()) +
                                        " references, got " + std::to_string(refs.size()));
            return 0;
        }
        if (!check_domain(sch, s)) return 0;
        for (std::size_t i = 0; i < refs.size(); ++i)
            out_->obligations.push_back(
                {orig_, refs[i], substitute(sch.antecedent[i], s), "antecedent-mismatch"});
        std::map<int, int> tmap;
        for (const Step& t : dr.body.steps) {
            if (t.just.kind == Justification::Kind::Premise) {
                auto it = std::find(sch.antecedent.begin(), sch.antecedent.end(), t.formula);
                if (it == sch.antecedent.end()) {
                    fail("template-premise", sch.name + ": template premise " + t.formula.text() +
                                                 " is not a schema antecedent");
                    return 0;
                }
                tmap[t.index] = refs[static_cast<std::size_t>(it - sch.antecedent.begin())];
                continue;
            }
            std::vector<int> nrefs;
            for (int r : t.just.refs) nrefs.push_back(tmap.at(r));
            std::vector<Substitution> nsubsts;
            for (const Substitution& tau : t.just.substs) {
                Substitution composed;
                for (const auto& entry : tau)
                    composed[entry.first] = substitute(entry.second, s);
                nsubsts.push_back(std::move(composed));
            }
            int idx = 0;
            if (t.just.kind == Justification::Kind::Chain)
                idx = apply_chain(t.just.rules, nrefs, nsubsts);
            else
                idx = apply_name(t.just.rules[0], nrefs, nsubsts[0]);
            if (idx == 0) return 0;
            tmap[t.index] = idx;
        }
        return tmap.at(dr.body.conclusion_index());
    }

    int apply_chain(const std::vector<std::string>& names, const std::vector<int>& refs,
                    const std::vector<Substitution>& substs) {
        if (names.empty()) {
            fail("chain-empty", "chain step names no rules");
            return 0;
        }
        if (substs.size() != names.size()) {
            fail("chain-substitutions", "chain needs one substitution per rule");
            return 0;
        }
        int cur = apply_name(names[0], refs, substs[0]);
        if (cur == 0) return 0;
        for (std::size_t i = 1; i < names.size(); ++i) {
            cur = apply_name(names[i], {cur}, substs[i]);
            if (cur == 0) return 0;
        }
        return cur;
    }
};

} // namespace

LinearDerivation expand_derived(const HSystem& sys, const LinearDerivation& d) {
    if (d.steps.empty()) return d;
    Expansion ex;
    Expander e(sys);
    if (!e.run(d, ex)) {
        const ExpandError& err = *ex.error;
        throw std::runtime_error("expand_derived: step " + std::to_string(err.orig_step) + ": " +
                                 err.code + ": " + err.detail);
    }
    LinearDerivation out;
    out.steps = std::move(ex.steps);
    out.qed = ex.final_of.at(d.conclusion_index());
    return out;
}

// -------------------------------------------------------------- verification

VerifyResult verify_derivation(const HSystem& sys, const LinearDerivation& d,
                               const Statement& claim) {
    if (sys.kind != SystemKind::SetFmla)
        return VerifyResult::fail("derivation", "kind-mismatch",
                                  "linear derivations require a single-conclusion system");
    if (claim.succedent.size() != 1)
        return VerifyResult::fail("claim", "claim-shape",
                                  "the claim needs exactly one succedent formula");
    if (d.steps.empty())
        return VerifyResult::fail("derivation", "empty-derivation", "no steps");
    if (d.qed < 0 || d.qed > static_cast<int>(d.steps.size()))
        return VerifyResult::fail("derivation", "bad-qed", "qed index out of range");

    Expansion ex;
    Expander e(sys);
    if (!e.run(d, ex)) {
        const ExpandError& err = *ex.error;
        std::string loc = err.orig_step > 0 ? "step " + std::to_string(err.orig_step) : "derivation";
        return VerifyResult::fail(loc, err.code, err.detail);
    }

    for (std::size_t i = 0; i < ex.steps.size(); ++i) {
        const Step& st = ex.steps[i];
        const std::string loc = "step " + std::to_string(ex.origin[i]);
        if (st.just.kind == Justification::Kind::Premise) {
            if (!claim.antecedent.count(st.formula))
                return VerifyResult::fail(loc, "premise-not-in-claim",
                                          st.formula.text() + " is not a claimed premise");
            continue;
        }
        const RuleSchema* r = sys.find_rule(st.just.rules[0]);
        if (!r) return VerifyResult::fail(loc, "unknown-rule", st.just.rules[0]);
        const Substitution& s = st.just.substs[0];
        std::vector<Formula> want, got;
        bool positional = true;
        for (std::size_t j = 0; j < r->antecedent.size(); ++j) {
            Formula img = substitute(r->antecedent[j], s);
            const Formula& ref = ex.steps[static_cast<std::size_t>(st.just.refs[j]) - 1].formula;
            if (!(img == ref)) positional = false;
            want.push_back(std::move(img));
            got.push_back(ref);
        }
        if (!positional) {
            std::sort(want.begin(), want.end());
            std::sort(got.begin(), got.end());
            if (want != got)
                return VerifyResult::fail(loc, "antecedent-mismatch",
                                          "references do not instantiate the antecedent of " +
                                              r->name);
        }
    }

    for (const Obligation& ob : ex.obligations) {
        const Formula& have = ex.steps[static_cast<std::size_t>(ob.ref) - 1].formula;
        if (!(have == ob.expected))
            return VerifyResult::fail("step " + std::to_string(ob.orig_step), ob.code,
                                      "reference carries " + have.text() + " rather than " +
                                          ob.expected.text());
    }
    for (const auto& entry : ex.declared) {
        const Formula& actual = ex.steps[static_cast<std::size_t>(entry.first) - 1].formula;
        if (!(actual == entry.second))
            return VerifyResult::fail(
                "step " + std::to_string(ex.origin[static_cast<std::size_t>(entry.first) - 1]),
                "formula-mismatch",
                "stated " + entry.second.text() + " but the rules yield " + actual.text());
    }

    int cidx = ex.final_of.at(d.conclusion_index());
    const Formula& concl = ex.steps[static_cast<std::size_t>(cidx) - 1].formula;
    if (!(concl == *claim.succedent.begin()))
        return VerifyResult::fail("step " + std::to_string(d.conclusion_index()),
                                  "conclusion-mismatch",
                                  "derivation concludes " + concl.text() + " rather than " +
                                      claim.succedent.begin()->text());
    return VerifyResult::ok();
}

namespace {

VerifyResult check_tree_node(const HSystem& sys, const Statement& claim, const TreeNode& node,
                             const FormulaSet& label, const std::string& path) {
    if (node.kind == TreeNode::Kind::Close) {
        if (!label.count(node.close_with))
            return VerifyResult::fail(path, "close-not-in-label",
                                      node.close_with.text() + " is not on this branch");
        if (!claim.succedent.count(node.close_with))
            return VerifyResult::fail(path, "close-not-in-succedent",
                                      node.close_with.text() + " is not a claimed conclusion");
        return VerifyResult::ok();
    }
    const RuleSchema* r = sys.find_rule(node.rule);
    if (!r) return VerifyResult::fail(path, "unknown-rule", node.rule);
    std::set<std::string> vars = r->schema_variables();
    for (const std::string& v : vars)
        if (!node.subst.count(v))
            return VerifyResult::fail(path, "substitution-domain",
                                      node.rule + ": no image for schema variable " + v);
    for (const auto& entry : node.subst)
        if (!vars.count(entry.first))
            return VerifyResult::fail(path, "substitution-domain",
                                      node.rule + ": extraneous variable " + entry.first);
    for (const Formula& a : r->antecedent) {
        Formula img = substitute(a, node.subst);
        if (!label.count(img))
            return VerifyResult::fail(path, "antecedent-not-in-label",
                                      img.text() + " is not on this branch");
    }
    if (r->succedent.empty()) {
        if (!node.star || !node.branches.empty())
            return VerifyResult::fail(path, "missing-star",
                                      node.rule + " discontinues the branch; expected a star");
        return VerifyResult::ok();
    }
    if (node.star)
        return VerifyResult::fail(path, "star-nonempty-succedent",
                                  node.rule + " has succedent formulas and cannot star");
    if (node.branches.size() != r->succedent.size())
        return VerifyResult::fail(path, "branch-count",
                                  node.rule + " opens " + std::to_string(r->succedent.size()) +
                                      " branches, found " + std::to_string(node.branches.size()));
    for (std::size_t i = 0; i < node.branches.size(); ++i) {
        Formula expect = substitute(r->succedent[i], node.subst);
        if (!(node.branches[i].first == expect))
            return VerifyResult::fail(path, "branch-formula-mismatch",
                                      "branch " + std::to_string(i + 1) + " carries " +
                                          node.branches[i].first.text() + " rather than " +
                                          expect.text());
        if (!node.branches[i].second)
            return VerifyResult::fail(path, "missing-node",
                                      "branch " + std::to_string(i + 1) + " has no subtree");
        FormulaSet child = label;
        child.insert(expect);
        VerifyResult v = check_tree_node(sys, claim, *node.branches[i].second, child,
                                         path + "." + std::to_string(i + 1));
        if (!v.accepted) return v;
    }
    return VerifyResult::ok();
}

} // namespace

VerifyResult verify_derivation(const HSystem& sys, const TreeDerivation& d,
                               const Statement& claim) {
    if (sys.kind != SystemKind::SetSet)
        return VerifyResult::fail("derivation", "kind-mismatch",
                                  "tree derivations require a multiple-conclusion system");
    for (const Formula& f : d.root_label)
        if (!claim.antecedent.count(f))
            return VerifyResult::fail("root", "premise-not-in-claim",
                                      f.text() + " is not a claimed premise");
    if (!d.root) return VerifyResult::fail("root", "missing-node", "tree has no root");
    FormulaSet label(d.root_label.begin(), d.root_label.end());
    return check_tree_node(sys, claim, *d.root, label, "node 1");
}

// -------------------------------------------------------------------- search

std::vector<Formula> SearchConfig::effective_theta() const {
    if (!theta.empty()) return theta;
    Formula x = Formula::variable("x");
    return {x, Formula::apply("~", {x})};
}

namespace {

struct Instance {
    std::size_t rule_index = 0;
    const RuleSchema* rule = nullptr;
    Substitution subst;
    std::vector<Formula> ant;
    std::vector<Formula> suc;
};

void enumerate_matches(const std::vector<Formula>& patterns, std::size_t k,
                       const std::vector<Formula>& universe, const Substitution& s,
                       std::set<Substitution>& out) {
    if (k == patterns.size()) {
        out.insert(s);
        return;
    }
    for (const Formula& u : universe) {
        Substitution trial = s;
        if (match_schema_into(patterns[k], u, trial))
            enumerate_matches(patterns, k + 1, universe, trial, out);
    }
}

bool all_in(const std::vector<Formula>& v, const FormulaSet& s) {
    for (const Formula& f : v)
        if (!s.count(f)) return false;
    return true;
}

// Label-space search over the instance lists. Labels are saturated with
// single-succedent instances before branching; failed saturated labels are
// memoized, and proved ones share their subtree.
struct AnalyticSearch {
    const std::vector<Instance>& closers;
    const std::vector<Instance>& extenders;
    const std::vector<Instance>& branchers;
    const FormulaSet& delta;
    long budget;

    long nodes = 0;
    bool out_of_budget = false;
    std::set<FormulaSet> failed;
    std::map<FormulaSet, std::shared_ptr<TreeNode>> proved;

    std::shared_ptr<TreeNode> search(const FormulaSet& label) {
        if (out_of_budget) return nullptr;
        if (++nodes > budget) {
            out_of_budget = true;
            return nullptr;
        }
        for (const Formula& d : delta)
            if (label.count(d)) return TreeNode::close(d);
        for (const Instance& c : closers)
            if (all_in(c.ant, label)) return TreeNode::discontinue(c.rule->name, c.subst);
        for (const Instance& e : extenders) {
            if (label.count(e.suc[0]) || !all_in(e.ant, label)) continue;
            FormulaSet child = label;
            child.insert(e.suc[0]);
            auto ch = search(child);
            if (!ch) return nullptr;
            return TreeNode::apply(e.rule->name, e.subst, {{e.suc[0], std::move(ch)}});
        }
        auto hit = proved.find(label);
        if (hit != proved.end()) return hit->second;
        if (failed.count(label)) return nullptr;
        for (const Instance& b : branchers) {
            if (!all_in(b.ant, label)) continue;
            bool fresh = true;
            for (const Formula& s : b.suc)
                if (label.count(s)) {
                    fresh = false;
                    break;
                }
            if (!fresh) continue;
            std::vector<std::pair<Formula, std::shared_ptr<TreeNode>>> branches;
            bool ok = true;
            for (const Formula& s : b.suc) {
                FormulaSet child = label;
                child.insert(s);
                auto ch = search(child);
                if (!ch) {
                    ok = false;
                    break;
                }
                branches.emplace_back(s, std::move(ch));
            }
            if (out_of_budget) return nullptr;
            if (ok) {
                auto node = TreeNode::apply(b.rule->name, b.subst, std::move(branches));
                proved.emplace(label, node);
                return node;
            }
        }
        if (!out_of_budget) failed.insert(label);
        return nullptr;
    }
};

} // namespace

TreeSearchResult prove_setset_analytic(const HSystem& sys, const Statement& claim,
                                       const SearchConfig& cfg) {
    if (sys.kind != SystemKind::SetSet)
        throw std::invalid_argument("prove_setset_analytic: system is single-conclusion");
    FormulaSet uni = cfg.universe
                         ? *cfg.universe
                         : theta_subformulas(claim.antecedent, claim.succedent,
                                             cfg.effective_theta());
    std::vector<Formula> uni_vec(uni.begin(), uni.end());

    std::vector<Instance> closers, extenders, branchers;
    for (std::size_t ri = 0; ri < sys.rules.size(); ++ri) {
        const RuleSchema& r = sys.rules[ri];
        std::vector<Formula> patterns = r.antecedent;
        patterns.insert(patterns.end(), r.succedent.begin(), r.succedent.end());
        std::set<Substitution> subs;
        enumerate_matches(patterns, 0, uni_vec, Substitution{}, subs);
        for (const Substitution& s : subs) {
            Instance in;
            in.rule_index = ri;
            in.rule = &r;
            in.subst = s;
            for (const Formula& a : r.antecedent) in.ant.push_back(substitute(a, s));
            for (const Formula& g : r.succedent) in.suc.push_back(substitute(g, s));
            if (in.suc.empty())
                closers.push_back(std::move(in));
            else if (in.suc.size() == 1)
                extenders.push_back(std::move(in));
            else
                branchers.push_back(std::move(in));
        }
    }

    AnalyticSearch as{closers, extenders, branchers, claim.succedent, cfg.max_nodes,
                      0,       false,     {},        {}};
    auto root = as.search(claim.antecedent);
    TreeSearchResult res;
    res.nodes = as.nodes;
    if (root) {
        res.outcome = SearchOutcome::Proved;
        TreeDerivation t;
        t.root_label.assign(claim.antecedent.begin(), claim.antecedent.end());
        t.root = std::move(root);
        res.proof = std::move(t);
    } else {
        res.outcome = as.out_of_budget ? SearchOutcome::BudgetExhausted : SearchOutcome::NoProof;
    }
    return res;
}

namespace {

bool formula_mentions(const Formula& f, const std::string& conn) {
    if (f.is_variable()) return false;
    if (f.head() == conn) return true;
    for (const Formula& a : f.args())
        if (formula_mentions(a, conn)) return true;
    return false;
}

} // namespace

LinearSearchResult prove_setfmla_bounded(const HSystem& sys, const Statement& claim,
                                         const SearchConfig& cfg) {
    if (sys.kind != SystemKind::SetFmla)
        throw std::invalid_argument("prove_setfmla_bounded: system is multiple-conclusion");
    if (claim.succedent.size() != 1)
        throw std::invalid_argument("prove_setfmla_bounded: claim needs one succedent formula");
    const Formula goal = *claim.succedent.begin();

    FormulaSet uni;
    if (cfg.universe) {
        uni = *cfg.universe;
    } else {
        FormulaSet base =
            theta_subformulas(claim.antecedent, claim.succedent, cfg.effective_theta());
        uni = base;
        bool wants_or = false;
        for (const RuleSchema& r : sys.rules) {
            for (const Formula& f : r.antecedent)
                if (formula_mentions(f, "|")) wants_or = true;
            for (const Formula& f : r.succedent)
                if (formula_mentions(f, "|")) wants_or = true;
            if (wants_or) break;
        }
        if (wants_or) {
            std::size_t cap = std::max(cfg.universe_cap, base.size());
            bool full = false;
            for (const Formula& a : base) {
                if (full) break;
                for (const Formula& b : base) {
                    if (uni.size() >= cap) {
                        full = true;
                        break;
                    }
                    uni.insert(Formula::apply("|", {a, b}));
                }
            }
        }
    }

    std::vector<Step> steps;
    std::vector<Formula> order;     // distinct derived formulas, first-derivation order
    std::map<Formula, int> first_at; // formula -> index of its first step

    bool found = false;
    bool budget_hit = false;
    bool stop = false;

    auto add_step = [&](const Formula& f, Justification j) {
        if (first_at.count(f)) return;
        if (static_cast<long>(steps.size()) >= cfg.max_steps) {
            budget_hit = true;
            stop = true;
            return;
        }
        Step s;
        s.index = static_cast<int>(steps.size()) + 1;
        s.formula = f;
        s.just = std::move(j);
        steps.push_back(std::move(s));
        first_at[f] = static_cast<int>(steps.size());
        order.push_back(f);
        if (f == goal) {
            found = true;
            stop = true;
        }
    };

    for (const Formula& g : claim.antecedent) {
        add_step(g, Justification::premise());
        if (stop) break;
    }

    while (!stop) {
        bool changed = false;
        const std::size_t frontier = order.size();
        for (const RuleSchema& r : sys.rules) {
            if (stop) break;
            std::vector<int> refs;
            std::function<void(std::size_t, const Substitution&)> walk =
                [&](std::size_t k, const Substitution& s) {
                    if (stop) return;
                    if (k == r.antecedent.size()) {
                        const Formula& sp = r.succedent[0];
                        bool complete = true;
                        for (const std::string& v : sp.variables())
                            if (!s.count(v)) {
                                complete = false;
                                break;
                            }
                        if (complete) {
                            Formula img = substitute(sp, s);
                            if (uni.count(img) && !first_at.count(img)) {
                                add_step(img, Justification::rule(r.name, refs, s));
                                changed = true;
                            }
                            return;
                        }
                        for (const Formula& u : uni) {
                            if (stop) return;
                            Substitution t = s;
                            if (!match_schema_into(sp, u, t)) continue;
                            if (!first_at.count(u)) {
                                add_step(u, Justification::rule(r.name, refs, t));
                                changed = true;
                            }
                        }
                        return;
                    }
                    for (std::size_t gi = 0; gi < frontier; ++gi) {
                        if (stop) return;
                        Substitution t = s;
                        if (!match_schema_into(r.antecedent[k], order[gi], t)) continue;
                        refs.push_back(first_at.at(order[gi]));
                        walk(k + 1, t);
                        refs.pop_back();
                    }
                };
            walk(0, Substitution{});
        }
        if (!changed) break;
    }

    LinearSearchResult res;
    res.steps = static_cast<long>(steps.size());
    if (!found) {
        res.outcome = budget_hit ? SearchOutcome::BudgetExhausted : SearchOutcome::NoProof;
        return res;
    }

    // Prune to the steps the conclusion actually uses, then renumber.
    int goal_idx = first_at.at(goal);
    std::set<int> keep;
    std::vector<int> pending{goal_idx};
    while (!pending.empty()) {
        int i = pending.back();
        pending.pop_back();
        if (!keep.insert(i).second) continue;
        for (int ref : steps[static_cast<std::size_t>(i) - 1].just.refs) pending.push_back(ref);
    }
    LinearDerivation out;
    std::map<int, int> remap;
    for (std::size_t i = 1; i <= steps.size(); ++i) {
        if (!keep.count(static_cast<int>(i))) continue;
        Step s = steps[i - 1];
        s.index = static_cast<int>(out.steps.size()) + 1;
        for (int& ref : s.just.refs) ref = remap.at(ref);
        remap[static_cast<int>(i)] = s.index;
        out.steps.push_back(std::move(s));
    }
    out.qed = remap.at(goal_idx);
    res.outcome = SearchOutcome::Proved;
    res.proof = std::move(out);
    return res;
}

// ------------------------------------------------------------- file formats

std::string render_statement(const Statement& s) {
    auto side = [](const FormulaSet& fs) {
        if (fs.empty()) return std::string("-");
        std::string out;
        bool first = true;
        for (const Formula& f : fs) {
            if (!first) out += ", ";
            out += f.text();
            first = false;
        }
        return out;
    };
    return side(s.antecedent) + " |- " + side(s.succedent);
}

std::string render_substitution(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& entry : s) {
        if (!first) out += ", ";
        out += entry.first + " := " + entry.second.text();
        first = false;
    }
    out += "}";
    return out;
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        ws();
        return i >= s.size();
    }
    bool peek(char c) {
        ws();
        return i < s.size() && s[i] == c;
    }
    void expect(char c, const char* what) {
        ws();
        if (i >= s.size() || s[i] != c)
            throw std::runtime_error(std::string("derivation file: expected '") + c + "' " + what);
        ++i;
    }
    std::string word() {
        ws();
        std::size_t b = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        return s.substr(b, i - b);
    }
    bool eat_word(const std::string& w) {
        ws();
        std::size_t save = i;
        if (word() == w) return true;
        i = save;
        return false;
    }
    // Raw text up to (not consuming) the stop character; trailing space trimmed.
    std::string until(char stop) {
        ws();
        std::size_t b = i;
        while (i < s.size() && s[i] != stop) ++i;
        std::string out = s.substr(b, i - b);
        while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back())))
            out.pop_back();
        return out;
    }
};

Substitution parse_subst_body(const std::string& text, const Signature& sig) {
    Substitution out;
    std::string t = trim_copy(text);
    if (t.empty()) return out;
    for (const std::string& entry : split_commas(t)) {
        if (entry.empty())
            throw std::runtime_error("derivation file: empty substitution entry");
        std::size_t as = entry.find(":=");
        if (as == std::string::npos)
            throw std::runtime_error("derivation file: substitution entry '" + entry +
                                     "' lacks ':='");
        std::string var = trim_copy(entry.substr(0, as));
        std::string ft = trim_copy(entry.substr(as + 2));
        if (var.empty() || ft.empty())
            throw std::runtime_error("derivation file: malformed substitution entry '" + entry +
                                     "'");
        if (!out.emplace(var, parse_formula(ft, sig, true)).second)
            throw std::runtime_error("derivation file: variable '" + var +
                                     "' substituted twice");
    }
    return out;
}

FormulaSet parse_claim_side(const std::string& side, const Signature& sig) {
    std::string t = trim_copy(side);
    if (t == "-" || t.empty()) return {};
    auto v = parse_formula_list(t, sig, true);
    return FormulaSet(v.begin(), v.end());
}

Statement parse_statement_text(const std::string& text, const Signature& sig) {
    std::size_t bar = text.find("|-");
    if (bar == std::string::npos)
        throw std::runtime_error("derivation file: claim lacks '|-'");
    Statement st;
    st.antecedent = parse_claim_side(text.substr(0, bar), sig);
    st.succedent = parse_claim_side(text.substr(bar + 2), sig);
    return st;
}

Step parse_step_line(const std::string& body_text, int index, const Signature& sig) {
    Step st;
    st.index = index;
    std::string body = trim_copy(body_text);
    if (body.rfind("premise", 0) == 0 &&
        (body.size() == 7 || std::isspace(static_cast<unsigned char>(body[7])))) {
        st.formula = parse_formula(trim_copy(body.substr(7)), sig, true);
        st.just = Justification::premise();
        return st;
    }
    Cursor c{body, 0};
    std::string name = c.word();
    if (name.empty())
        throw std::runtime_error("derivation file: step " + std::to_string(index) +
                                 " lacks a rule name");
    std::vector<std::string> names;
    bool is_chain = (name == "chain");
    if (is_chain) {
        for (const std::string& n : split_commas(c.until('['))) {
            if (n.empty())
                throw std::runtime_error("derivation file: step " + std::to_string(index) +
                                         " has an empty chain entry");
            names.push_back(n);
        }
    } else {
        names.push_back(name);
    }
    c.expect('[', "before the references");
    std::string refs_text = c.until(']');
    c.expect(']', "after the references");
    std::vector<int> refs;
    if (!trim_copy(refs_text).empty())
        for (const std::string& rt : split_commas(refs_text))
            refs.push_back(to_int(rt, "derivation file: reference"));
    std::vector<Substitution> substs;
    while (c.peek('{')) {
        c.expect('{', "opening the substitution");
        std::string sb = c.until('}');
        c.expect('}', "closing the substitution");
        substs.push_back(parse_subst_body(sb, sig));
    }
    if (substs.size() != names.size())
        throw std::runtime_error("derivation file: step " + std::to_string(index) +
                                 " needs one substitution per rule");
    if (c.peek(':')) {
        c.expect(':', "before the formula");
        std::string rest = trim_copy(body.substr(c.i));
        st.formula = parse_formula(rest, sig, true);
    } else if (!c.done()) {
        throw std::runtime_error("derivation file: step " + std::to_string(index) +
                                 " has trailing content");
    }
    st.just = is_chain ? Justification::chain(std::move(names), std::move(refs),
                                              std::move(substs))
                       : Justification::rule(names[0], std::move(refs), std::move(substs[0]));
    return st;
}

std::shared_ptr<TreeNode> parse_tree_node(Cursor& c, const Signature& sig) {
    if (c.eat_word("close")) {
        std::string f = c.until('}');
        return TreeNode::close(parse_formula(f, sig, true));
    }
    if (!c.eat_word("node"))
        throw std::runtime_error("derivation file: expected 'node' or 'close'");
    c.expect('{', "after 'node'");
    if (!c.eat_word("rule"))
        throw std::runtime_error("derivation file: expected 'rule' inside node");
    std::string name = c.word();
    if (name.empty()) throw std::runtime_error("derivation file: missing rule name");
    c.expect('{', "opening the substitution");
    std::string sb = c.until('}');
    c.expect('}', "closing the substitution");
    Substitution subst = parse_subst_body(sb, sig);
    if (c.peek(';')) c.expect(';', "after the rule clause");
    if (c.eat_word("star")) {
        c.expect('}', "closing the node");
        return TreeNode::discontinue(std::move(name), std::move(subst));
    }
    std::vector<std::pair<Formula, std::shared_ptr<TreeNode>>> branches;
    while (c.eat_word("branch")) {
        std::string ft = c.until('{');
        Formula bf = parse_formula(ft, sig, true);
        c.expect('{', "after the branch formula");
        std::shared_ptr<TreeNode> child;
        if (c.eat_word("close")) {
            std::string cf = c.until('}');
            child = TreeNode::close(parse_formula(cf, sig, true));
        } else {
            child = parse_tree_node(c, sig);
        }
        c.expect('}', "closing the branch");
        branches.emplace_back(std::move(bf), std::move(child));
    }
    if (branches.empty())
        throw std::runtime_error("derivation file: node '" + name +
                                 "' has neither star nor branches");
    c.expect('}', "closing the node");
    return TreeNode::apply(std::move(name), std::move(subst), std::move(branches));
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i]);
    }
    return out;
}

std::string join_names(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i];
    }
    return out;
}

void write_tree_node(std::ostream& os, const TreeNode& n, int indent) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (n.kind == TreeNode::Kind::Close) {
        os << pad << "close " << n.close_with.text() << "\n";
        return;
    }
    os << pad << "node { rule " << n.rule << " " << render_substitution(n.subst) << ";";
    if (n.star) {
        os << " star }\n";
        return;
    }
    os << "\n";
    for (const auto& branch : n.branches) {
        os << pad << "  branch " << branch.first.text() << " {";
        if (branch.second && branch.second->kind == TreeNode::Kind::Close) {
            os << " close " << branch.second->close_with.text() << " }\n";
        } else if (branch.second) {
            os << "\n";
            write_tree_node(os, *branch.second, indent + 4);
            os << pad << "  }\n";
        } else {
            os << " }\n";
        }
    }
    os << pad << "}\n";
}

} // namespace

std::string serialize_derivation(const DerivationDocument& doc, const Signature&) {
    std::ostringstream os;
    os << "system: " << doc.system_id << "\n";
    os << "claim: " << render_statement(doc.claim) << "\n";
    if (doc.kind == SystemKind::SetFmla) {
        if (!doc.linear)
            throw std::invalid_argument("serialize_derivation: missing linear derivation");
        const LinearDerivation& d = *doc.linear;
        for (const Step& st : d.steps) {
            os << st.index << ". ";
            const Justification& j = st.just;
            switch (j.kind) {
            case Justification::Kind::Premise:
                os << "premise " << st.formula.text();
                break;
            case Justification::Kind::Rule:
            case Justification::Kind::Derived:
                os << j.rules[0] << " [" << join_ints(j.refs) << "] "
                   << render_substitution(j.substs[0]);
                if (st.formula.valid()) os << " : " << st.formula.text();
                break;
            case Justification::Kind::Chain:
                os << "chain " << join_names(j.rules) << " [" << join_ints(j.refs) << "]";
                for (const Substitution& s : j.substs) os << " " << render_substitution(s);
                if (st.formula.valid()) os << " : " << st.formula.text();
                break;
            }
            os << "\n";
        }
        os << "qed " << d.conclusion_index() << "\n";
    } else {
        if (!doc.tree || !doc.tree->root)
            throw std::invalid_argument("serialize_derivation: missing tree derivation");
        write_tree_node(os, *doc.tree->root, 0);
    }
    return os.str();
}

DerivationDocument parse_derivation(const std::string& text, const Signature& sig,
                                    SystemKind kind) {
    std::istringstream is(text);
    std::string line;
    DerivationDocument doc;
    doc.kind = kind;
    bool have_system = false, have_claim = false;
    std::vector<std::string> body_lines;
    while (std::getline(is, line)) {
        std::string t = trim_copy(line);
        if (!have_system) {
            if (t.empty()) continue;
            if (t.rfind("system:", 0) != 0)
                throw std::runtime_error("derivation file: first line must be 'system: ID'");
            doc.system_id = trim_copy(t.substr(7));
            have_system = true;
            continue;
        }
        if (!have_claim) {
            if (t.empty()) continue;
            if (t.rfind("claim:", 0) != 0)
                throw std::runtime_error("derivation file: second line must be 'claim: ...'");
            doc.claim = parse_statement_text(trim_copy(t.substr(6)), sig);
            have_claim = true;
            continue;
        }
        body_lines.push_back(line);
    }
    if (!have_system || !have_claim)
        throw std::runtime_error("derivation file: missing the system or claim header");

    if (kind == SystemKind::SetFmla) {
        LinearDerivation d;
        bool saw_qed = false;
        for (const std::string& raw : body_lines) {
            std::string t = trim_copy(raw);
            if (t.empty()) continue;
            if (saw_qed)
                throw std::runtime_error("derivation file: content after the qed line");
            if (t.rfind("qed", 0) == 0 &&
                (t.size() == 3 || std::isspace(static_cast<unsigned char>(t[3])))) {
                d.qed = to_int(t.substr(3), "derivation file: qed");
                saw_qed = true;
                continue;
            }
            std::size_t dot = t.find('.');
            if (dot == std::string::npos)
                throw std::runtime_error("derivation file: step line lacks 'N.': " + t);
            int idx = to_int(t.substr(0, dot), "derivation file: step index");
            if (idx != static_cast<int>(d.steps.size()) + 1)
                throw std::runtime_error("derivation file: steps must be numbered consecutively");
            d.steps.push_back(parse_step_line(t.substr(dot + 1), idx, sig));
        }
        if (d.steps.empty())
            throw std::runtime_error("derivation file: no steps");
        doc.linear = std::move(d);
    } else {
        std::string body;
        for (const std::string& raw : body_lines) {
            body += raw;
            body += '\n';
        }
        Cursor c{body, 0};
        TreeDerivation t;
        t.root = parse_tree_node(c, sig);
        if (!c.done())
            throw std::runtime_error("derivation file: trailing content after the tree");
        t.root_label.assign(doc.claim.antecedent.begin(), doc.claim.antecedent.end());
        doc.tree = std::move(t);
    }
    return doc;
}

std::string peek_derivation_system(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::string t = trim_copy(line);
        if (t.empty()) continue;
        if (t.rfind("system:", 0) != 0) break;
        return trim_copy(t.substr(7));
    }
    throw std::runtime_error("derivation file: first line must be 'system: ID'");
}

} // namespace wk
