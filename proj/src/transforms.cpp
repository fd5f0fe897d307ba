#include "wk/transforms.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace wk {

namespace {

Formula neg_f(const Formula& f) { return Formula::apply("~", {f}); }
Formula or_f(const Formula& a, const Formula& b) { return Formula::apply("|", {a, b}); }
Formula and_f(const Formula& a, const Formula& b) { return Formula::apply("&", {a, b}); }

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) out += sep;
        out += xs[i];
    }
    return out;
}

int push_step(std::vector<Step>& acc, Formula f, Justification j) {
    Step s;
    s.index = static_cast<int>(acc.size()) + 1;
    s.formula = std::move(f);
    s.just = std::move(j);
    acc.push_back(std::move(s));
    return static_cast<int>(acc.size());
}

// Appends src onto acc, redirecting premise steps whose formula already has a
// premise entry in premise_at and registering new premises there. Returns the
// index the src conclusion landed on.
int append_derivation(std::vector<Step>& acc, const LinearDerivation& src,
                      std::map<Formula, int>& premise_at) {
    std::vector<int> image(src.steps.size() + 1, 0);
    for (const Step& s : src.steps) {
        if (s.just.kind == Justification::Kind::Premise) {
            auto it = premise_at.find(s.formula);
            if (it != premise_at.end()) {
                image[s.index] = it->second;
                continue;
            }
        }
        Step ns = s;
        ns.index = static_cast<int>(acc.size()) + 1;
        for (int& r : ns.just.refs) r = image[r];
        acc.push_back(std::move(ns));
        image[s.index] = static_cast<int>(acc.size());
        if (s.just.kind == Justification::Kind::Premise)
            premise_at.emplace(s.formula, image[s.index]);
    }
    return image[src.conclusion_index()];
}

// The single-conclusion explosion rule: x, ~x / y with x, y distinct variables.
const RuleSchema* find_explosion_rule(const HSystem& sys) {
    for (const RuleSchema& r : sys.rules) {
        if (r.antecedent.size() != 2 || r.succedent.size() != 1) continue;
        const Formula& a = r.antecedent[0];
        const Formula& b = r.antecedent[1];
        const Formula& c = r.succedent[0];
        if (!a.is_variable() || !c.is_variable() || c.head() == a.head()) continue;
        if (!b.is_variable() && b.head() == "~" && b.args()[0] == a) return &r;
    }
    return nullptr;
}

void require_rule(const HSystem& sys, const std::string& name,
                  std::vector<const char*> ant, const char* succ) {
    const RuleSchema* r = sys.find_rule(name);
    if (r == nullptr)
        throw std::invalid_argument("transform requires rule " + name + " in system " + sys.name);
    std::vector<Formula> want;
    want.reserve(ant.size());
    for (const char* a : ant) want.push_back(fml(a));
    bool ok = r->antecedent == want && r->succedent.size() == 1 && r->succedent[0] == fml(succ);
    if (!ok)
        throw std::invalid_argument("transform found rule " + name + " with an unexpected schema");
}

void require_derived(const HSystem& sys, const std::string& name) {
    if (sys.find_derived(name) == nullptr)
        throw std::invalid_argument("transform requires derived rule " + name + " in system " +
                                    sys.name);
}

// First step applying the named rule (directly or inside a chain), 0 if none.
int first_step_using(const LinearDerivation& d, const std::string& rule_name) {
    for (const Step& s : d.steps)
        for (const std::string& rn : s.just.rules)
            if (rn == rule_name) return s.index;
    return 0;
}

// Keeps only the steps up to the conclusion (references only point backward,
// so the prefix stays valid).
void truncate_at_conclusion(LinearDerivation& d) {
    int q = d.conclusion_index();
    d.steps.resize(static_cast<std::size_t>(q));
    d.qed = q;
}

} // namespace

// ------------------------------------------------------------- FreshNamer

FreshNamer::FreshNamer(std::string prefix, std::set<std::string> reserved)
    : prefix_(std::move(prefix)), reserved_(std::move(reserved)) {}

void FreshNamer::reserve(const std::string& name) { reserved_.insert(name); }

void FreshNamer::reserve_system(const HSystem& sys) {
    for (const std::string& v : sys.all_variables()) reserved_.insert(v);
}

std::string FreshNamer::fresh(const std::set<std::string>& avoid) const {
    for (int i = counter_;; ++i) {
        std::string c = prefix_ + std::to_string(i);
        if (reserved_.count(c) == 0 && avoid.count(c) == 0) return c;
    }
}

std::string FreshNamer::next() {
    for (int i = counter_;; ++i) {
        std::string c = prefix_ + std::to_string(i);
        if (reserved_.count(c) == 0) {
            counter_ = i + 1;
            reserved_.insert(c);
            return c;
        }
    }
}

// ----------------------------------------------------- system conversions

Formula big_or(const std::vector<Formula>& operands) {
    if (operands.empty()) throw std::invalid_argument("big_or: empty operand list");
    Formula acc = operands[0];
    for (std::size_t i = 1; i < operands.size(); ++i) acc = or_f(acc, operands[i]);
    return acc;
}

HSystem or_convert_system(const HSystem& setset, FreshNamer& fresh, OrConvertReport* report) {
    fresh.reserve_system(setset);
    Formula cv = Formula::variable(fresh.next());

    HSystem out;
    out.name = setset.name + "_or";
    out.kind = SystemKind::SetFmla;
    for (const RuleSchema& r : setset.rules) {
        RuleSchema img;
        img.name = r.name + "c";
        img.kind = SystemKind::SetFmla;
        if (r.antecedent.empty() && r.succedent.size() == 1) {
            img.succedent = r.succedent;
        } else {
            for (const Formula& a : r.antecedent) img.antecedent.push_back(or_f(a, cv));
            if (r.succedent.empty())
                img.succedent = {cv};
            else
                img.succedent = {or_f(big_or(r.succedent), cv)};
        }
        if (img.antecedent.size() == 1 && img.antecedent[0] == img.succedent[0]) {
            if (report != nullptr) report->discarded.push_back({r.name, img});
            continue;
        }
        out.rules.push_back(std::move(img));
    }
    out.rules.push_back({"or1", {fml("p|p")}, {fml("p")}, SystemKind::SetFmla});
    out.rules.push_back({"or2", {fml("p")}, {fml("p|q")}, SystemKind::SetFmla});
    out.rules.push_back({"or3", {fml("p|q")}, {fml("q|p")}, SystemKind::SetFmla});
    out.rules.push_back({"or4", {fml("p|(q|r)")}, {fml("(p|q)|r")}, SystemKind::SetFmla});
    return out;
}

namespace {
Formula swap_and_or(const Formula& f) {
    if (f.is_variable()) return f;
    std::string h = f.head();
    if (h == "&")
        h = "|";
    else if (h == "|")
        h = "&";
    std::vector<Formula> as;
    as.reserve(f.args().size());
    for (const Formula& a : f.args()) as.push_back(swap_and_or(a));
    return Formula::apply(h, std::move(as));
}
} // namespace

HSystem dualize_system(const HSystem& setset) {
    HSystem out;
    static const std::string kSuffix = "_dual";
    if (setset.name.size() > kSuffix.size() &&
        setset.name.compare(setset.name.size() - kSuffix.size(), kSuffix.size(), kSuffix) == 0)
        out.name = setset.name.substr(0, setset.name.size() - kSuffix.size());
    else
        out.name = setset.name + kSuffix;
    out.kind = setset.kind;
    for (const RuleSchema& r : setset.rules) {
        RuleSchema d;
        d.name = r.name;
        d.kind = r.kind;
        for (const Formula& f : r.succedent) d.antecedent.push_back(swap_and_or(f));
        for (const Formula& f : r.antecedent) d.succedent.push_back(swap_and_or(f));
        out.rules.push_back(std::move(d));
    }
    return out;
}

RuleSchema lift_rule(const RuleSchema& r, LiftMode mode, const FreshNamer& fresh) {
    if (r.succedent.size() != 1)
        throw std::invalid_argument("lift_rule: rule must have a single conclusion");
    std::string c = fresh.fresh(r.schema_variables());
    Formula cv = Formula::variable(c);
    Formula prefix = (mode == LiftMode::Or) ? cv : neg_f(cv);
    RuleSchema out;
    out.name = r.name + (mode == LiftMode::Or ? "v" : "i");
    out.kind = SystemKind::SetFmla;
    for (const Formula& a : r.antecedent) out.antecedent.push_back(or_f(prefix, a));
    out.succedent = {or_f(prefix, r.succedent[0])};
    return out;
}

bool satisfies_containment(const RuleSchema& r) {
    std::set<std::string> av;
    for (const Formula& a : r.antecedent)
        for (const std::string& v : a.variables()) av.insert(v);
    for (const Formula& s : r.succedent)
        for (const std::string& v : s.variables())
            if (av.count(v) == 0) return false;
    return true;
}

// ------------------------------------------------------------ BK assembly

namespace {

struct RuleSpec {
    const char* name;
    std::vector<const char*> ant;
    std::vector<const char*> suc;
};

RuleSchema make_rule(const RuleSpec& spec, SystemKind kind) {
    RuleSchema r;
    r.name = spec.name;
    r.kind = kind;
    for (const char* a : spec.ant) r.antecedent.push_back(fml(a));
    for (const char* s : spec.suc) r.succedent.push_back(fml(s));
    return r;
}

const std::vector<RuleSpec>& expected_bk_specs() {
    static const std::vector<RuleSpec> specs = {
        {"BK1", {"p", "~p"}, {}},
        {"BK2", {"p"}, {"~~p"}},
        {"BK3", {"~~p"}, {"p"}},
        {"BK4", {"p", "q"}, {"p&q"}},
        {"BK5", {"~p", "~q"}, {"~(p&q)"}},
        {"BK6", {"~p", "q"}, {"~(p&q)"}},
        {"BK7", {"p", "~q"}, {"~(p&q)"}},
        {"BK8", {"~(p&q)"}, {"~p", "p"}},
        {"BK9", {"~(p&q)"}, {"~q", "q"}},
        {"BK10", {"p&q"}, {"p"}},
        {"BK11", {"p&q"}, {"q"}},
        {"BK12", {"~p", "~q"}, {"~(p|q)"}},
        {"BK13", {"~(p|q)"}, {"~p"}},
        {"BK14", {"~(p|q)"}, {"~q"}},
        {"BK15", {"p|q"}, {"p", "~p"}},
        {"BK16", {"p|q"}, {"q", "~q"}},
        {"BK17", {"~p", "q"}, {"p|q"}},
        {"BK18", {"p", "~q"}, {"p|q"}},
        {"BK19", {"p", "q"}, {"p|q"}},
        {"BK20", {"p|q"}, {"p", "q"}},
    };
    return specs;
}

// index -> single-conclusion replacement for the four branching rules
const std::map<std::size_t, RuleSpec>& starred_bk_specs() {
    static const std::map<std::size_t, RuleSpec> specs = {
        {7, {"BK8s", {"~(p&q)"}, {"~p|p"}}},
        {8, {"BK9s", {"~(p&q)"}, {"~q|q"}}},
        {14, {"BK15s", {"p|q"}, {"p|~p"}}},
        {15, {"BK16s", {"p|q"}, {"q|~q"}}},
    };
    return specs;
}

} // namespace

BkAssembly assemble_bk_systems(const HSystem& r_bk) {
    const std::vector<RuleSpec>& specs = expected_bk_specs();
    bool matches = r_bk.kind == SystemKind::SetSet && r_bk.rules.size() == specs.size();
    if (matches) {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            RuleSchema want = make_rule(specs[i], SystemKind::SetSet);
            if (canonical_rule_form(r_bk.rules[i]) != canonical_rule_form(want)) {
                matches = false;
                break;
            }
        }
    }
    if (!matches)
        throw std::invalid_argument(
            "assemble_bk_systems: input does not match the expected 20-rule system");

    std::string prefix = r_bk.rules[0].name;
    while (!prefix.empty() && std::isdigit(static_cast<unsigned char>(prefix.back())))
        prefix.pop_back();

    BkAssembly out;
    out.star.name = r_bk.name + "_star";
    out.star.kind = SystemKind::SetSet;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        auto star_it = starred_bk_specs().find(i);
        if (star_it != starred_bk_specs().end()) {
            RuleSchema s = make_rule(star_it->second, SystemKind::SetSet);
            s.name = r_bk.rules[i].name + "s";
            out.star.rules.push_back(std::move(s));
        } else {
            out.star.rules.push_back(make_rule(specs[i], SystemKind::SetSet));
            out.star.rules.back().name = r_bk.rules[i].name;
        }
    }

    out.h.name = (r_bk.name.rfind("R_", 0) == 0) ? "H_" + r_bk.name.substr(2)
                                                 : r_bk.name + "_sf";
    out.h.kind = SystemKind::SetFmla;
    // core schemas: explosion gains a conclusion variable, the four branching
    // rules become their starred forms, and four disjunction-handling rules
    // close the list
    {
        RuleSchema r1s = make_rule({"", {"p", "~p"}, {"q"}}, SystemKind::SetFmla);
        r1s.name = r_bk.rules[0].name + "s";
        out.h.rules.push_back(std::move(r1s));
    }
    for (std::size_t i = 1; i + 1 < specs.size(); ++i) {
        auto star_it = starred_bk_specs().find(i);
        const RuleSpec& spec = (star_it != starred_bk_specs().end()) ? star_it->second : specs[i];
        RuleSchema r = make_rule(spec, SystemKind::SetFmla);
        r.name = r_bk.rules[i].name + (star_it != starred_bk_specs().end() ? "s" : "");
        out.h.rules.push_back(std::move(r));
    }
    // the branching disjunction elimination becomes disjunctive syllogism
    {
        RuleSchema r = make_rule({"", {"p|q", "~p"}, {"q"}}, SystemKind::SetFmla);
        r.name = r_bk.rules[specs.size() - 1].name;
        out.h.rules.push_back(std::move(r));
    }
    const std::vector<RuleSpec> extras = {
        {"21", {"p|(q|r)"}, {"(p|q)|r"}},
        {"22", {"p|p"}, {"p"}},
        {"23", {"p|q"}, {"q|p"}},
        {"24", {"p|q", "r"}, {"~p|r"}},
    };
    for (const RuleSpec& e : extras) {
        RuleSchema r = make_rule(e, SystemKind::SetFmla);
        r.name = prefix + e.name;
        out.h.rules.push_back(std::move(r));
    }

    FreshNamer fresh("v");
    std::size_t core_count = out.h.rules.size();
    for (std::size_t i = 0; i < core_count; ++i)
        for (const std::string& v : out.h.rules[i].schema_variables()) fresh.reserve(v);
    out.h.rules.reserve(2 * core_count - 1);
    for (std::size_t i = 1; i < core_count; ++i) {
        RuleSchema core = out.h.rules[i];
        out.h.rules.push_back(lift_rule(core, LiftMode::Or, fresh));
    }
    return out;
}

// --------------------------------------------------- derived-rule registry

namespace {

// Outer and inner lift variables for a core rule's double lift: the inner one
// is the primitive lift's extra variable, the outer one the first fresh name
// beyond the rule's own variables.
std::pair<std::string, std::string> double_lift_vars(const RuleSchema& core,
                                                     const RuleSchema& lifted) {
    std::set<std::string> inner_set = lifted.schema_variables();
    for (const std::string& v : core.schema_variables()) inner_set.erase(v);
    if (inner_set.size() != 1)
        throw std::logic_error("double lift: cannot identify the lift variable of " + lifted.name);
    std::string inner = *inner_set.begin();
    std::set<std::string> avoid = core.schema_variables();
    avoid.insert(inner);
    FreshNamer fn("v");
    return {fn.fresh(avoid), inner};
}

RuleSchema double_lift_schema(const RuleSchema& core, const std::string& outer,
                              const std::string& inner) {
    Formula ov = Formula::variable(outer);
    Formula iv = Formula::variable(inner);
    RuleSchema s;
    s.name = core.name + "vv";
    s.kind = SystemKind::SetFmla;
    for (const Formula& a : core.antecedent) s.antecedent.push_back(or_f(ov, or_f(iv, a)));
    s.succedent = {or_f(ov, or_f(iv, core.succedent[0]))};
    return s;
}

DerivedRule parse_template(const char* text, RuleSchema schema) {
    DerivationDocument doc = parse_derivation(text, Signature::and_or_not(), SystemKind::SetFmla);
    if (!doc.linear.has_value())
        throw std::logic_error("derived-rule template is not a linear derivation");
    return DerivedRule{std::move(schema), std::move(*doc.linear)};
}

const char* kBK27Body = R"(system: H_BK
claim: (p | q) | r |- p | (q | r)
1. premise (p | q) | r
2. BK23 [1] {p := p | q, q := r} : r | (p | q)
3. BK21 [2] {p := r, q := p, r := q} : (r | p) | q
4. BK23 [3] {p := r | p, q := q} : q | (r | p)
5. BK21 [4] {p := q, q := r, r := p} : (q | r) | p
6. BK23 [5] {p := q | r, q := p} : p | (q | r)
qed 6
)";

const char* kBK26Body = R"(system: H_BK
claim: ~p | q, p |- q
1. premise ~p | q
2. premise p
3. BK2 [2] {p := p} : ~~p
4. BK20 [1, 3] {p := ~p, q := q} : q
qed 4
)";

const char* kBK25Body = R"(system: H_BK
claim: p | q |- ~p | (p | q)
1. premise p | q
2. BK15s [1] {p := p, q := q} : p | ~p
3. BK19 [1, 2] {p := p | q, q := p | ~p} : (p | q) | (p | ~p)
4. chain BK21,BK23 [3] {p := p | q, q := p, r := ~p} {p := (p | q) | p, q := ~p} : ~p | ((p | q) | p)
5. chain BK23v,BK21v [4] {v0 := ~p, p := p | q, q := p} {v0 := ~p, p := p, q := p, r := q} : ~p | ((p | p) | q)
6. chain BK23v,BK22vv,BK23v [5] {v0 := ~p, p := p | p, q := q} {v1 := ~p, v0 := q, p := p} {v0 := ~p, p := q, q := p} : ~p | (p | q)
qed 6
)";

const char* kBK28Body = R"(system: H_BK
claim: ~p | r, ~q | r |- ~(p | q) | r
1. premise ~p | r
2. premise ~q | r
3. BK23 [1] {p := ~p, q := r} : r | ~p
4. BK23 [2] {p := ~q, q := r} : r | ~q
5. BK12v [3, 4] {v0 := r, p := p, q := q} : r | ~(p | q)
6. BK23 [5] {p := r, q := ~(p | q)} : ~(p | q) | r
qed 6
)";

// Case bodies behind BK29: from one disjunct of ~p | ~q (plus the matching
// excluded-middle disjunction) to ~(p & q). The first discharges ~p, the
// second ~q.
const char* kBK29CaseNegP = R"(system: H_BK
claim: ~p | ~q, ~q | ~~q, ~p |- ~(p & q)
1. premise ~p
2. premise ~q | ~~q
3. BK24 [2, 1] {p := ~q, q := ~~q, r := ~p} : ~~q | ~p
4. BK23 [2] {p := ~q, q := ~~q} : ~~q | ~q
5. BK5v [3, 4] {v0 := ~~q, p := p, q := q} : ~~q | ~(p & q)
6. BK16s [2] {p := ~q, q := ~~q} : ~~q | ~~~q
7. BK23 [6] {p := ~~q, q := ~~~q} : ~~~q | ~~q
8. BK3v [7] {v0 := ~~~q, p := q} : ~~~q | q
9. BK24 [3, 1] {p := ~~q, q := ~p, r := ~p} : ~~~q | ~p
10. BK6v [9, 8] {v0 := ~~~q, p := p, q := q} : ~~~q | ~(p & q)
11. BK28 [5, 10] {p := ~q, q := ~~q, r := ~(p & q)} : ~(~q | ~~q) | ~(p & q)
12. BK26 [11, 2] {p := ~q | ~~q, q := ~(p & q)} : ~(p & q)
qed 12
)";

const char* kBK29CaseNegQ = R"(system: H_BK
claim: ~p | ~q, ~p | ~~p, ~q |- ~(p & q)
1. premise ~q
2. premise ~p | ~~p
3. BK24 [2, 1] {p := ~p, q := ~~p, r := ~q} : ~~p | ~q
4. BK23 [2] {p := ~p, q := ~~p} : ~~p | ~p
5. BK5v [4, 3] {v0 := ~~p, p := p, q := q} : ~~p | ~(p & q)
6. BK16s [2] {p := ~p, q := ~~p} : ~~p | ~~~p
7. BK23 [6] {p := ~~p, q := ~~~p} : ~~~p | ~~p
8. BK3v [7] {v0 := ~~~p, p := p} : ~~~p | p
9. BK24 [3, 1] {p := ~~p, q := ~q, r := ~q} : ~~~p | ~q
10. BK7v [8, 9] {v0 := ~~~p, p := p, q := q} : ~~~p | ~(p & q)
11. BK28 [5, 10] {p := ~p, q := ~~p, r := ~(p & q)} : ~(~p | ~~p) | ~(p & q)
12. BK26 [11, 2] {p := ~p | ~~p, q := ~(p & q)} : ~(p & q)
qed 12
)";

const char* kBK29Body = R"(system: H_BK
claim: ~p | ~q |- ~(p & q)
1. premise ~p | ~q
2. BK16s [1] {p := ~p, q := ~q} : ~q | ~~q
3. BK15s [1] {p := ~p, q := ~q} : ~p | ~~p
4. BK29a [1, 2] {p := p, q := q} : ~~p | ~(p & q)
5. BK29b [1, 3] {p := p, q := q} : ~~q | ~(p & q)
6. BK28 [4, 5] {p := ~p, q := ~q, r := ~(p & q)} : ~(~p | ~q) | ~(p & q)
7. BK26 [6, 1] {p := ~p | ~q, q := ~(p & q)} : ~(p & q)
qed 7
)";

const char* kBK30Body = R"(system: H_BK
claim: ~p | q |- ~(q & ~q)
1. premise ~p | q
2. BK16s [1] {p := ~p, q := q} : q | ~q
3. BK16s [2] {p := q, q := ~q} : ~q | ~~q
4. BK29 [3] {p := q, q := ~q} : ~(q & ~q)
qed 4
)";

RuleSchema fmla_schema(const char* name, std::vector<const char*> ant, const char* suc) {
    RuleSchema s;
    s.name = name;
    s.kind = SystemKind::SetFmla;
    for (const char* a : ant) s.antecedent.push_back(fml(a));
    s.succedent = {fml(suc)};
    return s;
}

} // namespace

LinearDerivation lifted_derivation_scheme(const HSystem& h_bk, const RuleSchema& core) {
    const RuleSchema* boom = find_explosion_rule(h_bk);
    if (boom != nullptr && core.name == boom->name)
        throw std::invalid_argument("lifted_derivation_scheme: the explosion rule has no lift");
    if (core.succedent.size() != 1)
        throw std::invalid_argument("lifted_derivation_scheme: core rule must be single-conclusion");
    const RuleSchema* lifted = h_bk.find_rule(core.name + "v");
    if (lifted == nullptr)
        throw std::invalid_argument("lifted_derivation_scheme: missing primitive lift " +
                                    core.name + "v");
    require_rule(h_bk, "BK21", {"p|(q|r)"}, "(p|q)|r");
    require_derived(h_bk, "BK27");

    auto [outer, inner] = double_lift_vars(core, *lifted);
    Formula ov = Formula::variable(outer);
    Formula iv = Formula::variable(inner);
    Formula base = or_f(ov, iv);
    const Formula& head = core.succedent[0];

    LinearDerivation out;
    std::vector<int> prem;
    for (const Formula& a : core.antecedent)
        prem.push_back(push_step(out.steps, or_f(ov, or_f(iv, a)), Justification::premise()));
    std::vector<int> assoc;
    for (std::size_t i = 0; i < core.antecedent.size(); ++i) {
        const Formula& a = core.antecedent[i];
        assoc.push_back(push_step(
            out.steps, or_f(base, a),
            Justification::rule("BK21", {prem[i]}, {{"p", ov}, {"q", iv}, {"r", a}})));
    }
    Substitution s;
    s[inner] = base;
    for (const std::string& v : core.schema_variables()) s[v] = Formula::variable(v);
    int ls = push_step(out.steps, or_f(base, head),
                       Justification::rule(core.name + "v", assoc, s));
    out.qed = push_step(
        out.steps, or_f(ov, or_f(iv, head)),
        Justification::derived("BK27", {ls}, {{"p", ov}, {"q", iv}, {"r", head}}));
    return out;
}

void register_bk_derived(HSystem& h) {
    if (h.find_derived("BK30") != nullptr) return;

    h.register_derived("BK27", parse_template(kBK27Body,
                                              fmla_schema("BK27", {"(p|q)|r"}, "p|(q|r)")));
    h.register_derived("BK26", parse_template(kBK26Body, fmla_schema("BK26", {"~p|q", "p"}, "q")));

    const RuleSchema* boom = find_explosion_rule(h);
    std::vector<const RuleSchema*> cores;
    for (const RuleSchema& r : h.rules) {
        if (boom != nullptr && r.name == boom->name) continue;
        if (!r.name.empty() && r.name.back() == 'v' &&
            h.find_rule(r.name.substr(0, r.name.size() - 1)) != nullptr)
            continue;
        cores.push_back(&r);
    }
    for (const RuleSchema* c : cores) {
        const RuleSchema* lifted = h.find_rule(c->name + "v");
        if (lifted == nullptr)
            throw std::invalid_argument("register_bk_derived: missing primitive lift " + c->name +
                                        "v");
        auto [outer, inner] = double_lift_vars(*c, *lifted);
        LinearDerivation body = lifted_derivation_scheme(h, *c);
        h.register_derived(c->name + "vv",
                           DerivedRule{double_lift_schema(*c, outer, inner), std::move(body)});
    }

    h.register_derived("BK25", parse_template(kBK25Body, fmla_schema("BK25", {"p|q"}, "~p|(p|q)")));
    h.register_derived("BK28",
                       parse_template(kBK28Body, fmla_schema("BK28", {"~p|r", "~q|r"}, "~(p|q)|r")));

    {
        DerivationDocument body = parse_derivation(kBK29CaseNegP, Signature::and_or_not(),
                                                   SystemKind::SetFmla);
        TransformResult t = deduction_transform(h, *body.linear, body.claim, fml("~p"), fml("~q"),
                                                fml("~p"));
        RuleSchema schema = fmla_schema("BK29a", {"~p|~q", "~q|~~q"}, "~~p|~(p&q)");
        h.register_derived("BK29a", DerivedRule{std::move(schema), std::move(t.derivation)});
    }
    {
        DerivationDocument body = parse_derivation(kBK29CaseNegQ, Signature::and_or_not(),
                                                   SystemKind::SetFmla);
        TransformResult t = deduction_transform(h, *body.linear, body.claim, fml("~p"), fml("~q"),
                                                fml("~q"));
        RuleSchema schema = fmla_schema("BK29b", {"~p|~q", "~p|~~p"}, "~~q|~(p&q)");
        h.register_derived("BK29b", DerivedRule{std::move(schema), std::move(t.derivation)});
    }

    h.register_derived("BK29", parse_template(kBK29Body, fmla_schema("BK29", {"~p|~q"}, "~(p&q)")));
    h.register_derived("BK30", parse_template(kBK30Body, fmla_schema("BK30", {"~p|q"}, "~(q&~q)")));
}

// --------------------------------------------------------- proof transforms

TransformResult deduction_transform(const HSystem& sys, const LinearDerivation& d,
                                    const Statement& claim, const Formula& phi,
                                    const Formula& psi, const Formula& delta) {
    if (!(delta == phi || delta == psi))
        throw std::invalid_argument("deduction_transform: delta must be one of the disjuncts");
    Formula D = or_f(phi, psi);
    if (claim.antecedent.count(D) == 0 || claim.antecedent.count(delta) == 0)
        throw std::invalid_argument(
            "deduction_transform: claim must contain the disjunction and the discharged disjunct");
    VerifyResult vr = verify_derivation(sys, d, claim);
    if (!vr.accepted)
        throw std::invalid_argument("deduction_transform: input does not verify (" + vr.reason +
                                    " at " + vr.location + ")");

    require_rule(sys, "BK15s", {"p|q"}, "p|~p");
    require_rule(sys, "BK23", {"p|q"}, "q|p");
    require_rule(sys, "BK24", {"p|q", "r"}, "~p|r");
    require_rule(sys, "BK23v", {"v0|(p|q)"}, "v0|(q|p)");
    require_derived(sys, "BK25");
    const RuleSchema* boom = find_explosion_rule(sys);

    LinearDerivation exp = expand_derived(sys, d);
    truncate_at_conclusion(exp);
    if (boom != nullptr && first_step_using(exp, boom->name) != 0)
        throw std::invalid_argument("deduction_transform: input applies the explosion rule " +
                                    boom->name);

    Formula nd = neg_f(delta);
    bool delta_is_psi = !(delta == phi);
    Formula other = delta_is_psi ? phi : psi;

    std::vector<Step> acc;
    int dstep = push_step(acc, D, Justification::premise());
    int dref = dstep;
    if (delta_is_psi)
        dref = push_step(acc, or_f(psi, phi),
                         Justification::rule("BK23", {dstep}, {{"p", phi}, {"q", psi}}));

    std::vector<int> image(exp.steps.size() + 1, 0);
    for (const Step& st : exp.steps) {
        const Formula& g = st.formula;
        if (st.just.kind == Justification::Kind::Premise) {
            if (g == delta) {
                int s1 = push_step(
                    acc, or_f(delta, nd),
                    Justification::rule("BK15s", {dref}, {{"p", delta}, {"q", other}}));
                image[st.index] =
                    push_step(acc, or_f(nd, delta),
                              Justification::rule("BK23", {s1}, {{"p", delta}, {"q", nd}}));
            } else if (g == D) {
                if (!delta_is_psi) {
                    image[st.index] =
                        push_step(acc, or_f(nd, D),
                                  Justification::derived("BK25", {dref}, {{"p", phi}, {"q", psi}}));
                } else {
                    int s1 = push_step(
                        acc, or_f(nd, or_f(psi, phi)),
                        Justification::derived("BK25", {dref}, {{"p", psi}, {"q", phi}}));
                    image[st.index] = push_step(
                        acc, or_f(nd, D),
                        Justification::rule("BK23v", {s1},
                                            {{"v0", nd}, {"p", psi}, {"q", phi}}));
                }
            } else {
                int s1 = push_step(acc, g, Justification::premise());
                image[st.index] = push_step(
                    acc, or_f(nd, g),
                    Justification::rule("BK24", {dref, s1},
                                        {{"p", delta}, {"q", other}, {"r", g}}));
            }
            continue;
        }
        if (st.just.kind != Justification::Kind::Rule)
            throw std::logic_error("deduction_transform: expansion left a non-primitive step");
        const std::string& rn = st.just.rules[0];
        std::vector<int> refs;
        refs.reserve(st.just.refs.size());
        for (int r : st.just.refs) refs.push_back(image[r]);
        Substitution s2 = st.just.substs[0];
        std::string ln = rn + "v";
        if (sys.find_rule(ln) != nullptr) {
            s2["v0"] = nd;
            image[st.index] = push_step(acc, or_f(nd, g), Justification::rule(ln, refs, s2));
        } else if (const DerivedRule* dl = sys.find_derived(ln)) {
            const RuleSchema* base = sys.find_rule(rn);
            std::set<std::string> extra = dl->schema.schema_variables();
            if (base != nullptr)
                for (const std::string& v : base->schema_variables()) extra.erase(v);
            if (extra.size() != 1)
                throw std::logic_error(
                    "deduction_transform: cannot identify the lift variable of " + ln);
            s2[*extra.begin()] = nd;
            image[st.index] = push_step(acc, or_f(nd, g), Justification::derived(ln, refs, s2));
        } else {
            throw std::invalid_argument("deduction_transform: no lifted form available for rule " +
                                        rn);
        }
    }

    LinearDerivation outd;
    outd.steps = std::move(acc);
    outd.qed = image[exp.conclusion_index()];
    Statement out_claim;
    out_claim.antecedent = claim.antecedent;
    out_claim.antecedent.erase(delta);
    out_claim.succedent = {or_f(nd, *claim.succedent.begin())};
    VerifyResult ov = verify_derivation(sys, outd, out_claim);
    if (!ov.accepted)
        throw std::logic_error("deduction_transform: output failed verification (" + ov.reason +
                               " at " + ov.location + ")");
    return {std::move(outd), std::move(out_claim)};
}

TransformResult neg_deduction_transform(const HSystem& sys, const LinearDerivation& d,
                                        const Statement& claim, const Formula& phi,
                                        const Formula& psi, const Formula& delta) {
    if (!(delta == phi || delta == psi))
        throw std::invalid_argument("neg_deduction_transform: delta must be one of the disjuncts");
    Formula nd = neg_f(delta);
    if (claim.succedent.size() != 1 || !(*claim.succedent.begin() == nd))
        throw std::invalid_argument(
            "neg_deduction_transform: claim must conclude the negated disjunct");
    Formula D = or_f(phi, psi);
    if (claim.antecedent.count(D) == 0 || claim.antecedent.count(delta) == 0)
        throw std::invalid_argument(
            "neg_deduction_transform: claim must contain the disjunction and the discharged "
            "disjunct");
    VerifyResult vr = verify_derivation(sys, d, claim);
    if (!vr.accepted)
        throw std::invalid_argument("neg_deduction_transform: input does not verify (" +
                                    vr.reason + " at " + vr.location + ")");

    require_rule(sys, "BK22", {"p|p"}, "p");
    require_rule(sys, "BK23", {"p|q"}, "q|p");
    require_rule(sys, "BK20", {"p|q", "~p"}, "q");
    require_rule(sys, "BK4v", {"v0|p", "v0|q"}, "v0|(p&q)");
    require_derived(sys, "BK30");
    const RuleSchema* boom = find_explosion_rule(sys);
    if (boom == nullptr)
        throw std::invalid_argument("neg_deduction_transform: system lacks an explosion rule");

    LinearDerivation exp = expand_derived(sys, d);
    truncate_at_conclusion(exp);
    int k = first_step_using(exp, boom->name);

    if (k == 0) {
        TransformResult t = deduction_transform(sys, d, claim, phi, psi, delta);
        std::vector<Step> acc = std::move(t.derivation.steps);
        int q = t.derivation.qed;
        int fin = push_step(acc, nd, Justification::rule("BK22", {q}, {{"p", nd}}));
        LinearDerivation outd{std::move(acc), fin};
        Statement out_claim = std::move(t.claim);
        out_claim.succedent = {nd};
        VerifyResult ov = verify_derivation(sys, outd, out_claim);
        if (!ov.accepted)
            throw std::logic_error("neg_deduction_transform: output failed verification (" +
                                   ov.reason + " at " + ov.location + ")");
        return {std::move(outd), std::move(out_claim)};
    }

    const Step& ks = exp.steps[static_cast<std::size_t>(k) - 1];
    int a = ks.just.refs[0];
    int b = ks.just.refs[1];
    Formula g = exp.steps[static_cast<std::size_t>(a) - 1].formula;
    Formula gneg = exp.steps[static_cast<std::size_t>(b) - 1].formula;

    LinearDerivation d1{std::vector<Step>(exp.steps.begin(), exp.steps.begin() + a), a};
    LinearDerivation d2{std::vector<Step>(exp.steps.begin(), exp.steps.begin() + b), b};
    Statement c1{claim.antecedent, {g}};
    Statement c2{claim.antecedent, {gneg}};
    TransformResult t1 = deduction_transform(sys, d1, c1, phi, psi, delta);
    TransformResult t2 = deduction_transform(sys, d2, c2, phi, psi, delta);

    std::vector<Step> acc = std::move(t1.derivation.steps);
    int q1 = t1.derivation.qed;
    std::map<Formula, int> premise_at;
    for (const Step& s : acc)
        if (s.just.kind == Justification::Kind::Premise) premise_at.emplace(s.formula, s.index);
    int q2 = append_derivation(acc, t2.derivation, premise_at);

    Formula contradiction = and_f(g, gneg);
    int s_and = push_step(acc, or_f(nd, contradiction),
                          Justification::rule("BK4v", {q1, q2},
                                              {{"v0", nd}, {"p", g}, {"q", gneg}}));
    int s_comm = push_step(acc, or_f(contradiction, nd),
                           Justification::rule("BK23", {s_and},
                                               {{"p", nd}, {"q", contradiction}}));
    int s_neg = push_step(acc, neg_f(contradiction),
                          Justification::derived("BK30", {q1}, {{"p", delta}, {"q", g}}));
    int fin = push_step(acc, nd,
                        Justification::rule("BK20", {s_comm, s_neg},
                                            {{"p", contradiction}, {"q", nd}}));

    LinearDerivation outd{std::move(acc), fin};
    Statement out_claim;
    out_claim.antecedent = claim.antecedent;
    out_claim.antecedent.erase(delta);
    out_claim.succedent = {nd};
    VerifyResult ov = verify_derivation(sys, outd, out_claim);
    if (!ov.accepted)
        throw std::logic_error("neg_deduction_transform: output failed verification (" +
                               ov.reason + " at " + ov.location + ")");
    return {std::move(outd), std::move(out_claim)};
}

TransformResult explosion_transform(const HSystem& sys, const LinearDerivation& d,
                                    const Statement& claim, const Formula& phi,
                                    const Formula& psi, const Formula& delta1) {
    if (!(delta1 == phi || delta1 == psi))
        throw std::invalid_argument("explosion_transform: delta1 must be one of the disjuncts");
    Formula D = or_f(phi, psi);
    if (claim.antecedent.count(D) == 0 || claim.antecedent.count(delta1) == 0)
        throw std::invalid_argument(
            "explosion_transform: claim must contain the disjunction and the discharged disjunct");
    VerifyResult vr = verify_derivation(sys, d, claim);
    if (!vr.accepted)
        throw std::invalid_argument("explosion_transform: input does not verify (" + vr.reason +
                                    " at " + vr.location + ")");

    require_rule(sys, "BK23", {"p|q"}, "q|p");
    require_rule(sys, "BK20", {"p|q", "~p"}, "q");
    const RuleSchema* boom = find_explosion_rule(sys);
    if (boom == nullptr)
        throw std::invalid_argument("explosion_transform: system lacks an explosion rule");

    LinearDerivation exp = expand_derived(sys, d);
    truncate_at_conclusion(exp);
    int k = first_step_using(exp, boom->name);
    if (k == 0)
        throw std::invalid_argument(
            "explosion_transform: derivation does not apply the explosion rule");

    Formula nd1 = neg_f(delta1);
    bool d1_is_phi = (delta1 == phi);
    Formula delta2 = d1_is_phi ? psi : phi;

    // retarget the first explosion step to conclude ~delta1 and drop the rest
    LinearDerivation dd{std::vector<Step>(exp.steps.begin(), exp.steps.begin() + k), k};
    Step& kk = dd.steps[static_cast<std::size_t>(k) - 1];
    kk.just.substs[0][boom->succedent[0].head()] = nd1;
    kk.formula = nd1;
    Statement cdd{claim.antecedent, {nd1}};
    TransformResult ndr = neg_deduction_transform(sys, dd, cdd, phi, psi, delta1);

    std::vector<Step> acc = std::move(ndr.derivation.steps);
    int nq = ndr.derivation.qed;
    int dstep = 0;
    for (const Step& s : acc)
        if (s.just.kind == Justification::Kind::Premise && s.formula == D) {
            dstep = s.index;
            break;
        }
    if (dstep == 0) dstep = push_step(acc, D, Justification::premise());

    int fin;
    if (d1_is_phi) {
        fin = push_step(acc, psi,
                        Justification::rule("BK20", {dstep, nq}, {{"p", phi}, {"q", psi}}));
    } else {
        int c = push_step(acc, or_f(psi, phi),
                          Justification::rule("BK23", {dstep}, {{"p", phi}, {"q", psi}}));
        fin = push_step(acc, phi,
                        Justification::rule("BK20", {c, nq}, {{"p", psi}, {"q", phi}}));
    }

    LinearDerivation outd{std::move(acc), fin};
    Statement out_claim;
    out_claim.antecedent = claim.antecedent;
    out_claim.antecedent.erase(delta1);
    out_claim.succedent = {delta2};
    VerifyResult ov = verify_derivation(sys, outd, out_claim);
    if (!ov.accepted)
        throw std::logic_error("explosion_transform: output failed verification (" + ov.reason +
                               " at " + ov.location + ")");
    return {std::move(outd), std::move(out_claim)};
}

TransformResult disjunction_elim(const HSystem& sys, const LinearDerivation& d1,
                                 const Statement& claim1, const LinearDerivation& d2,
                                 const Statement& claim2, const Formula& phi,
                                 const Formula& psi) {
    Formula D = or_f(phi, psi);
    if (claim1.succedent.size() != 1 || claim2.succedent.size() != 1 ||
        !(*claim1.succedent.begin() == *claim2.succedent.begin()))
        throw std::invalid_argument("disjunction_elim: the two proofs must share one conclusion");
    Formula goal = *claim1.succedent.begin();
    if (claim1.antecedent.count(D) == 0 || claim1.antecedent.count(phi) == 0 ||
        claim2.antecedent.count(D) == 0 || claim2.antecedent.count(psi) == 0)
        throw std::invalid_argument(
            "disjunction_elim: claims must contain the disjunction and their disjunct");
    VerifyResult v1 = verify_derivation(sys, d1, claim1);
    if (!v1.accepted)
        throw std::invalid_argument("disjunction_elim: first input does not verify (" + v1.reason +
                                    " at " + v1.location + ")");
    VerifyResult v2 = verify_derivation(sys, d2, claim2);
    if (!v2.accepted)
        throw std::invalid_argument("disjunction_elim: second input does not verify (" +
                                    v2.reason + " at " + v2.location + ")");

    Statement out_claim;
    out_claim.antecedent = claim1.antecedent;
    out_claim.antecedent.erase(phi);
    Statement rest;
    rest.antecedent = claim2.antecedent;
    rest.antecedent.erase(psi);
    out_claim.antecedent.insert(rest.antecedent.begin(), rest.antecedent.end());
    out_claim.succedent = {goal};

    auto finish = [&](LinearDerivation outd) -> TransformResult {
        VerifyResult ov = verify_derivation(sys, outd, out_claim);
        if (!ov.accepted)
            throw std::logic_error("disjunction_elim: output failed verification (" + ov.reason +
                                   " at " + ov.location + ")");
        return {std::move(outd), out_claim};
    };

    if (out_claim.antecedent.count(goal) != 0) {
        LinearDerivation outd;
        outd.qed = push_step(outd.steps, goal, Justification::premise());
        return finish(std::move(outd));
    }

    const RuleSchema* boom = find_explosion_rule(sys);
    LinearDerivation exp1 = expand_derived(sys, d1);
    truncate_at_conclusion(exp1);
    LinearDerivation exp2 = expand_derived(sys, d2);
    truncate_at_conclusion(exp2);
    int b1 = (boom != nullptr) ? first_step_using(exp1, boom->name) : 0;
    int b2 = (boom != nullptr) ? first_step_using(exp2, boom->name) : 0;

    if (b1 == 0 && b2 == 0) {
        require_derived(sys, "BK28");
        require_derived(sys, "BK26");
        TransformResult t1 = deduction_transform(sys, d1, claim1, phi, psi, phi);
        TransformResult t2 = deduction_transform(sys, d2, claim2, phi, psi, psi);
        std::vector<Step> acc = std::move(t1.derivation.steps);
        int q1 = t1.derivation.qed;
        std::map<Formula, int> premise_at;
        for (const Step& s : acc)
            if (s.just.kind == Justification::Kind::Premise) premise_at.emplace(s.formula, s.index);
        int q2 = append_derivation(acc, t2.derivation, premise_at);
        int s28 = push_step(acc, or_f(neg_f(D), goal),
                            Justification::derived("BK28", {q1, q2},
                                                   {{"p", phi}, {"q", psi}, {"r", goal}}));
        int dstep = premise_at.at(D);
        int s26 = push_step(acc, goal,
                            Justification::derived("BK26", {s28, dstep},
                                                   {{"p", D}, {"q", goal}}));
        return finish(LinearDerivation{std::move(acc), s26});
    }

    if (b1 != 0) {
        TransformResult e = explosion_transform(sys, d1, claim1, phi, psi, phi);
        std::vector<Step> acc = std::move(e.derivation.steps);
        std::map<Formula, int> premise_at;
        for (const Step& s : acc)
            if (s.just.kind == Justification::Kind::Premise) premise_at.emplace(s.formula, s.index);
        premise_at.emplace(psi, e.derivation.qed);
        int q = append_derivation(acc, exp2, premise_at);
        return finish(LinearDerivation{std::move(acc), q});
    }

    TransformResult e = explosion_transform(sys, d2, claim2, phi, psi, psi);
    std::vector<Step> acc = std::move(e.derivation.steps);
    std::map<Formula, int> premise_at;
    for (const Step& s : acc)
        if (s.just.kind == Justification::Kind::Premise) premise_at.emplace(s.formula, s.index);
    premise_at.emplace(phi, e.derivation.qed);
    int q = append_derivation(acc, exp1, premise_at);
    return finish(LinearDerivation{std::move(acc), q});
}

TransformResult translate_bk(const HSystem& star, const HSystem& h_bk, const TreeDerivation& t,
                             const Statement& claim) {
    if (claim.succedent.size() != 1)
        throw std::invalid_argument("translate_bk: claim succedent must be a singleton");
    Formula goal = *claim.succedent.begin();
    VerifyResult vr = verify_derivation(star, t, claim);
    if (!vr.accepted)
        throw std::invalid_argument("translate_bk: input tree does not verify (" + vr.reason +
                                    " at " + vr.location + ")");

    std::function<LinearDerivation(const TreeNode&, const FormulaSet&)> go =
        [&](const TreeNode& node, const FormulaSet& label) -> LinearDerivation {
        if (node.kind == TreeNode::Kind::Close) {
            LinearDerivation out;
            out.qed = push_step(out.steps, node.close_with, Justification::premise());
            return out;
        }
        const RuleSchema* r = star.find_rule(node.rule);
        if (r == nullptr)
            throw std::logic_error("translate_bk: verified tree names unknown rule " + node.rule);
        if (node.star) {
            const RuleSchema* boom = h_bk.find_rule(node.rule + "s");
            if (boom == nullptr || boom->antecedent.size() != 2 || boom->succedent.size() != 1 ||
                !boom->antecedent[0].is_variable() || !boom->succedent[0].is_variable())
                throw std::invalid_argument("translate_bk: target system lacks explosion rule " +
                                            node.rule + "s");
            Formula g = substitute(r->antecedent[0], node.subst);
            LinearDerivation out;
            int s1 = push_step(out.steps, g, Justification::premise());
            int s2 = push_step(out.steps, neg_f(g), Justification::premise());
            Substitution bs;
            bs[boom->antecedent[0].head()] = g;
            bs[boom->succedent[0].head()] = goal;
            out.qed = push_step(out.steps, goal,
                                Justification::rule(node.rule + "s", {s1, s2}, bs));
            return out;
        }
        if (r->succedent.size() == 1) {
            Formula succ_img = substitute(r->succedent[0], node.subst);
            FormulaSet child_label = label;
            child_label.insert(succ_img);
            LinearDerivation sub = go(*node.branches[0].second, child_label);

            const RuleSchema* hr = h_bk.find_rule(node.rule);
            if (hr == nullptr || hr->antecedent != r->antecedent ||
                hr->succedent != r->succedent)
                throw std::invalid_argument("translate_bk: rule " + node.rule +
                                            " is not shared by the target system");
            LinearDerivation out;
            std::map<Formula, int> premise_at;
            std::vector<int> refs;
            for (const Formula& a : r->antecedent) {
                Formula ai = substitute(a, node.subst);
                auto it = premise_at.find(ai);
                int idx;
                if (it != premise_at.end()) {
                    idx = it->second;
                } else {
                    idx = push_step(out.steps, ai, Justification::premise());
                    premise_at.emplace(ai, idx);
                }
                refs.push_back(idx);
            }
            int rs = push_step(out.steps, succ_img,
                               Justification::rule(node.rule, refs, node.subst));
            premise_at.emplace(succ_img, rs);
            out.qed = append_derivation(out.steps, sub, premise_at);
            return out;
        }
        if (r->succedent.size() != 2 || node.branches.size() != 2)
            throw std::logic_error("translate_bk: unsupported branching width in rule " +
                                   node.rule);
        Formula fb = node.branches[0].first;
        Formula gb = node.branches[1].first;
        FormulaSet l1 = label;
        l1.insert(fb);
        FormulaSet l2 = label;
        l2.insert(gb);
        LinearDerivation p1 = go(*node.branches[0].second, l1);
        LinearDerivation p2 = go(*node.branches[1].second, l2);
        Statement c1{l1, {goal}};
        Statement c2{l2, {goal}};
        TransformResult de = disjunction_elim(h_bk, p1, c1, p2, c2, fb, gb);
        return de.derivation;
    };

    FormulaSet root_label(t.root_label.begin(), t.root_label.end());
    LinearDerivation out = go(*t.root, root_label);
    VerifyResult ov = verify_derivation(h_bk, out, claim);
    if (!ov.accepted)
        throw std::logic_error("translate_bk: output failed verification (" + ov.reason + " at " +
                               ov.location + ")");
    return {std::move(out), claim};
}

// ------------------------------------------------------- system comparison

std::string canonical_rule_form(const RuleSchema& r) {
    std::set<std::string> var_set = r.schema_variables();
    std::vector<std::string> vars(var_set.begin(), var_set.end());

    auto render_with = [&](const Substitution& s) {
        std::vector<std::string> a, b;
        for (const Formula& f : r.antecedent) a.push_back(render_formula(substitute(f, s)));
        for (const Formula& f : r.succedent) b.push_back(render_formula(substitute(f, s)));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::string out = (r.kind == SystemKind::SetSet) ? "setset " : "setfmla ";
        out += a.empty() ? "-" : join(a, ", ");
        out += " |- ";
        out += b.empty() ? "-" : join(b, ", ");
        return out;
    };

    if (vars.empty()) return render_with({});
    std::vector<int> perm(vars.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        Substitution s;
        for (std::size_t i = 0; i < vars.size(); ++i)
            s[vars[i]] = Formula::variable("x" + std::to_string(perm[i]));
        std::string form = render_with(s);
        if (best.empty() || form < best) best = form;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

SystemComparison compare_systems(const HSystem& a, const HSystem& b) {
    std::map<std::string, std::vector<std::string>> fa, fb;
    for (const RuleSchema& r : a.rules) fa[canonical_rule_form(r)].push_back(r.name);
    for (const RuleSchema& r : b.rules) fb[canonical_rule_form(r)].push_back(r.name);

    SystemComparison out;
    for (const auto& [form, names] : fa) {
        auto it = fb.find(form);
        std::size_t matched = (it != fb.end()) ? it->second.size() : 0;
        for (std::size_t i = matched; i < names.size(); ++i) out.only_in_a.push_back(names[i]);
    }
    for (const auto& [form, names] : fb) {
        auto it = fa.find(form);
        std::size_t matched = (it != fa.end()) ? it->second.size() : 0;
        for (std::size_t i = matched; i < names.size(); ++i) out.only_in_b.push_back(names[i]);
    }
    out.equal = a.kind == b.kind && out.only_in_a.empty() && out.only_in_b.empty();
    return out;
}

bool systems_equal_up_to_renaming(const HSystem& a, const HSystem& b) {
    return compare_systems(a, b).equal;
}

// --------------------------------------------------------- derivability

SearchOutcome derive_rule_in(const HSystem& sys, const RuleSchema& r, const SearchConfig& cfg) {
    Statement st;
    st.antecedent = FormulaSet(r.antecedent.begin(), r.antecedent.end());
    st.succedent = FormulaSet(r.succedent.begin(), r.succedent.end());
    if (sys.kind == SystemKind::SetSet) return prove_setset_analytic(sys, st, cfg).outcome;
    if (st.succedent.size() != 1)
        throw std::invalid_argument(
            "derive_rule_in: a single-conclusion system cannot state rule " + r.name);
    return prove_setfmla_bounded(sys, st, cfg).outcome;
}

bool InterderivabilityReport::all_proved() const {
    for (const RuleDerivability& r : a_in_b)
        if (r.outcome != SearchOutcome::Proved) return false;
    for (const RuleDerivability& r : b_in_a)
        if (r.outcome != SearchOutcome::Proved) return false;
    return true;
}

InterderivabilityReport rule_interderivability(const HSystem& a, const HSystem& b,
                                               const SearchConfig& cfg) {
    InterderivabilityReport rep;
    for (const RuleSchema& r : a.rules) rep.a_in_b.push_back({r.name, derive_rule_in(b, r, cfg)});
    for (const RuleSchema& r : b.rules) rep.b_in_a.push_back({r.name, derive_rule_in(a, r, cfg)});
    return rep;
}

} // namespace wk
