// System- and proof-level transformations: disjunctive conversion of
// multiple-conclusion systems, dualization, rule lifting, assembly of the
// single-conclusion BK systems with their derived-rule registry, the
// deduction-theorem family of proof transforms, disjunction elimination, and
// the tree-to-linear completeness translation.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "wk/calculus.hpp"

namespace wk {

// Deterministic fresh-variable source: candidates are prefix0, prefix1, ...
// and reserved names are never emitted.
class FreshNamer {
public:
    FreshNamer() = default;
    explicit FreshNamer(std::string prefix, std::set<std::string> reserved = {});

    void reserve(const std::string& name);
    void reserve_system(const HSystem& sys);

    // First candidate outside the reserved and avoid sets; does not consume.
    std::string fresh(const std::set<std::string>& avoid = {}) const;
    // As fresh(), but consumes the result so later next() calls move on.
    std::string next();

private:
    std::string prefix_ = "v";
    std::set<std::string> reserved_;
    int counter_ = 0;
};

// Left-associated disjunction of the operands in the order given.
// Throws std::invalid_argument on an empty sequence.
Formula big_or(const std::vector<Formula>& operands);

struct OrConvertReport {
    struct Discarded {
        std::string source_rule;
        RuleSchema image; // the trivial f / f conversion image
    };
    std::vector<Discarded> discarded;
};

// Single-conclusion companion of a multiple-conclusion system: four
// disjunction-handling rules (contraction, weakening, commutativity,
// re-association) plus one converted image per input rule. A rule f1..fm / G
// converts to f1|c, ..., fm|c / (g1| ... |gk)|c with c fresh across the whole
// system; an empty succedent converts to the bare c, an axiom 0 / g is kept
// verbatim, and images of the shape f / f are dropped and reported.
HSystem or_convert_system(const HSystem& setset, FreshNamer& fresh,
                          OrConvertReport* report = nullptr);

// Swaps each rule's sides and interchanges & with | throughout the formulas.
// An involution; rule names and declared orders are preserved.
HSystem dualize_system(const HSystem& setset);

enum class LiftMode { Or, Imp };

// Or:  c|f1, ..., c|fm / c|g.  Imp:  ~c|f1, ..., ~c|fm / ~c|g.
// c is the namer's first name avoiding the rule's own variables; the lifted
// rule keeps the source name with a "v" suffix.
RuleSchema lift_rule(const RuleSchema& r, LiftMode mode, const FreshNamer& fresh);

// Succedent variables contained in the antecedent variables.
bool satisfies_containment(const RuleSchema& r);

struct BkAssembly {
    HSystem star; // branching rules 8, 9, 15, 16 replaced by single-succedent forms
    HSystem h;    // 24 core single-conclusion schemas plus 23 disjunctive lifts
};

// Builds the two derived BK systems from the shipped 20-rule
// multiple-conclusion system. Throws std::invalid_argument when the input
// does not match that system rule-for-rule up to variable renaming.
BkAssembly assemble_bk_systems(const HSystem& r_bk);

// 2m+2-step template deriving the double lift v1|(v0|f1), ... / v1|(v0|g) of
// a core rule: associate every premise leftward (BK21), apply the rule's
// primitive lift at v1|v0, associate back (BK27). Requires the BK27 derived
// rule to be registered already; rejects the explosion rule.
LinearDerivation lifted_derivation_scheme(const HSystem& h_bk, const RuleSchema& core_rule);

// Registers the derived-rule registry on the assembled single-conclusion
// system: re-association (BK27) and detachment (BK26) helpers, the double
// lifts of all liftable core rules, and BK25, BK28, BK29a, BK29b, BK29, BK30.
void register_bk_derived(HSystem& h_bk);

struct TransformResult {
    LinearDerivation derivation;
    Statement claim;
};

// From a verified proof of G, f|g, d |- c with d in {f, g} and no
// explosion-rule steps, builds a verified proof of G, f|g |- ~d|c.
TransformResult deduction_transform(const HSystem& sys, const LinearDerivation& d,
                                    const Statement& claim, const Formula& phi,
                                    const Formula& psi, const Formula& delta);

// From a verified proof of G, f|g, d |- ~d with d in {f, g}, builds a
// verified proof of G, f|g |- ~d; explosion-rule steps are allowed.
TransformResult neg_deduction_transform(const HSystem& sys, const LinearDerivation& d,
                                        const Statement& claim, const Formula& phi,
                                        const Formula& psi, const Formula& delta);

// From a verified proof of G, f|g, d1 |- c that applies the explosion rule,
// builds a verified proof of G, f|g |- d2 for the other disjunct d2.
TransformResult explosion_transform(const HSystem& sys, const LinearDerivation& d,
                                    const Statement& claim, const Formula& phi,
                                    const Formula& psi, const Formula& delta1);

// Combines verified proofs of G, f|g, f |- c and G, f|g, g |- c into a
// verified proof of G, f|g |- c.
TransformResult disjunction_elim(const HSystem& sys,
                                 const LinearDerivation& d1, const Statement& claim1,
                                 const LinearDerivation& d2, const Statement& claim2,
                                 const Formula& phi, const Formula& psi);

// Translates a verified tree derivation with a singleton succedent into a
// verified linear derivation of the same claim: closed leaves become premise
// steps, discontinuations become explosion steps, single-succedent
// expansions are replayed, and branchings combine via disjunction_elim.
TransformResult translate_bk(const HSystem& star, const HSystem& h_bk,
                             const TreeDerivation& t, const Statement& claim);

// Lexicographically least rendering of the rule over injective variable
// renamings into x0, x1, ..., with both sides sorted; two rules get the same
// string exactly when they are equal up to renaming and side order.
std::string canonical_rule_form(const RuleSchema& r);

struct SystemComparison {
    bool equal = false;
    std::vector<std::string> only_in_a; // names of a-rules with no match in b
    std::vector<std::string> only_in_b;
};

// Rule-multiset comparison up to variable renaming and rule order.
SystemComparison compare_systems(const HSystem& a, const HSystem& b);
bool systems_equal_up_to_renaming(const HSystem& a, const HSystem& b);

// Bounded search for one rule's statement inside a system: analytic tree
// search when the system is multiple-conclusion, forward saturation
// otherwise.
SearchOutcome derive_rule_in(const HSystem& sys, const RuleSchema& r, const SearchConfig& cfg);

struct RuleDerivability {
    std::string rule;
    SearchOutcome outcome = SearchOutcome::NoProof;
};

struct InterderivabilityReport {
    std::vector<RuleDerivability> a_in_b;
    std::vector<RuleDerivability> b_in_a;

    bool all_proved() const;
};

// Tries to derive every rule of a inside b and vice versa within the budget.
InterderivabilityReport rule_interderivability(const HSystem& a, const HSystem& b,
                                               const SearchConfig& cfg);

} // namespace wk
