// Rule schemas and proof systems of both kinds, derivation objects (linear
// and tree), derivation verification, analytic multiple-conclusion proof
// search, and bounded single-conclusion forward search.
#pragma once

#include "wk/formula.hpp"
#include "wk/semantics.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wk {

enum class SystemKind { SetSet, SetFmla };

std::string kind_name(SystemKind k);

// Named statement template. Sides are duplicate-free and keep their declared
// order (which fixes branch order in tree derivations and disjunction order
// in system conversions); set-like comparisons sort them canonically.
struct RuleSchema {
    std::string name;
    std::vector<Formula> antecedent;
    std::vector<Formula> succedent;
    SystemKind kind = SystemKind::SetSet;

    std::set<std::string> schema_variables() const;
};

// One statement: antecedent set and succedent set (singleton succedent in the
// single-conclusion world).
struct Statement {
    FormulaSet antecedent;
    FormulaSet succedent;
};

// Justification of one linear-derivation step. refs are 1-based indices of
// earlier steps, listed positionally: the i-th ref carries the image of the
// i-th antecedent formula of the (first) rule. A chain applies its first rule
// to the refs and each later rule (which must be single-premise) to the
// previous chain output; substitutions are per chained rule.
struct Justification {
    enum class Kind { Premise, Rule, Derived, Chain };
    Kind kind = Kind::Premise;
    std::vector<std::string> rules;
    std::vector<int> refs;
    std::vector<Substitution> substs;

    static Justification premise();
    static Justification rule(std::string name, std::vector<int> refs, Substitution s);
    static Justification derived(std::string name, std::vector<int> refs, Substitution s);
    static Justification chain(std::vector<std::string> names, std::vector<int> refs,
                               std::vector<Substitution> substs);
};

struct Step {
    int index = 0; // 1-based, equals position in the sequence
    Formula formula;
    Justification just;
};

struct LinearDerivation {
    std::vector<Step> steps;
    int qed = 0; // index of the concluding step; 0 means the last step

    int conclusion_index() const;
    const Formula& conclusion() const;
    FormulaSet premises() const;
};

// Node of a multiple-conclusion derivation tree. Labels are implicit: the
// root carries the claim's antecedent and each branch adds its formula.
struct TreeNode {
    enum class Kind { Apply, Close };
    Kind kind = Kind::Close;

    // Close: the label formula that meets the claimed succedent.
    Formula close_with;

    // Apply: rule + substitution; either one discontinuation child (for an
    // empty-succedent rule) or one branch per succedent formula, in the
    // rule's declared succedent order.
    std::string rule;
    Substitution subst;
    bool star = false;
    std::vector<std::pair<Formula, std::shared_ptr<TreeNode>>> branches;

    static std::shared_ptr<TreeNode> close(Formula with);
    static std::shared_ptr<TreeNode> discontinue(std::string rule, Substitution s);
    static std::shared_ptr<TreeNode> apply(std::string rule, Substitution s,
                                           std::vector<std::pair<Formula, std::shared_ptr<TreeNode>>> branches);
};

struct TreeDerivation {
    std::vector<Formula> root_label;
    std::shared_ptr<TreeNode> root;
};

// A derived rule: schema plus a verifying template derivation whose premise
// steps list the schema antecedent in declared order and whose conclusion is
// the schema succedent.
struct DerivedRule {
    RuleSchema schema;
    LinearDerivation body;
};

struct HSystem {
    std::string name;
    SystemKind kind = SystemKind::SetSet;
    std::vector<RuleSchema> rules;
    std::vector<std::pair<std::string, DerivedRule>> derived; // registration order

    const RuleSchema* find_rule(const std::string& name) const;
    const DerivedRule* find_derived(const std::string& name) const;
    std::set<std::string> all_variables() const;

    // Registers a derived rule after checking that its body verifies against
    // the rules and previously registered derived rules. Throws on failure.
    void register_derived(const std::string& name, DerivedRule rule);
};

// System definition file format:
//   system NAME setset|setfmla
//   rule NAME : f1, f2 |- g1, g2     (an empty side is written '-')
std::string serialize_system(const HSystem& sys);
HSystem parse_system(const std::string& text);

// ---------------------------------------------------------------- checking

EntailmentVerdict rule_sound(const Matrix& m, const RuleSchema& r);

struct VerifyResult {
    bool accepted = false;
    std::string location; // "step 3" or a branch path like "node 1.2"
    std::string reason;   // machine-readable code, empty when accepted
    std::string detail;   // human-readable elaboration

    static VerifyResult ok() { return {true, "", "", ""}; }
    static VerifyResult fail(std::string loc, std::string code, std::string detail);
};

VerifyResult verify_derivation(const HSystem& sys, const LinearDerivation& d,
                               const Statement& claim);
VerifyResult verify_derivation(const HSystem& sys, const TreeDerivation& d,
                               const Statement& claim);

// Expands every derived and chain step into primitive rule applications.
// Throws std::runtime_error on an unknown derived rule or malformed chain.
LinearDerivation expand_derived(const HSystem& sys, const LinearDerivation& d);

// ------------------------------------------------------------------ search

struct SearchConfig {
    std::vector<Formula> theta;         // defaults to {x, ~x} when empty
    std::optional<FormulaSet> universe; // overrides the theta-subformula universe
    long max_nodes = 200000;            // tree-search node budget
    long max_steps = 20000;             // forward-search step budget
    std::size_t universe_cap = 500;     // cap on the forward-search universe

    std::vector<Formula> effective_theta() const;
};

enum class SearchOutcome { Proved, NoProof, BudgetExhausted };

struct TreeSearchResult {
    SearchOutcome outcome = SearchOutcome::NoProof;
    std::optional<TreeDerivation> proof;
    long nodes = 0;
};

// Decision procedure for the analytic systems: searches node labels inside
// the theta-subformula universe of the claim, saturating with
// single-succedent instances, closing on succedent overlap or an
// empty-succedent instance, branching on multi-succedent instances whose
// succedent formulas are all new, and memoizing failed labels.
TreeSearchResult prove_setset_analytic(const HSystem& sys, const Statement& claim,
                                       const SearchConfig& cfg);

struct LinearSearchResult {
    SearchOutcome outcome = SearchOutcome::NoProof; // NoProof is inconclusive here
    std::optional<LinearDerivation> proof;
    long steps = 0;
};

// Forward saturation over a capped universe (theta-subformulas of the claim
// plus one layer of disjunctions). A NoProof outcome is explicitly
// inconclusive; BudgetExhausted means the step budget ran out.
LinearSearchResult prove_setfmla_bounded(const HSystem& sys, const Statement& claim,
                                         const SearchConfig& cfg);

// ------------------------------------------------------------- file formats

// Linear derivation file:
//   system: ID
//   claim: f1, f2 |- g
//   1. premise <formula>
//   2. RULE [1] {p := <formula>, ...} : <formula>
//   3. chain R1,R2 [2] {..} {..} : <formula>
//   qed 3
// The ': <formula>' display is optional input; the checker recomputes every
// formula and rejects mismatches.
//
// Tree derivation file:
//   system: ID
//   claim: f1, f2 |- g1, g2
//   node { rule RULE {subst}
//     branch <formula> { ... }
//   }
// with leaves 'star' (inside a node, after an empty-succedent rule) and
// 'close <formula>'.
struct DerivationDocument {
    std::string system_id;
    Statement claim;
    SystemKind kind = SystemKind::SetFmla;
    std::optional<LinearDerivation> linear;
    std::optional<TreeDerivation> tree;
};

std::string serialize_derivation(const DerivationDocument& doc, const Signature& sig);
DerivationDocument parse_derivation(const std::string& text, const Signature& sig,
                                    SystemKind kind);

// Reads just the "system:" header of a serialized derivation, so callers can
// pick the matching signature and kind before a full parse.
std::string peek_derivation_system(const std::string& text);

std::string render_statement(const Statement& s);
std::string render_substitution(const Substitution& s);

} // namespace wk
