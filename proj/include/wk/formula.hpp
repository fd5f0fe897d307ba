// Propositional signatures, formula trees, parsing/printing, substitution,
// one-sided schema matching, and generalized subformula computation.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace wk {

// A propositional signature: connective name -> arity.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::map<std::string, int> connectives);

    bool has(const std::string& name) const;
    int arity(const std::string& name) const; // throws std::out_of_range if unknown
    const std::map<std::string, int>& connectives() const { return conn_; }

    // The three stock signatures.
    static const Signature& and_or_not();     // ~:1  &:2  |:2
    static const Signature& imp_not();        // ~:1  ->:2
    static const Signature& and_or_imp_not(); // ~:1  &:2  |:2  ->:2

private:
    std::map<std::string, int> conn_;
};

// Immutable formula tree: a variable leaf or a connective application.
// Copies share structure; equality is syntactic identity (compared via the
// canonical rendering, which is injective). Ordering is (size, rendered text).
class Formula {
public:
    Formula() = default; // invalid sentinel; using it beyond assignment throws

    static Formula variable(const std::string& name);
    static Formula apply(const std::string& connective, std::vector<Formula> args);

    bool valid() const { return node_ != nullptr; }
    bool is_variable() const;
    const std::string& head() const; // variable name, or connective name
    const std::vector<Formula>& args() const;
    int size() const;                // node count
    const std::string& text() const; // canonical rendering

    std::set<std::string> variables() const;

    bool operator==(const Formula& o) const;
    bool operator!=(const Formula& o) const { return !(*this == o); }
    bool operator<(const Formula& o) const;

private:
    struct Node;
    std::shared_ptr<const Node> node_;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    const Node& node() const; // throws std::logic_error on an empty value
};

using FormulaSet = std::set<Formula>; // iteration order == canonical order

// Finite-domain variable replacement; identity outside the domain.
using Substitution = std::map<std::string, Formula>;

struct ParseError : std::runtime_error {
    std::size_t position; // 0-based offset into the input text
    ParseError(const std::string& msg, std::size_t pos);
};

// Grammar (ASCII aliases accepted on input; canonical spellings ~ & | ->):
//   formula := imp ; imp := or ( "->" imp )? ; or := and ( ("|"|"\/") and )* ;
//   and := neg ( ("&"|"/\\") neg )* ; neg := ("~"|"!") neg | atom ;
//   atom := VAR | "(" formula ")" ; VAR := [a-z][a-z0-9_]* .
// Precedence ~ > & > | > ->, with -> right-associative.
// When expand_arrow is true and sig lacks ->, each a -> b is built as ~a | b.
Formula parse_formula(const std::string& text, const Signature& sig, bool expand_arrow);

// Canonical minimally parenthesized text; parse_formula round-trips it.
std::string render_formula(const Formula& f);

Formula substitute(const Formula& f, const Substitution& s);

// The unique s with substitute(pattern, s) == target, if any. Repeated
// pattern variables must receive identical images.
std::optional<Substitution> match_schema(const Formula& pattern, const Formula& target);

// Matching with pre-seeded bindings; extends s in place on success and may
// leave partial bindings behind on failure (callers keep their own copy).
bool match_schema_into(const Formula& pattern, const Formula& target, Substitution& s);

// Subformulas of everything in antecedent and succedent, closed under the
// images of the one-variable formulas in theta. Throws std::invalid_argument
// if a theta member does not have exactly one variable.
FormulaSet theta_subformulas(const FormulaSet& antecedent, const FormulaSet& succedent,
                             const std::vector<Formula>& theta);

// Subformulas of a single formula (including itself).
void collect_subformulas(const Formula& f, FormulaSet& out);

// Convenience: parse over the ~ & | signature with arrow expansion on.
Formula fml(const std::string& text);

// Comma-separated formula list; empty/whitespace-only text is the empty set.
std::vector<Formula> parse_formula_list(const std::string& text, const Signature& sig,
                                        bool expand_arrow);

std::string render_formula_list(const std::vector<Formula>& fs);
std::string render_formula_set(const FormulaSet& fs);

} // namespace wk
