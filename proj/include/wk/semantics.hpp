// Finite algebras, logical matrices, valuation enumeration, semantic
// consequence with countermodels, separator checking, and the classical-logic
// variable-inclusion oracles.
#pragma once

#include "wk/formula.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wk {

// Finite algebra: named carrier in declared order plus one total truth table
// per connective. Values are carrier indices; tables are row-major (for a
// binary connective, entry [a*n + b] is the output on (a, b)).
struct Algebra {
    std::vector<std::string> values;
    std::map<std::string, int> arities;
    std::map<std::string, std::vector<int>> tables;

    int value_index(const std::string& name) const; // throws if unknown
    int apply(const std::string& connective, const std::vector<int>& args) const;
};

struct Matrix {
    std::string name;
    Algebra algebra;
    std::set<int> designated;

    bool is_designated(int v) const { return designated.count(v) != 0; }
};

// Total assignment of carrier indices to the variables under evaluation.
using Valuation = std::map<std::string, int>;

struct EntailmentVerdict {
    bool holds = false;
    std::optional<Valuation> countermodel; // present iff !holds
};

std::string render_valuation(const Matrix& m, const Valuation& v);

// Bottom-up table evaluation. Throws std::out_of_range on a missing variable
// assignment or missing connective table.
int evaluate(const Formula& f, const Algebra& alg, const Valuation& v);

// Enumerates every valuation over the statement's variables (variables in
// name order, first variable most significant, carrier in declared order) and
// reports the first one designating all of antecedent and none of succedent,
// if any.
EntailmentVerdict consequence_holds(const Matrix& m, const FormulaSet& antecedent,
                                    const FormulaSet& succedent);

// For each pair of distinct carrier values (indices i < j), the first theta
// member (in the given order) mapping one value into the designated set and
// the other out of it, or absent.
using MonadicityReport = std::map<std::pair<int, int>, std::optional<Formula>>;
MonadicityReport check_monadicity(const Matrix& m, const std::vector<Formula>& theta);
bool fully_monadic(const MonadicityReport& report);

enum class CompanionLogic { PWK, BK };

// Variable-inclusion characterizations over the two-valued classical matrix:
// PWK holds iff the premises whose variables lie inside the conclusion's
// already entail it classically; BK holds iff the premises entail the
// conclusion classically with the conclusion's variables contained in
// theirs, or the premises are classically unsatisfiable.
bool companion_oracle(CompanionLogic logic, const FormulaSet& antecedent,
                      const Formula& conclusion);

// True iff the value-name bijection maps m1's designated set onto m2's and
// commutes with every truth table.
bool check_matrix_renaming(const Matrix& m1, const Matrix& m2,
                           const std::map<std::string, std::string>& renaming);

// Matrix definition file format:
//   matrix NAME
//   values v1 v2 ...
//   designated vi ...
//   table CONN
//   <n^arity output tokens in row-major order>
std::string serialize_matrix(const Matrix& m);
Matrix parse_matrix(const std::string& text);

// The two-valued classical matrix over ~ & | -> (values f t, designated t).
const Matrix& classical_matrix();

} // namespace wk
