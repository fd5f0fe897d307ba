#include "wk/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wk {

// ------------------------------------------------------------------ Algebra

int Algebra::value_index(const std::string& name) const {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] == name) return static_cast<int>(i);
    throw std::out_of_range("algebra: unknown value '" + name + "'");
}

int Algebra::apply(const std::string& connective, const std::vector<int>& args) const {
    auto at = tables.find(connective);
    auto ar = arities.find(connective);
    if (at == tables.end() || ar == arities.end())
        throw std::out_of_range("algebra: no table for connective '" + connective + "'");
    if (static_cast<int>(args.size()) != ar->second)
        throw std::out_of_range("algebra: arity mismatch for '" + connective + "'");
    int n = static_cast<int>(values.size());
    std::size_t idx = 0;
    for (int a : args) {
        if (a < 0 || a >= n) throw std::out_of_range("algebra: value index out of range");
        idx = idx * n + static_cast<std::size_t>(a);
    }
    return at->second.at(idx);
}

// --------------------------------------------------------------- evaluation

int evaluate(const Formula& f, const Algebra& alg, const Valuation& v) {
    if (f.is_variable()) {
        auto it = v.find(f.head());
        if (it == v.end())
            throw std::out_of_range("evaluate: no assignment for variable '" + f.head() + "'");
        return it->second;
    }
    std::vector<int> args;
    args.reserve(f.args().size());
    for (const Formula& a : f.args()) args.push_back(evaluate(a, alg, v));
    return alg.apply(f.head(), args);
}

std::string render_valuation(const Matrix& m, const Valuation& v) {
    std::string out;
    bool first = true;
    for (const auto& [name, val] : v) {
        if (!first) out += ", ";
        first = false;
        out += name + "=" + m.algebra.values.at(val);
    }
    return out;
}

// -------------------------------------------------------------- consequence

EntailmentVerdict consequence_holds(const Matrix& m, const FormulaSet& antecedent,
                                    const FormulaSet& succedent) {
    std::set<std::string> var_set;
    for (const Formula& f : antecedent)
        for (const auto& x : f.variables()) var_set.insert(x);
    for (const Formula& f : succedent)
        for (const auto& x : f.variables()) var_set.insert(x);
    std::vector<std::string> vars(var_set.begin(), var_set.end());

    const int n = static_cast<int>(m.algebra.values.size());
    std::vector<int> assign(vars.size(), 0);

    for (;;) {
        Valuation v;
        for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = assign[i];

        bool counter = true;
        for (const Formula& f : antecedent)
            if (!m.is_designated(evaluate(f, m.algebra, v))) {
                counter = false;
                break;
            }
        if (counter)
            for (const Formula& f : succedent)
                if (m.is_designated(evaluate(f, m.algebra, v))) {
                    counter = false;
                    break;
                }
        if (counter) return {false, v};

        // odometer: last variable fastest, so the first variable is most
        // significant and countermodels come out in canonical order
        std::size_t i = vars.size();
        for (;;) {
            if (i == 0) return {true, std::nullopt};
            --i;
            if (++assign[i] < n) break;
            assign[i] = 0;
        }
        if (vars.empty()) return {true, std::nullopt};
    }
}

// --------------------------------------------------------------- monadicity

MonadicityReport check_monadicity(const Matrix& m, const std::vector<Formula>& theta) {
    MonadicityReport report;
    const int n = static_cast<int>(m.algebra.values.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::optional<Formula> found;
            for (const Formula& t : theta) {
                std::set<std::string> vars = t.variables();
                if (vars.size() != 1)
                    throw std::invalid_argument("theta member '" + t.text() +
                                                "' must have exactly one variable");
                const std::string& x = *vars.begin();
                int ti = evaluate(t, m.algebra, Valuation{{x, i}});
                int tj = evaluate(t, m.algebra, Valuation{{x, j}});
                if (m.is_designated(ti) != m.is_designated(tj)) {
                    found = t;
                    break;
                }
            }
            report[{i, j}] = found;
        }
    }
    return report;
}

bool fully_monadic(const MonadicityReport& report) {
    for (const auto& [pair, sep] : report)
        if (!sep.has_value()) return false;
    return true;
}

// ----------------------------------------------------------------- classics

const Matrix& classical_matrix() {
    static const Matrix m = [] {
        Matrix cl;
        cl.name = "CL2";
        cl.algebra.values = {"f", "t"};
        cl.algebra.arities = {{"~", 1}, {"&", 2}, {"|", 2}, {"->", 2}};
        cl.algebra.tables["~"] = {1, 0};
        cl.algebra.tables["&"] = {0, 0, 0, 1};
        cl.algebra.tables["|"] = {0, 1, 1, 1};
        cl.algebra.tables["->"] = {1, 1, 0, 1};
        cl.designated = {1};
        return cl;
    }();
    return m;
}

bool companion_oracle(CompanionLogic logic, const FormulaSet& antecedent,
                      const Formula& conclusion) {
    const Matrix& cl = classical_matrix();
    if (logic == CompanionLogic::PWK) {
        std::set<std::string> cvars = conclusion.variables();
        FormulaSet kept;
        for (const Formula& g : antecedent) {
            std::set<std::string> gv = g.variables();
            if (std::includes(cvars.begin(), cvars.end(), gv.begin(), gv.end()))
                kept.insert(g);
        }
        return consequence_holds(cl, kept, FormulaSet{conclusion}).holds;
    }
    // BK
    std::set<std::string> avars;
    for (const Formula& g : antecedent)
        for (const auto& x : g.variables()) avars.insert(x);
    std::set<std::string> cvars = conclusion.variables();
    bool inclusion = std::includes(avars.begin(), avars.end(), cvars.begin(), cvars.end());
    if (inclusion && consequence_holds(cl, antecedent, FormulaSet{conclusion}).holds) return true;
    // explosive premises: no valuation designates all of them
    return consequence_holds(cl, antecedent, FormulaSet{}).holds;
}

// ----------------------------------------------------------------- renaming

bool check_matrix_renaming(const Matrix& m1, const Matrix& m2,
                           const std::map<std::string, std::string>& renaming) {
    const int n = static_cast<int>(m1.algebra.values.size());
    if (static_cast<int>(m2.algebra.values.size()) != n) return false;
    if (m1.algebra.arities != m2.algebra.arities) return false;

    // value-index translation m1 -> m2
    std::vector<int> map(n, -1);
    std::set<int> hit;
    for (int i = 0; i < n; ++i) {
        auto it = renaming.find(m1.algebra.values[i]);
        if (it == renaming.end()) return false;
        int j;
        try {
            j = m2.algebra.value_index(it->second);
        } catch (const std::out_of_range&) {
            return false;
        }
        map[i] = j;
        hit.insert(j);
    }
    if (static_cast<int>(hit.size()) != n) return false; // not a bijection

    std::set<int> image;
    for (int d : m1.designated) image.insert(map[d]);
    if (image != m2.designated) return false;

    for (const auto& [conn, arity] : m1.algebra.arities) {
        std::vector<int> args(arity, 0);
        for (;;) {
            std::vector<int> mapped(arity);
            for (int k = 0; k < arity; ++k) mapped[k] = map[args[k]];
            if (map[m1.algebra.apply(conn, args)] != m2.algebra.apply(conn, mapped)) return false;
            int k = arity;
            for (;;) {
                if (k == 0) goto next_conn;
                --k;
                if (++args[k] < n) break;
                args[k] = 0;
            }
            if (arity == 0) break;
        }
    next_conn:;
    }
    return true;
}

// -------------------------------------------------------------- file format

std::string serialize_matrix(const Matrix& m) {
    std::ostringstream out;
    out << "matrix " << m.name << "\n";
    out << "values";
    for (const auto& v : m.algebra.values) out << " " << v;
    out << "\n";
    out << "designated";
    for (int d : m.designated) out << " " << m.algebra.values.at(d);
    out << "\n";
    const int n = static_cast<int>(m.algebra.values.size());
    for (const auto& [conn, table] : m.algebra.tables) {
        out << "table " << conn << "\n";
        int arity = m.algebra.arities.at(conn);
        if (arity == 2) {
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    if (c) out << " ";
                    out << m.algebra.values.at(table.at(r * n + c));
                }
                out << "\n";
            }
        } else {
            for (std::size_t i = 0; i < table.size(); ++i) {
                if (i) out << " ";
                out << m.algebra.values.at(table[i]);
            }
            out << "\n";
        }
    }
    return out.str();
}

Matrix parse_matrix(const std::string& text) {
    // drop blank and comment lines, keep the header's line structure, then
    // treat table bodies as a flat token stream
    std::string kept;
    {
        std::istringstream raw(text);
        std::string line;
        while (std::getline(raw, line)) {
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            kept += line;
            kept += '\n';
        }
    }
    std::istringstream in(kept);
    Matrix m;
    std::string word;
    if (!(in >> word) || word != "matrix") throw std::runtime_error("matrix file: expected 'matrix'");
    if (!(in >> m.name)) throw std::runtime_error("matrix file: missing name");

    std::string line;
    std::getline(in, line);
    if (!(in >> word) || word != "values") throw std::runtime_error("matrix file: expected 'values'");
    std::getline(in, line);
    {
        std::istringstream ls(line);
        std::string v;
        while (ls >> v) m.algebra.values.push_back(v);
    }
    if (m.algebra.values.empty()) throw std::runtime_error("matrix file: empty carrier");

    if (!(in >> word) || word != "designated")
        throw std::runtime_error("matrix file: expected 'designated'");
    std::getline(in, line);
    {
        std::istringstream ls(line);
        std::string v;
        while (ls >> v) m.designated.insert(m.algebra.value_index(v));
    }

    std::vector<std::string> toks;
    while (in >> word) toks.push_back(word);

    const int n = static_cast<int>(m.algebra.values.size());
    std::size_t i = 0;
    while (i < toks.size()) {
        if (toks[i] != "table") throw std::runtime_error("matrix file: expected 'table'");
        if (++i >= toks.size()) throw std::runtime_error("matrix file: missing connective");
        std::string conn = toks[i++];
        std::vector<int> entries;
        while (i < toks.size() && toks[i] != "table")
            entries.push_back(m.algebra.value_index(toks[i++]));
        int arity = -1;
        std::size_t want = 1;
        for (int a = 0; a <= 3; ++a) {
            if (entries.size() == want) {
                arity = a;
                break;
            }
            want *= static_cast<std::size_t>(n);
        }
        if (arity < 0)
            throw std::runtime_error("matrix file: table for '" + conn +
                                     "' has a non-power-of-carrier entry count");
        m.algebra.arities[conn] = arity;
        m.algebra.tables[conn] = std::move(entries);
    }
    return m;
}

} // namespace wk
