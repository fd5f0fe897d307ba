#include "wk/formula.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace wk {

// ---------------------------------------------------------------- Signature

Signature::Signature(std::map<std::string, int> connectives) : conn_(std::move(connectives)) {
    for (const auto& [name, arity] : conn_) {
        if (name.empty() || arity < 0)
            throw std::invalid_argument("signature: bad connective '" + name + "'");
    }
}

bool Signature::has(const std::string& name) const { return conn_.count(name) != 0; }

int Signature::arity(const std::string& name) const {
    auto it = conn_.find(name);
    if (it == conn_.end()) throw std::out_of_range("signature: unknown connective '" + name + "'");
    return it->second;
}

const Signature& Signature::and_or_not() {
    static const Signature s(std::map<std::string, int>{{"~", 1}, {"&", 2}, {"|", 2}});
    return s;
}

const Signature& Signature::imp_not() {
    static const Signature s(std::map<std::string, int>{{"~", 1}, {"->", 2}});
    return s;
}

const Signature& Signature::and_or_imp_not() {
    static const Signature s(std::map<std::string, int>{{"~", 1}, {"&", 2}, {"|", 2}, {"->", 2}});
    return s;
}

// ------------------------------------------------------------------ Formula

struct Formula::Node {
    bool var;
    std::string head;
    std::vector<Formula> args;
    int size;
    std::string text;
};

namespace {

int precedence(const std::string& op) {
    if (op == "~") return 4;
    if (op == "&") return 3;
    if (op == "|") return 2;
    if (op == "->") return 1;
    return 0; // unknown connective: always parenthesized
}

bool right_associative(const std::string& op) { return op == "->"; }

std::string render_node(bool var, const std::string& head, const std::vector<Formula>& args) {
    if (var) return head;
    if (head == "~") {
        const Formula& a = args[0];
        bool parens = !a.is_variable() && precedence(a.head()) < precedence("~");
        return parens ? "~(" + a.text() + ")" : "~" + a.text();
    }
    if (args.size() == 2 && precedence(head) > 0) {
        int p = precedence(head);
        auto side = [&](const Formula& child, bool is_left) {
            if (child.is_variable()) return child.text();
            int cp = precedence(child.head());
            bool parens = cp < p;
            if (!parens && cp == p) {
                // same precedence: parenthesize the non-associative side
                parens = right_associative(head) ? is_left : !is_left;
            }
            return parens ? "(" + child.text() + ")" : child.text();
        };
        return side(args[0], true) + " " + head + " " + side(args[1], false);
    }
    // generic fallback for exotic arities
    std::string out = head + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += args[i].text();
    }
    return out + ")";
}

} // namespace

Formula Formula::variable(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("formula: empty variable name");
    auto n = std::make_shared<Node>();
    n->var = true;
    n->head = name;
    n->size = 1;
    n->text = name;
    return Formula(std::move(n));
}

Formula Formula::apply(const std::string& connective, std::vector<Formula> args) {
    auto n = std::make_shared<Node>();
    n->var = false;
    n->head = connective;
    n->size = 1;
    for (const Formula& a : args) {
        if (!a.valid()) throw std::invalid_argument("formula: invalid argument");
        n->size += a.size();
    }
    n->args = std::move(args);
    n->text = render_node(false, n->head, n->args);
    return Formula(std::move(n));
}

const Formula::Node& Formula::node() const {
    if (!node_) throw std::logic_error("formula: use of empty formula value");
    return *node_;
}

bool Formula::is_variable() const { return node().var; }
const std::string& Formula::head() const { return node().head; }
const std::vector<Formula>& Formula::args() const { return node().args; }
int Formula::size() const { return node().size; }
const std::string& Formula::text() const { return node().text; }

std::set<std::string> Formula::variables() const {
    std::set<std::string> out;
    std::vector<const Formula*> stack{this};
    while (!stack.empty()) {
        const Formula* f = stack.back();
        stack.pop_back();
        if (f->is_variable()) {
            out.insert(f->head());
        } else {
            for (const Formula& a : f->args()) stack.push_back(&a);
        }
    }
    return out;
}

bool Formula::operator==(const Formula& o) const {
    if (node_ == o.node_) return true;
    if (!node_ || !o.node_) return false;
    return node_->size == o.node_->size && node_->text == o.node_->text;
}

bool Formula::operator<(const Formula& o) const {
    const Node& a = node();
    const Node& b = o.node();
    if (a.size != b.size) return a.size < b.size;
    return a.text < b.text;
}

std::string render_formula(const Formula& f) { return f.text(); }

// ------------------------------------------------------------------- Parser

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}

namespace {

struct Lexer {
    enum class Tok { Var, Not, And, Or, Imp, LParen, RParen, End };

    const std::string& src;
    std::size_t pos = 0;
    Tok tok = Tok::End;
    std::string var_name;
    std::size_t tok_pos = 0;

    explicit Lexer(const std::string& s) : src(s) { advance(); }

    void advance() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
        tok_pos = pos;
        if (pos >= src.size()) {
            tok = Tok::End;
            return;
        }
        char c = src[pos];
        if (c == '~' || c == '!') {
            tok = Tok::Not;
            ++pos;
        } else if (c == '&') {
            tok = Tok::And;
            ++pos;
        } else if (c == '|') {
            tok = Tok::Or;
            ++pos;
        } else if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '\\') {
            tok = Tok::And;
            pos += 2;
        } else if (c == '\\' && pos + 1 < src.size() && src[pos + 1] == '/') {
            tok = Tok::Or;
            pos += 2;
        } else if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
            tok = Tok::Imp;
            pos += 2;
        } else if (c == '(') {
            tok = Tok::LParen;
            ++pos;
        } else if (c == ')') {
            tok = Tok::RParen;
            ++pos;
        } else if (c >= 'a' && c <= 'z') {
            std::size_t start = pos;
            ++pos;
            while (pos < src.size() &&
                   ((src[pos] >= 'a' && src[pos] <= 'z') ||
                    (src[pos] >= '0' && src[pos] <= '9') || src[pos] == '_'))
                ++pos;
            tok = Tok::Var;
            var_name = src.substr(start, pos - start);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", pos);
        }
    }
};

struct Parser {
    Lexer lx;
    const Signature& sig;
    bool expand_arrow;

    Parser(const std::string& s, const Signature& g, bool ea) : lx(s), sig(g), expand_arrow(ea) {}

    void need(const std::string& conn, std::size_t at) const {
        if (!sig.has(conn))
            throw ParseError("connective " + conn + " not in signature", at);
    }

    Formula parse_imp() {
        Formula left = parse_or();
        if (lx.tok == Lexer::Tok::Imp) {
            std::size_t at = lx.tok_pos;
            lx.advance();
            Formula right = parse_imp(); // right-associative
            if (sig.has("->")) return Formula::apply("->", {left, right});
            if (!expand_arrow) throw ParseError("connective -> not in signature", at);
            need("~", at);
            need("|", at);
            return Formula::apply("|", {Formula::apply("~", {left}), right});
        }
        return left;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (lx.tok == Lexer::Tok::Or) {
            std::size_t at = lx.tok_pos;
            need("|", at);
            lx.advance();
            f = Formula::apply("|", {f, parse_and()});
        }
        return f;
    }

    Formula parse_and() {
        Formula f = parse_neg();
        while (lx.tok == Lexer::Tok::And) {
            std::size_t at = lx.tok_pos;
            need("&", at);
            lx.advance();
            f = Formula::apply("&", {f, parse_neg()});
        }
        return f;
    }

    Formula parse_neg() {
        if (lx.tok == Lexer::Tok::Not) {
            std::size_t at = lx.tok_pos;
            need("~", at);
            lx.advance();
            return Formula::apply("~", {parse_neg()});
        }
        return parse_atom();
    }

    Formula parse_atom() {
        if (lx.tok == Lexer::Tok::Var) {
            Formula f = Formula::variable(lx.var_name);
            lx.advance();
            return f;
        }
        if (lx.tok == Lexer::Tok::LParen) {
            lx.advance();
            Formula f = parse_imp();
            if (lx.tok != Lexer::Tok::RParen) throw ParseError("expected ')'", lx.tok_pos);
            lx.advance();
            return f;
        }
        throw ParseError("expected a variable, '~' or '('", lx.tok_pos);
    }
};

} // namespace

Formula parse_formula(const std::string& text, const Signature& sig, bool expand_arrow) {
    Parser p(text, sig, expand_arrow);
    Formula f = p.parse_imp();
    if (p.lx.tok != Lexer::Tok::End) throw ParseError("trailing input", p.lx.tok_pos);
    return f;
}

Formula fml(const std::string& text) { return parse_formula(text, Signature::and_or_not(), true); }

std::vector<Formula> parse_formula_list(const std::string& text, const Signature& sig,
                                        bool expand_arrow) {
    std::vector<Formula> out;
    std::size_t start = 0;
    bool any_token = false;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            std::string piece = text.substr(start, i - start);
            std::size_t a = piece.find_first_not_of(" \t");
            if (a != std::string::npos) {
                any_token = true;
                out.push_back(parse_formula(piece, sig, expand_arrow));
            } else if (i < text.size() || !out.empty()) {
                // a comma with an empty side is a syntax error, but a fully
                // empty/blank string is the empty list
                if (any_token || i < text.size())
                    throw ParseError("empty formula in list", start);
            }
            start = i + 1;
        }
    }
    return out;
}

std::string render_formula_list(const std::vector<Formula>& fs) {
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i) out += ", ";
        out += fs[i].text();
    }
    return out;
}

std::string render_formula_set(const FormulaSet& fs) {
    std::string out;
    bool first = true;
    for (const Formula& f : fs) {
        if (!first) out += ", ";
        first = false;
        out += f.text();
    }
    return out;
}

// ------------------------------------------------- substitution & matching

Formula substitute(const Formula& f, const Substitution& s) {
    if (f.is_variable()) {
        auto it = s.find(f.head());
        return it == s.end() ? f : it->second;
    }
    std::vector<Formula> args;
    args.reserve(f.args().size());
    bool changed = false;
    for (const Formula& a : f.args()) {
        args.push_back(substitute(a, s));
        if (args.back() != a) changed = true;
    }
    if (!changed) return f;
    return Formula::apply(f.head(), std::move(args));
}

namespace {

bool match_into(const Formula& pattern, const Formula& target, Substitution& s) {
    if (pattern.is_variable()) {
        auto it = s.find(pattern.head());
        if (it != s.end()) return it->second == target;
        s.emplace(pattern.head(), target);
        return true;
    }
    if (target.is_variable()) return false;
    if (pattern.head() != target.head()) return false;
    if (pattern.args().size() != target.args().size()) return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!match_into(pattern.args()[i], target.args()[i], s)) return false;
    return true;
}

} // namespace

std::optional<Substitution> match_schema(const Formula& pattern, const Formula& target) {
    Substitution s;
    if (match_into(pattern, target, s)) return s;
    return std::nullopt;
}

bool match_schema_into(const Formula& pattern, const Formula& target, Substitution& s) {
    return match_into(pattern, target, s);
}

// -------------------------------------------------------------- subformulas

void collect_subformulas(const Formula& f, FormulaSet& out) {
    if (!out.insert(f).second) return;
    if (!f.is_variable())
        for (const Formula& a : f.args()) collect_subformulas(a, out);
}

FormulaSet theta_subformulas(const FormulaSet& antecedent, const FormulaSet& succedent,
                             const std::vector<Formula>& theta) {
    FormulaSet subf;
    for (const Formula& f : antecedent) collect_subformulas(f, subf);
    for (const Formula& f : succedent) collect_subformulas(f, subf);

    FormulaSet out = subf;
    for (const Formula& t : theta) {
        std::set<std::string> vars = t.variables();
        if (vars.size() != 1)
            throw std::invalid_argument("theta member '" + t.text() +
                                        "' must have exactly one variable");
        const std::string& x = *vars.begin();
        for (const Formula& psi : subf) out.insert(substitute(t, {{x, psi}}));
    }
    return out;
}

} // namespace wk
