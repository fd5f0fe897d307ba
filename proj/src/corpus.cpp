#include "wk/corpus.hpp"

#include "wk/transforms.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wk {

namespace {

// ------------------------------------------------------------- matrices

const char* kMatrixCL2 = R"(matrix CL2
values f t
designated t
table ~
t f
table &
f f
f t
table |
f t
t t
table ->
t t
f t
)";

const char* kMatrixWK = R"(matrix WK
values f u t
designated t
table ~
t u f
table &
f u f
u u u
f u t
table |
f u t
u u u
t u t
)";

const char* kMatrixPWK = R"(matrix PWK
values f u t
designated u t
table ~
t u f
table &
f u f
u u u
f u t
table |
f u t
u u u
t u t
)";

const char* kMatrixBK = R"(matrix BK
values f u t
designated t
table ~
t u f
table &
f u f
u u u
f u t
table |
f u t
u u u
t u t
)";

const char* kMatrixMprime = R"(matrix Mprime
values f u t
designated f
table ~
t u f
table &
f u t
u u u
t u t
table |
f u f
u u u
f u t
)";

// -------------------------------------------------------------- systems

const char* kSystemSFCL = R"(system SF-CL setfmla
rule CL1 : - |- q -> (p -> q)
rule CL2 : - |- (p -> (q -> r)) -> ((p -> q) -> (p -> r))
rule CL3 : - |- (~r -> ~q) -> ((~r -> q) -> r)
rule CL4 : p, p -> q |- q
)";

const char* kSystemSSCL = R"(system SS-CL setset
rule CL1 : - |- p, ~p
rule CL2 : p, ~p |- -
rule CL3 : p, q |- p & q
rule CL4 : p & q |- p
rule CL5 : p & q |- q
rule CL6 : p |- p | q
rule CL7 : q |- p | q
rule CL8 : p | q |- p, q
)";

const char* kSystemRPWK = R"(system R_PWK setset
rule r1 : - |- p, ~p
rule r2 : p |- ~~p
rule r3 : ~~p |- p
rule r4 : p, q |- p & q
rule r5 : p & q |- p, q
rule r6 : p & q |- p, ~q
rule r7 : p & q |- ~p, q
rule r8 : ~(p & q) |- ~p, ~q
rule r9 : p, ~p |- p & q
rule r10 : ~p |- ~(p & q)
rule r11 : q, ~q |- p & q
rule r12 : ~q |- ~(p & q)
rule r13 : p |- p | q
rule r14 : q |- p | q
rule r15 : p | q |- p, q
rule r16 : ~(p | q) |- p, ~q
rule r17 : ~(p | q) |- ~p, q
rule r18 : ~(p | q) |- ~p, ~q
rule r19 : p, ~p |- ~(p | q)
rule r20 : q, ~q |- ~(p | q)
)";

const char* kSystemHPWK = R"(system H_PWK setfmla
rule hPWK1 : - |- p | ~p
rule hPWK2 : p | r |- ~~p | r
rule hPWK3 : ~~p | r |- p | r
rule hPWK4 : p | r, q | r |- (p & q) | r
rule hPWK5 : (p & q) | r |- (p | q) | r
rule hPWK6 : (p & q) | r |- (p | ~q) | r
rule hPWK7 : (p & q) | r |- (~p | q) | r
rule hPWK8 : ~(p & q) | r |- (~p | ~q) | r
rule hPWK9 : p | r, ~p | r |- (p & q) | r
rule hPWK10 : ~p | r |- ~(p & q) | r
rule hPWK11 : q | r, ~q | r |- (p & q) | r
rule hPWK12 : ~q | r |- ~(p & q) | r
rule hPWK13 : p | r |- (p | q) | r
rule hPWK14 : q | r |- (p | q) | r
rule hPWK15 : ~(p | q) | r |- (p | ~q) | r
rule hPWK16 : ~(p | q) | r |- (~p | q) | r
rule hPWK17 : ~(p | q) | r |- (~p | ~q) | r
rule hPWK18 : p | r, ~p | r |- ~(p | q) | r
rule hPWK19 : q | r, ~q | r |- ~(p | q) | r
rule hPWK20 : p | p |- p
rule hPWK21 : p |- p | q
rule hPWK22 : p | q |- q | p
rule hPWK23 : p | (q | r) |- (p | q) | r
)";

const char* kSystemRBK = R"(system R_BK setset
rule BK1 : p, ~p |- -
rule BK2 : p |- ~~p
rule BK3 : ~~p |- p
rule BK4 : p, q |- p & q
rule BK5 : ~p, ~q |- ~(p & q)
rule BK6 : ~p, q |- ~(p & q)
rule BK7 : p, ~q |- ~(p & q)
rule BK8 : ~(p & q) |- ~p, p
rule BK9 : ~(p & q) |- ~q, q
rule BK10 : p & q |- p
rule BK11 : p & q |- q
rule BK12 : ~p, ~q |- ~(p | q)
rule BK13 : ~(p | q) |- ~p
rule BK14 : ~(p | q) |- ~q
rule BK15 : p | q |- p, ~p
rule BK16 : p | q |- q, ~q
rule BK17 : ~p, q |- p | q
rule BK18 : p, ~q |- p | q
rule BK19 : p, q |- p | q
rule BK20 : p | q |- p, q
)";

// ---------------------------------------------------------- derivations

const char* kDerivClPImpP = R"(system: SF-CL
claim: - |- p -> p
1. CL2 [] {p := p, q := p -> p, r := p} : (p -> ((p -> p) -> p)) -> ((p -> (p -> p)) -> (p -> p))
2. CL1 [] {p := p -> p, q := p} : p -> ((p -> p) -> p)
3. CL4 [2, 1] {p := p -> ((p -> p) -> p), q := (p -> (p -> p)) -> (p -> p)} : (p -> (p -> p)) -> (p -> p)
4. CL1 [] {p := p, q := p} : p -> (p -> p)
5. CL4 [4, 3] {p := p -> (p -> p), q := p -> p} : p -> p
qed 5
)";

const char* kDerivExcludedMiddle = R"(system: SS-CL
claim: - |- ~p | p
node { rule CL1 {p := p};
  branch p {
    node { rule CL7 {p := ~p, q := p};
      branch ~p | p { close ~p | p }
    }
  }
  branch ~p {
    node { rule CL6 {p := ~p, q := p};
      branch ~p | p { close ~p | p }
    }
  }
}
)";

const char* kDerivNegConj = R"(system: SS-CL
claim: ~(p & q) |- ~p, ~q
node { rule CL1 {p := p};
  branch p {
    node { rule CL1 {p := q};
      branch q {
        node { rule CL3 {p := p, q := q};
          branch p & q {
            node { rule CL2 {p := p & q}; star }
          }
        }
      }
      branch ~q { close ~q }
    }
  }
  branch ~p { close ~p }
}
)";

const char* kDerivBkDeMorgan = R"(system: R_BK_star
claim: ~(p & q) |- ~p | ~q
node { rule BK9s {p := p, q := q};
  branch ~q | q {
    node { rule BK20 {p := ~q, q := q};
      branch ~q {
        node { rule BK8s {p := p, q := q};
          branch ~p | p {
            node { rule BK20 {p := ~p, q := p};
              branch ~p {
                node { rule BK19 {p := ~p, q := ~q};
                  branch ~p | ~q { close ~p | ~q }
                }
              }
              branch p {
                node { rule BK2 {p := p};
                  branch ~~p {
                    node { rule BK17 {p := ~p, q := ~q};
                      branch ~p | ~q { close ~p | ~q }
                    }
                  }
                }
              }
            }
          }
        }
      }
      branch q {
        node { rule BK2 {p := q};
          branch ~~q {
            node { rule BK8s {p := p, q := q};
              branch ~p | p {
                node { rule BK20 {p := ~p, q := p};
                  branch ~p {
                    node { rule BK18 {p := ~p, q := ~q};
                      branch ~p | ~q { close ~p | ~q }
                    }
                  }
                  branch p {
                    node { rule BK4 {p := p, q := q};
                      branch p & q {
                        node { rule BK1 {p := p & q}; star }
                      }
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  }
}
)";

const char* kDerivBk25 = R"(system: H_BK
claim: p | q |- ~p | (p | q)
1. premise p | q
2. BK15s [1] {p := p, q := q} : p | ~p
3. BK19 [1, 2] {p := p | q, q := p | ~p} : (p | q) | (p | ~p)
4. chain BK21,BK23 [3] {p := p | q, q := p, r := ~p} {p := (p | q) | p, q := ~p} : ~p | ((p | q) | p)
5. chain BK23v,BK21v [4] {v0 := ~p, p := p | q, q := p} {v0 := ~p, p := p, q := p, r := q} : ~p | ((p | p) | q)
6. chain BK23v,BK22vv,BK23v [5] {v0 := ~p, p := p | p, q := q} {v1 := ~p, v0 := q, p := p} {v0 := ~p, p := q, q := p} : ~p | (p | q)
qed 6
)";

const char* kDerivBk28 = R"(system: H_BK
claim: ~p | r, ~q | r |- ~(p | q) | r
1. premise ~p | r
2. premise ~q | r
3. BK23 [1] {p := ~p, q := r} : r | ~p
4. BK23 [2] {p := ~q, q := r} : r | ~q
5. BK12v [3, 4] {v0 := r, p := p, q := q} : r | ~(p | q)
6. BK23 [5] {p := r, q := ~(p | q)} : ~(p | q) | r
qed 6
)";

const char* kDerivBk29CaseNegP = R"(system: H_BK
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
11. chain BK23,BK23 [5] {p := ~~q, q := ~(p & q)} {p := ~(p & q), q := ~~q} : ~~q | ~(p & q)
12. chain BK23,BK23 [10] {p := ~~~q, q := ~(p & q)} {p := ~(p & q), q := ~~~q} : ~~~q | ~(p & q)
13. BK28 [11, 12] {p := ~q, q := ~~q, r := ~(p & q)} : ~(~q | ~~q) | ~(p & q)
14. BK26 [13, 2] {p := ~q | ~~q, q := ~(p & q)} : ~(p & q)
qed 14
)";

const char* kDerivBk29CaseNegQ = R"(system: H_BK
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
11. chain BK23,BK23 [5] {p := ~~p, q := ~(p & q)} {p := ~(p & q), q := ~~p} : ~~p | ~(p & q)
12. chain BK23,BK23 [10] {p := ~~~p, q := ~(p & q)} {p := ~(p & q), q := ~~~p} : ~~~p | ~(p & q)
13. BK28 [11, 12] {p := ~p, q := ~~p, r := ~(p & q)} : ~(~p | ~~p) | ~(p & q)
14. BK26 [13, 2] {p := ~p | ~~p, q := ~(p & q)} : ~(p & q)
qed 14
)";

const char* kDerivBk29 = R"(system: H_BK
claim: ~p | ~q |- ~(p & q)
1. premise ~p | ~q
2. BK16s [1] {p := ~p, q := ~q} : ~q | ~~q
3. BK15s [1] {p := ~p, q := ~q} : ~p | ~~p
4. BK29a [1, 2] {p := p, q := q} : ~~p | ~(p & q)
5. chain BK23,BK23 [4] {p := ~~p, q := ~(p & q)} {p := ~(p & q), q := ~~p} : ~~p | ~(p & q)
6. BK29b [1, 3] {p := p, q := q} : ~~q | ~(p & q)
7. chain BK23,BK23 [6] {p := ~~q, q := ~(p & q)} {p := ~(p & q), q := ~~q} : ~~q | ~(p & q)
8. BK23 [5] {p := ~~p, q := ~(p & q)} : ~(p & q) | ~~p
9. BK23 [7] {p := ~~q, q := ~(p & q)} : ~(p & q) | ~~q
10. BK12v [8, 9] {v0 := ~(p & q), p := ~p, q := ~q} : ~(p & q) | ~(~p | ~q)
11. BK23 [10] {p := ~(p & q), q := ~(~p | ~q)} : ~(~p | ~q) | ~(p & q)
12. chain BK23,BK23 [11] {p := ~(~p | ~q), q := ~(p & q)} {p := ~(p & q), q := ~(~p | ~q)} : ~(~p | ~q) | ~(p & q)
13. BK2 [1] {p := ~p | ~q} : ~~(~p | ~q)
14. BK20 [12, 13] {p := ~(~p | ~q), q := ~(p & q)} : ~(p & q)
qed 14
)";

struct DerivationSpec {
    const char* id;
    const char* text;
    const char* note;
};

const DerivationSpec kDerivationSpecs[] = {
    {"cl-p-imp-p", kDerivClPImpP,
     "five-step derivation of the reflexive conditional from the two conditional axiom "
     "schemas and detachment"},
    {"sscl-excluded-middle", kDerivExcludedMiddle,
     "premise-free two-branch tree concluding the excluded-middle disjunction"},
    {"sscl-neg-conj", kDerivNegConj,
     "tree from a negated conjunction to the negations of its conjuncts; the "
     "contradictory branch is discontinued"},
    {"bk-demorgan", kDerivBkDeMorgan,
     "tree witnessing the De Morgan direction from a negated conjunction; branch "
     "formulas follow the starred schemas as registered, which fix each disjunction's "
     "operand order"},
    {"bk25", kDerivBk25,
     "six-step derivation of conditional weakening; the last three steps compose "
     "rotation and contraction rules as chains"},
    {"bk28", kDerivBk28,
     "six-step derivation of the conditional combination rule via the lifted negated-"
     "disjunction introduction"},
    {"bk29-case-neg-p", kDerivBk29CaseNegP,
     "case derivation discharging ~p behind BK29; the two conditional restatements are "
     "encoded as commutation chains"},
    {"bk29-case-neg-q", kDerivBk29CaseNegQ,
     "reconstructed mirror of bk29-case-neg-p, discharging ~q"},
    {"bk29", kDerivBk29,
     "closing derivation of the negated-conjunction rule: the case analyses enter "
     "through the registered derived rules BK29a and BK29b, the combination and "
     "detachment reasoning is spelled out step by step, and conditional restatements "
     "are encoded as commutation chains"},
};

std::string matrix_note(const std::string& id) {
    if (id == "CL2") return "two-valued classical matrix over the full signature";
    if (id == "WK") return "weak three-valued tables with the classical true value designated";
    if (id == "PWK") return "weak three-valued tables designating both non-false values";
    if (id == "BK") return "weak three-valued tables designating only the true value";
    if (id == "Mprime")
        return "weak tables with the two binary connectives interchanged and the false "
               "value designated";
    return "";
}

std::string system_note(const std::string& id) {
    if (id == "SF-CL") return "single-conclusion axiomatization of classical implication";
    if (id == "SS-CL") return "eight-rule multiple-conclusion classical system";
    if (id == "R_PWK") return "twenty-rule multiple-conclusion system matched to PWK";
    if (id == "H_PWK") return "twenty-three-rule single-conclusion system matched to PWK";
    if (id == "R_BK") return "twenty-rule multiple-conclusion system matched to BK";
    if (id == "R_BK_star")
        return "variant of R_BK with the four branching rules 8, 9, 15, 16 replaced by "
               "single-succedent disjunction forms";
    if (id == "H_BK")
        return "single-conclusion system for BK: twenty-four core schemas plus the "
               "disjunctive lifts of all but the explosion schema, with a registry of "
               "verified derived rules";
    return "";
}

} // namespace

std::string entry_kind_name(EntryKind k) {
    switch (k) {
    case EntryKind::Matrix: return "matrix";
    case EntryKind::System: return "system";
    case EntryKind::Derivation: return "derivation";
    case EntryKind::Claim: return "claim";
    }
    return "";
}

Corpus::Corpus() {
    for (const char* text : {kMatrixCL2, kMatrixWK, kMatrixPWK, kMatrixBK, kMatrixMprime}) {
        Matrix m = parse_matrix(text);
        matrix_ids_.push_back(m.name);
        matrix_notes_.push_back(matrix_note(m.name));
        matrices_.emplace_back(m.name, std::move(m));
    }

    auto add_system = [&](HSystem sys, std::string matrix_id, Signature sig) {
        SystemRecord rec{std::move(sys), std::move(matrix_id), std::move(sig), ""};
        rec.note = system_note(rec.system.name);
        system_ids_.push_back(rec.system.name);
        systems_.emplace_back(rec.system.name, std::move(rec));
    };
    add_system(parse_system(kSystemSFCL), "CL2", Signature::imp_not());
    add_system(parse_system(kSystemSSCL), "CL2", Signature::and_or_not());
    add_system(parse_system(kSystemRPWK), "PWK", Signature::and_or_not());
    add_system(parse_system(kSystemHPWK), "PWK", Signature::and_or_not());
    HSystem r_bk = parse_system(kSystemRBK);
    BkAssembly bk = assemble_bk_systems(r_bk);
    register_bk_derived(bk.h);
    add_system(std::move(r_bk), "BK", Signature::and_or_not());
    add_system(std::move(bk.star), "BK", Signature::and_or_not());
    add_system(std::move(bk.h), "BK", Signature::and_or_not());

    for (const DerivationSpec& spec : kDerivationSpecs) {
        DerivationEntry e;
        e.id = spec.id;
        e.note = spec.note;
        std::string sys_id = peek_derivation_system(spec.text);
        const SystemRecord* rec = nullptr;
        for (const auto& [id, r] : systems_)
            if (id == sys_id) rec = &r;
        if (!rec) throw std::logic_error("corpus: derivation '" + e.id +
                                         "' references unknown system '" + sys_id + "'");
        e.doc = parse_derivation(spec.text, rec->signature, rec->system.kind);
        derivation_ids_.push_back(e.id);
        derivations_.push_back(std::move(e));
    }

    // Double-lift template instances, generated from the registered system.
    const HSystem& h_bk = get_system("H_BK");
    for (const char* core : {"BK3", "BK4", "BK12"}) {
        const RuleSchema* r = h_bk.find_rule(core);
        if (!r) throw std::logic_error(std::string("corpus: missing core rule ") + core);
        DerivationEntry e;
        e.id = std::string("bk") + (core + 2) + "-double-lift";
        e.note = std::string("instance of the double-lift template for ") + core;
        DerivationDocument doc;
        doc.system_id = "H_BK";
        doc.kind = SystemKind::SetFmla;
        doc.linear = lifted_derivation_scheme(h_bk, *r);
        doc.claim.antecedent = doc.linear->premises();
        doc.claim.succedent = {doc.linear->conclusion()};
        e.doc = std::move(doc);
        derivation_ids_.push_back(e.id);
        derivations_.push_back(std::move(e));
    }

    claims_.push_back({"bk-mprime-renaming", EntryKind::Claim,
                       "renaming BK -> Mprime : f := t, u := u, t := f",
                       "the value swap carries the BK matrix onto Mprime"});
    claims_.push_back({"pwk-separator", EntryKind::Claim, "separator PWK : x, ~x",
                       "x and ~x separate every pair of distinct PWK values"});
    claims_.push_back({"bk-separator", EntryKind::Claim, "separator BK : x, ~x",
                       "x and ~x separate every pair of distinct BK values"});

    validate();
}

void Corpus::validate() const {
    for (const auto& [id, rec] : systems_) {
        const Matrix& m = get_matrix(rec.matrix_id);
        for (const RuleSchema& r : rec.system.rules) {
            EntailmentVerdict v = rule_sound(m, r);
            if (!v.holds)
                throw std::logic_error("corpus: rule " + r.name + " of system " + id +
                                       " is not sound for matrix " + rec.matrix_id);
        }
    }
    for (const DerivationEntry& e : derivations_) {
        const HSystem& sys = get_system(e.doc.system_id);
        VerifyResult v = e.doc.linear
                             ? verify_derivation(sys, *e.doc.linear, e.doc.claim)
                             : verify_derivation(sys, *e.doc.tree, e.doc.claim);
        if (!v.accepted)
            throw std::logic_error("corpus: derivation '" + e.id + "' rejected at " +
                                   v.location + " (" + v.reason + "): " + v.detail);
    }
    std::map<std::string, std::string> swap{{"f", "t"}, {"u", "u"}, {"t", "f"}};
    if (!check_matrix_renaming(get_matrix("BK"), get_matrix("Mprime"), swap))
        throw std::logic_error("corpus: claim bk-mprime-renaming failed");
    std::vector<Formula> theta{fml("x"), fml("~x")};
    if (!fully_monadic(check_monadicity(get_matrix("PWK"), theta)))
        throw std::logic_error("corpus: claim pwk-separator failed");
    if (!fully_monadic(check_monadicity(get_matrix("BK"), theta)))
        throw std::logic_error("corpus: claim bk-separator failed");
}

const Matrix& Corpus::get_matrix(const std::string& id) const {
    for (const auto& [mid, m] : matrices_)
        if (mid == id) return m;
    throw std::invalid_argument("corpus: unknown matrix '" + id + "'");
}

const HSystem& Corpus::get_system(const std::string& id) const {
    for (const auto& [sid, rec] : systems_)
        if (sid == id) return rec.system;
    throw std::invalid_argument("corpus: unknown system '" + id + "'");
}

const DerivationEntry& Corpus::get_derivation(const std::string& id) const {
    for (const DerivationEntry& e : derivations_)
        if (e.id == id) return e;
    throw std::invalid_argument("corpus: unknown derivation '" + id + "'");
}

const std::string& Corpus::system_matrix_id(const std::string& system_id) const {
    for (const auto& [sid, rec] : systems_)
        if (sid == system_id) return rec.matrix_id;
    throw std::invalid_argument("corpus: unknown system '" + system_id + "'");
}

const Matrix& Corpus::system_matrix(const std::string& system_id) const {
    return get_matrix(system_matrix_id(system_id));
}

const Signature& Corpus::system_signature(const std::string& system_id) const {
    for (const auto& [sid, rec] : systems_)
        if (sid == system_id) return rec.signature;
    throw std::invalid_argument("corpus: unknown system '" + system_id + "'");
}

std::vector<CorpusEntry> Corpus::entries() const {
    std::vector<CorpusEntry> out;
    for (std::size_t i = 0; i < matrices_.size(); ++i)
        out.push_back({matrices_[i].first, EntryKind::Matrix,
                       serialize_matrix(matrices_[i].second), matrix_notes_[i]});
    for (const auto& [id, rec] : systems_)
        out.push_back({id, EntryKind::System, serialize_system(rec.system), rec.note});
    for (const DerivationEntry& e : derivations_)
        out.push_back({e.id, EntryKind::Derivation,
                       serialize_derivation(e.doc, system_signature(e.doc.system_id)),
                       e.note});
    for (const CorpusEntry& c : claims_) out.push_back(c);
    return out;
}

int Corpus::export_files(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(dir) / "matrices");
    fs::create_directories(fs::path(dir) / "systems");
    fs::create_directories(fs::path(dir) / "derivations");
    int count = 0;
    auto write_file = [&count](const fs::path& p, const std::string& content) {
        std::ofstream os(p);
        if (!os) throw std::runtime_error("corpus export: cannot write " + p.string());
        os << content;
        ++count;
    };
    std::string claims_text;
    for (const CorpusEntry& e : entries()) {
        switch (e.kind) {
        case EntryKind::Matrix:
            write_file(fs::path(dir) / "matrices" / (e.id + ".mat"),
                       e.payload + "# " + e.note + "\n");
            break;
        case EntryKind::System:
            write_file(fs::path(dir) / "systems" / (e.id + ".sys"),
                       e.payload + "# " + e.note + "\n");
            break;
        case EntryKind::Derivation:
            write_file(fs::path(dir) / "derivations" / (e.id + ".drv"), e.payload);
            break;
        case EntryKind::Claim:
            claims_text += e.id + ": " + e.payload + "  # " + e.note + "\n";
            break;
        }
    }
    write_file(fs::path(dir) / "claims.txt", claims_text);
    return count;
}

const Corpus& corpus() {
    static const Corpus instance;
    return instance;
}

} // namespace wk
