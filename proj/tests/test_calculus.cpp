#include "wk/corpus.hpp"
#include "wk/transforms.hpp"

#include <doctest.h>

using namespace wk;

namespace {

const HSystem& sys(const char* id) { return corpus().get_system(id); }

Step mk_step(int index, const Formula& f, Justification j) {
    Step s;
    s.index = index;
    s.formula = f;
    s.just = std::move(j);
    return s;
}

} // namespace

TEST_CASE("system files") {
    const char* text = "system DEMO setset\n"
                       "rule a1 : - |- p, ~p\n"
                       "rule a2 : p, ~p |- -\n"
                       "rule a3 : p & q |- p\n";
    HSystem s = parse_system(text);
    CHECK(s.name == "DEMO");
    CHECK(s.kind == SystemKind::SetSet);
    REQUIRE(s.rules.size() == 3);
    CHECK(s.rules[0].antecedent.empty());
    CHECK(s.rules[0].succedent.size() == 2);
    CHECK(s.rules[1].succedent.empty());
    CHECK(serialize_system(s) == text);
    CHECK(s.find_rule("a2") != nullptr);
    CHECK(s.find_rule("zz") == nullptr);

    CHECK_THROWS(parse_system("rule a : p |- q\n"));
    CHECK(kind_name(SystemKind::SetFmla) == "setfmla");
}

TEST_CASE("rule soundness") {
    const Matrix& pwk = corpus().get_matrix("PWK");
    const Matrix& bk = corpus().get_matrix("BK");

    const RuleSchema* r1 = sys("R_PWK").find_rule("r1"); // 0 / p, ~p
    REQUIRE(r1 != nullptr);
    CHECK(rule_sound(pwk, *r1).holds);

    EntailmentVerdict v = rule_sound(bk, *r1);
    CHECK_FALSE(v.holds);
    REQUIRE(v.countermodel.has_value());
    CHECK(render_valuation(bk, *v.countermodel) == "p=u");

    const RuleSchema* cl3 = sys("SS-CL").find_rule("CL3"); // p, q / p & q
    REQUIRE(cl3 != nullptr);
    CHECK(rule_sound(bk, *cl3).holds);
    CHECK(rule_sound(pwk, *cl3).holds);
}

TEST_CASE("linear verification accepts a hand derivation") {
    const HSystem& h = sys("H_BK");
    LinearDerivation d;
    d.steps.push_back(mk_step(1, fml("p"), Justification::premise()));
    d.steps.push_back(mk_step(2, fml("q"), Justification::premise()));
    d.steps.push_back(mk_step(3, fml("p & q"),
                              Justification::rule("BK4", {1, 2},
                                                  {{"p", fml("p")}, {"q", fml("q")}})));
    Statement claim{{fml("p"), fml("q")}, {fml("p & q")}};
    CHECK(verify_derivation(h, d, claim).accepted);

    // premises may sit anywhere in the claimed antecedent, but nowhere else
    Statement bad_claim{{fml("p")}, {fml("p & q")}};
    VerifyResult bad = verify_derivation(h, d, bad_claim);
    CHECK_FALSE(bad.accepted);
    CHECK(bad.location == "step 2");

    // the concluding formula must be the claimed succedent
    Statement wrong_suc{{fml("p"), fml("q")}, {fml("q & p")}};
    CHECK_FALSE(verify_derivation(h, d, wrong_suc).accepted);
}

TEST_CASE("linear verification rejects broken justifications") {
    const HSystem& h = sys("H_BK");
    Statement claim{{fml("p"), fml("q")}, {fml("p & q")}};

    // forward reference
    LinearDerivation fwd;
    fwd.steps.push_back(mk_step(1, fml("p"), Justification::premise()));
    fwd.steps.push_back(mk_step(2, fml("q"), Justification::premise()));
    fwd.steps.push_back(mk_step(3, fml("p & q"),
                                Justification::rule("BK4", {1, 3},
                                                    {{"p", fml("p")}, {"q", fml("q")}})));
    CHECK_FALSE(verify_derivation(h, fwd, claim).accepted);

    // out-of-order references are fine when they still cover the antecedent
    LinearDerivation swapped;
    swapped.steps.push_back(mk_step(1, fml("p"), Justification::premise()));
    swapped.steps.push_back(mk_step(2, fml("q"), Justification::premise()));
    swapped.steps.push_back(mk_step(3, fml("p & q"),
                                    Justification::rule("BK4", {2, 1},
                                                        {{"p", fml("p")}, {"q", fml("q")}})));
    CHECK(verify_derivation(h, swapped, claim).accepted);

    // but jointly they must instantiate every antecedent formula
    LinearDerivation mis;
    mis.steps.push_back(mk_step(1, fml("p"), Justification::premise()));
    mis.steps.push_back(mk_step(2, fml("q"), Justification::premise()));
    mis.steps.push_back(mk_step(3, fml("p & q"),
                                Justification::rule("BK4", {1, 1},
                                                    {{"p", fml("p")}, {"q", fml("q")}})));
    VerifyResult mis_v = verify_derivation(h, mis, claim);
    CHECK_FALSE(mis_v.accepted);
    CHECK(mis_v.reason == "antecedent-mismatch");

    // unknown rule name
    LinearDerivation unk;
    unk.steps.push_back(mk_step(1, fml("p"), Justification::premise()));
    unk.steps.push_back(mk_step(2, fml("~~p"),
                                Justification::rule("nope", {1}, {{"p", fml("p")}})));
    CHECK_FALSE(verify_derivation(h, unk, {{fml("p")}, {fml("~~p")}}).accepted);

    // stated step formula disagreeing with the rule image
    LinearDerivation lie;
    lie.steps.push_back(mk_step(1, fml("p"), Justification::premise()));
    lie.steps.push_back(mk_step(2, fml("~p"),
                                Justification::rule("BK2", {1}, {{"p", fml("p")}})));
    CHECK_FALSE(verify_derivation(h, lie, {{fml("p")}, {fml("~p")}}).accepted);
}

TEST_CASE("chain steps") {
    const HSystem& h = sys("H_BK");
    // rotate a disjunction there and back
    LinearDerivation d;
    d.steps.push_back(mk_step(1, fml("p | q"), Justification::premise()));
    d.steps.push_back(mk_step(
        2, fml("p | q"),
        Justification::chain({"BK23", "BK23"}, {1},
                             {{{"p", fml("p")}, {"q", fml("q")}},
                              {{"p", fml("q")}, {"q", fml("p")}}})));
    Statement claim{{fml("p | q")}, {fml("p | q")}};
    CHECK(verify_derivation(h, d, claim).accepted);

    // later chain members must be single-premise rules
    LinearDerivation bad;
    bad.steps.push_back(mk_step(1, fml("p | q"), Justification::premise()));
    bad.steps.push_back(mk_step(
        2, fml("(p | q) | (p | q)"),
        Justification::chain({"BK23", "BK19"}, {1},
                             {{{"p", fml("p")}, {"q", fml("q")}},
                              {{"p", fml("q | p")}, {"q", fml("q | p")}}})));
    CHECK_FALSE(verify_derivation(h, bad, {{fml("p | q")}, {fml("(p | q) | (p | q)")}})
                    .accepted);
}

TEST_CASE("derived rules and expansion") {
    const HSystem& h = sys("H_BK");
    CHECK(h.find_derived("BK26") != nullptr);
    CHECK(h.find_derived("BK29") != nullptr);
    CHECK(h.find_derived("BK23vv") != nullptr);
    CHECK(h.find_derived("BK1svv") == nullptr);

    const DerivationEntry& bk29 = corpus().get_derivation("bk29");
    REQUIRE(bk29.doc.linear.has_value());
    LinearDerivation flat = expand_derived(h, *bk29.doc.linear);
    for (const Step& s : flat.steps) {
        bool primitive = s.just.kind == Justification::Kind::Premise ||
                         s.just.kind == Justification::Kind::Rule;
        CHECK(primitive);
    }
    CHECK(verify_derivation(h, flat, bk29.doc.claim).accepted);
    CHECK(flat.steps.size() > bk29.doc.linear->steps.size());

    // registering a rule with a broken template is refused
    HSystem copy = h;
    DerivedRule bogus;
    bogus.schema = RuleSchema{"oops", {fml("p")}, {fml("~p")}, SystemKind::SetFmla};
    LinearDerivation body;
    body.steps.push_back(mk_step(1, fml("p"), Justification::premise()));
    body.steps.push_back(mk_step(2, fml("~p"),
                                 Justification::rule("BK2", {1}, {{"p", fml("p")}})));
    bogus.body = body;
    CHECK_THROWS(copy.register_derived("oops", bogus));
}

TEST_CASE("tree verification") {
    const DerivationEntry& em = corpus().get_derivation("sscl-excluded-middle");
    REQUIRE(em.doc.tree.has_value());
    const HSystem& ss = sys("SS-CL");
    CHECK(verify_derivation(ss, *em.doc.tree, em.doc.claim).accepted);

    // closing on a formula outside the claimed succedent is rejected
    TreeDerivation tampered = *em.doc.tree;
    Statement narrowed{em.doc.claim.antecedent, {fml("q | p")}};
    CHECK_FALSE(verify_derivation(ss, tampered, narrowed).accepted);

    // a discontinuation needs an empty-succedent rule instance
    auto bad = TreeNode::discontinue("CL1", {{"p", fml("p")}});
    TreeDerivation t{{fml("p")}, bad};
    CHECK_FALSE(verify_derivation(ss, t, {{fml("p")}, {fml("q")}}).accepted);

    // a genuine discontinuation: p, ~p closes by the overlap rule
    auto star = TreeNode::discontinue("CL2", {{"p", fml("p")}});
    TreeDerivation t2{{fml("p"), fml("~p")}, star};
    CHECK(verify_derivation(ss, t2, {{fml("p"), fml("~p")}, {}}).accepted);
}

TEST_CASE("analytic search decides small claims") {
    SearchConfig cfg;

    TreeSearchResult em = prove_setset_analytic(sys("R_PWK"), {{}, {fml("p | ~p")}}, cfg);
    CHECK(em.outcome == SearchOutcome::Proved);
    REQUIRE(em.proof.has_value());
    CHECK(verify_derivation(sys("R_PWK"), *em.proof, {{}, {fml("p | ~p")}}).accepted);

    TreeSearchResult no =
        prove_setset_analytic(sys("R_PWK"), {{fml("p"), fml("~p")}, {fml("q")}}, cfg);
    CHECK(no.outcome == SearchOutcome::NoProof);

    TreeSearchResult boom =
        prove_setset_analytic(sys("R_BK"), {{fml("p"), fml("~p")}, {}}, cfg);
    CHECK(boom.outcome == SearchOutcome::Proved);

    TreeSearchResult dm = prove_setset_analytic(
        sys("R_BK"), {{fml("~(p & q)")}, {fml("~p"), fml("~q")}}, cfg);
    CHECK(dm.outcome == SearchOutcome::Proved);

    SearchConfig tiny;
    tiny.max_nodes = 1;
    TreeSearchResult starved = prove_setset_analytic(
        sys("R_BK"), {{fml("~(p & q)")}, {fml("~p"), fml("~q")}}, tiny);
    CHECK(starved.outcome == SearchOutcome::BudgetExhausted);
}

TEST_CASE("bounded forward search") {
    SearchConfig cfg;
    LinearSearchResult ok =
        prove_setfmla_bounded(sys("H_BK"), {{fml("p"), fml("q")}, {fml("p & q")}}, cfg);
    CHECK(ok.outcome == SearchOutcome::Proved);
    REQUIRE(ok.proof.has_value());
    CHECK(verify_derivation(sys("H_BK"), *ok.proof,
                            {{fml("p"), fml("q")}, {fml("p & q")}})
              .accepted);

    // the forward searcher is only semi-decisive: axioms needing instances
    // outside the claim's subformula universe come back inconclusive
    const Signature& imp = Signature::imp_not();
    Statement refl{{}, {parse_formula("p -> p", imp, false)}};
    LinearSearchResult inc = prove_setfmla_bounded(sys("SF-CL"), refl, cfg);
    CHECK(inc.outcome == SearchOutcome::NoProof);
}

TEST_CASE("derivation files round-trip") {
    SearchConfig cfg;
    Statement claim{{}, {fml("p | ~p")}};
    TreeSearchResult em = prove_setset_analytic(sys("R_PWK"), claim, cfg);
    REQUIRE(em.proof.has_value());
    DerivationDocument doc;
    doc.system_id = "R_PWK";
    doc.claim = claim;
    doc.kind = SystemKind::SetSet;
    doc.tree = em.proof;

    const Signature& sig = corpus().system_signature("R_PWK");
    std::string text = serialize_derivation(doc, sig);
    CHECK(peek_derivation_system(text) == "R_PWK");
    DerivationDocument back = parse_derivation(text, sig, SystemKind::SetSet);
    REQUIRE(back.tree.has_value());
    CHECK(verify_derivation(sys("R_PWK"), *back.tree, back.claim).accepted);
    CHECK(serialize_derivation(back, sig) == text);

    // a stated step formula that disagrees with the recomputed one parses
    // (it is only a display) but is refused at verification
    const char* forged = "system: H_BK\n"
                         "claim: p |- ~~p\n"
                         "1. premise p\n"
                         "2. BK2 [1] {p := p} : ~p\n"
                         "qed 2\n";
    DerivationDocument fdoc = parse_derivation(forged, sig, SystemKind::SetFmla);
    VerifyResult fv = verify_derivation(sys("H_BK"), *fdoc.linear, fdoc.claim);
    CHECK_FALSE(fv.accepted);
    CHECK(fv.reason == "formula-mismatch");

    CHECK_THROWS(parse_derivation("claim: p |- q\n", sig, SystemKind::SetFmla));
}

TEST_CASE("statement rendering") {
    CHECK(render_statement({{fml("p")}, {}}) == "p |- -");
    CHECK(render_statement({{}, {fml("p"), fml("q")}}) == "- |- p, q");
}
