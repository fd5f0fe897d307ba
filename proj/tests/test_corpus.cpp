#include "wk/corpus.hpp"
#include "wk/transforms.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wk;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

VerifyResult verify_doc(const HSystem& sys, const DerivationDocument& doc) {
    return doc.linear ? verify_derivation(sys, *doc.linear, doc.claim)
                      : verify_derivation(sys, *doc.tree, doc.claim);
}

} // namespace

TEST_CASE("catalog contents") {
    const Corpus& c = corpus();
    CHECK(c.matrix_ids() ==
          std::vector<std::string>{"CL2", "WK", "PWK", "BK", "Mprime"});
    CHECK(c.system_ids() ==
          std::vector<std::string>{"SF-CL", "SS-CL", "R_PWK", "H_PWK", "R_BK",
                                   "R_BK_star", "H_BK"});
    CHECK(c.derivation_ids() ==
          std::vector<std::string>{"cl-p-imp-p", "sscl-excluded-middle",
                                   "sscl-neg-conj", "bk-demorgan", "bk25", "bk28",
                                   "bk29-case-neg-p", "bk29-case-neg-q", "bk29",
                                   "bk3-double-lift", "bk4-double-lift",
                                   "bk12-double-lift"});

    int claims = 0;
    for (const CorpusEntry& e : c.entries()) {
        CHECK_FALSE(e.id.empty());
        CHECK_FALSE(e.payload.empty());
        CHECK_FALSE(e.note.empty());
        if (e.kind == EntryKind::Claim) ++claims;
    }
    CHECK(c.entries().size() == 27);
    CHECK(claims == 3);

    CHECK_THROWS_AS(c.get_matrix("nope"), std::invalid_argument);
    CHECK_THROWS_AS(c.get_system("nope"), std::invalid_argument);
    CHECK_THROWS_AS(c.get_derivation("nope"), std::invalid_argument);
}

TEST_CASE("system shapes and their matrices") {
    const Corpus& c = corpus();

    auto expect = [&](const char* id, SystemKind kind, std::size_t rules,
                      const char* matrix) {
        const HSystem& s = c.get_system(id);
        CHECK(s.kind == kind);
        CHECK(s.rules.size() == rules);
        CHECK(c.system_matrix_id(id) == matrix);
        CHECK(c.system_matrix(id).name == matrix);
    };
    expect("SF-CL", SystemKind::SetFmla, 4, "CL2");
    expect("SS-CL", SystemKind::SetSet, 8, "CL2");
    expect("R_PWK", SystemKind::SetSet, 20, "PWK");
    expect("H_PWK", SystemKind::SetFmla, 23, "PWK");
    expect("R_BK", SystemKind::SetSet, 20, "BK");
    expect("R_BK_star", SystemKind::SetSet, 20, "BK");
    expect("H_BK", SystemKind::SetFmla, 47, "BK");

    CHECK(c.get_system("H_BK").derived.size() == 31);
    CHECK(c.system_signature("SF-CL").has("->"));
    CHECK_FALSE(c.system_signature("SF-CL").has("&"));
    CHECK_FALSE(c.system_signature("R_PWK").has("->"));

    // the assembled systems match a fresh assembly from the shipped rules
    BkAssembly fresh_bk = assemble_bk_systems(c.get_system("R_BK"));
    CHECK(systems_equal_up_to_renaming(fresh_bk.star, c.get_system("R_BK_star")));
    register_bk_derived(fresh_bk.h);
    CHECK(systems_equal_up_to_renaming(fresh_bk.h, c.get_system("H_BK")));
}

TEST_CASE("worked derivations") {
    const Corpus& c = corpus();

    auto linear_steps = [&](const char* id) {
        const DerivationEntry& e = c.get_derivation(id);
        REQUIRE(e.doc.linear.has_value());
        return e.doc.linear->steps.size();
    };
    CHECK(linear_steps("cl-p-imp-p") == 5);
    CHECK(linear_steps("bk25") == 6);
    CHECK(linear_steps("bk28") == 6);
    CHECK(linear_steps("bk29-case-neg-p") == 14);
    CHECK(linear_steps("bk29-case-neg-q") == 14);
    CHECK(linear_steps("bk29") == 14);

    const DerivationEntry& pimp = c.get_derivation("cl-p-imp-p");
    CHECK(pimp.doc.system_id == "SF-CL");
    CHECK(pimp.doc.claim.antecedent.empty());
    REQUIRE(pimp.doc.claim.succedent.size() == 1);
    CHECK(pimp.doc.claim.succedent.begin()->text() == "p -> p");

    const DerivationEntry& dm = c.get_derivation("bk-demorgan");
    CHECK(dm.doc.system_id == "R_BK_star");
    REQUIRE(dm.doc.tree.has_value());
    CHECK(dm.doc.claim.antecedent == FormulaSet{fml("~(p & q)")});
    CHECK(dm.doc.claim.succedent == FormulaSet{fml("~p | ~q")});

    // every shipped derivation verifies against its named system
    for (const std::string& id : c.derivation_ids()) {
        const DerivationEntry& e = c.get_derivation(id);
        const HSystem& s = c.get_system(e.doc.system_id);
        VerifyResult v = verify_doc(s, e.doc);
        INFO(id, ": ", v.reason, " ", v.detail);
        CHECK(v.accepted);
    }

    // the double-lift entries come from the derivation template
    const DerivationEntry& dl = c.get_derivation("bk4-double-lift");
    CHECK(dl.doc.system_id == "H_BK");
    REQUIRE(dl.doc.linear.has_value());
    CHECK(dl.doc.linear->steps.size() == 6);
    CHECK(dl.doc.claim.succedent == FormulaSet{fml("v1 | (v0 | p & q)")});
}

TEST_CASE("export and re-import") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "wk_corpus_test";
    fs::remove_all(dir);

    const Corpus& c = corpus();
    int files = c.export_files(dir.string());
    CHECK(files == 25);

    CHECK(fs::exists(dir / "matrices" / "PWK.mat"));
    CHECK(fs::exists(dir / "systems" / "H_BK.sys"));
    CHECK(fs::exists(dir / "derivations" / "bk-demorgan.drv"));
    CHECK(fs::exists(dir / "claims.txt"));

    // matrices and systems re-parse to identical serializations
    for (const std::string& id : c.matrix_ids()) {
        Matrix m = parse_matrix(slurp(dir / "matrices" / (id + ".mat")));
        CHECK(serialize_matrix(m) == serialize_matrix(c.get_matrix(id)));
    }
    for (const std::string& id : c.system_ids()) {
        HSystem s = parse_system(slurp(dir / "systems" / (id + ".sys")));
        CHECK(serialize_system(s) == serialize_system(c.get_system(id)));
    }

    // derivation files verify after a full parse round-trip
    for (const std::string& id : c.derivation_ids()) {
        std::string text = slurp(dir / "derivations" / (id + ".drv"));
        std::string system_id = peek_derivation_system(text);
        const HSystem& s = c.get_system(system_id);
        DerivationDocument doc =
            parse_derivation(text, c.system_signature(system_id), s.kind);
        CHECK(verify_doc(s, doc).accepted);
        CHECK(serialize_derivation(doc, c.system_signature(system_id)) == text);
    }

    fs::remove_all(dir);
}
