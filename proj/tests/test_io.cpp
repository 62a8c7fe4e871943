#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "acat/io.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace acat;
using testdga::consistent_system;
using testdga::entrywise_family;
using testdga::explicitize;
using testdga::inclusion_family;
using testdga::trefoil;
using testdga::trefoil_elem;
using testdga::unknot;
using testdga::unknot_stab;

namespace {

template <class F>
std::string thrown(F&& body) {
    try {
        body();
    } catch (const error& e) {
        return e.what();
    }
    return "";
}

bool morphism_equal(const DGAMorphism& a, const DGAMorphism& b) {
    if (!dga_equal(a.source, b.source) || !dga_equal(a.target, b.target)) return false;
    return a.chord_images == b.chord_images;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("consistent systems round-trip bit-exactly") {
    for (const SemiFreeDGA& base : {unknot(), trefoil()}) {
        DGASystem sys = consistent_system(base, 4);
        std::string text = serialize_system(sys);
        LoadedSystem ls = load_system_text(text, "roundtrip");
        CHECK(ls.audit.ok());
        CHECK(ls.sys.mode == SystemMode::consistent);
        CHECK(ls.sys.M == 4);
        CHECK(ls.sys.pattern_minima == std::vector<std::string>{"y"});
        std::string why;
        CHECK_MESSAGE(dga_equal(*ls.sys.base, base, &why), why);
        CHECK(serialize_system(ls.sys) == text);  // canonical: parse ∘ serialize is the identity
        CHECK(base_augs(ls.sys).size() == base_augs(sys).size());
    }
}

TEST_CASE("explicit systems round-trip with inclusions and identification") {
    DGASystem sys = explicitize(unknot(), 3).sys;
    std::string text = serialize_system(sys);
    LoadedSystem ls = load_system_text(text, "roundtrip");
    INFO(ls.audit.str());
    CHECK(ls.audit.ok());
    CHECK(ls.sys.mode == SystemMode::explicit_subsets);
    REQUIRE(ls.sys.entries.size() == sys.entries.size());
    for (const auto& [P, dga] : sys.entries) {
        std::string why;
        CHECK_MESSAGE(dga_equal(ls.sys.entries.at(P), dga, &why), why);
    }
    CHECK(ls.sys.inclusions == sys.inclusions);
    CHECK(ls.sys.identification == sys.identification);
    CHECK(ls.sys.explicit_minima == sys.explicit_minima);
    CHECK(serialize_system(ls.sys) == text);
}

TEST_CASE("a minimal hand-written file parses with defaults") {
    std::string text = R"({
        "version": "augcat-system-v1",
        "field": {"degree": 1},
        "mode": "consistent",
        "copies": 2,
        "components": [{"id": 1, "pi1_rank": 1}],
        "generators": [
            {"base": "a", "pairs": "all", "degree": 1},
            {"base": "x", "pairs": "upper", "degree": 0},
            {"base": "y", "pairs": "upper", "degree": -1}
        ],
        "differentials": {
            "a": [{"coef": "1", "word": []},
                  {"coef": "1", "word": [{"group": [{"component": 1, "letters": [1]}]}]}]
        },
        "minima": ["y"]
    })";
    LoadedSystem ls = load_system_text(text, "unknot");
    CHECK(ls.audit.ok());
    std::string why;
    CHECK_MESSAGE(dga_equal(*ls.sys.base, unknot(), &why), why);
    CHECK(base_augs(ls.sys).size() == 1);
}

TEST_CASE("parse diagnostics name the offending path") {
    auto patch = [](const std::string& needle, const std::string& replacement) {
        std::string text = serialize_system(consistent_system(unknot(), 2));
        size_t at = text.find(needle);
        REQUIRE(at != std::string::npos);
        return text.replace(at, needle.size(), replacement);
    };

    // syntax errors carry line and column
    std::string m = thrown([] { load_system_text("{\n  \"version\": oops", "f.json"); });
    CHECK(m.find("f.json:2") != std::string::npos);
    CHECK(m.find("syntax error") != std::string::npos);

    m = thrown([&] { load_system_text(patch("\"version\": \"augcat-system-v1\"",
                                            "\"version\": \"augcat-system-v9\""),
                                      "f.json"); });
    CHECK(m.find("unsupported format version") != std::string::npos);

    m = thrown([&] { load_system_text(patch("\"copies\": 2", "\"copies\": 2, \"extra\": 1"),
                                      "f.json"); });
    CHECK(m.find("unknown key \"extra\"") != std::string::npos);

    m = thrown([&] { load_system_text(patch("\"copies\": 2,", ""), "f.json"); });
    CHECK(m.find("missing required key \"copies\"") != std::string::npos);

    // a chord used in a term without being declared, named in the diagnostic
    m = thrown([] {
        std::string text = serialize_system(consistent_system(trefoil(), 2));
        size_t at = text.find("\"chord\": \"b1\"");
        REQUIRE(at != std::string::npos);
        load_system_text(text.replace(at, 13, "\"chord\": \"zed\""), "f.json");
    });
    CHECK(m.find("chord \"zed\"") != std::string::npos);
    CHECK(m.find("not a declared generator") != std::string::npos);
    CHECK(m.find("differentials.a1") != std::string::npos);

    // x^2 + 1 = (x + 1)^2 is reducible; rejected at field construction
    m = thrown([&] { load_system_text(patch("\"degree\": 1", "\"degree\": 2"), "f.json"); });
    CHECK(m.find("f.json: field") != std::string::npos);

    m = thrown([&] { load_system_text(patch("\"coef\": \"1\"", "\"coef\": \"0\""), "f.json"); });
    CHECK(m.find("zero coefficient") != std::string::npos);

    m = thrown([&] { load_system_text(patch("\"coef\": \"1\"", "\"coef\": \"01\""), "f.json"); });
    CHECK(m.find("does not fit") != std::string::npos);

    m = thrown([&] { load_system_text(patch("\"pi1_rank\": 1", "\"pi1_rank\": 0"), "f.json"); });
    CHECK(m.find("outside the rank-0 component") != std::string::npos);

    m = thrown([&] { load_system_text(patch("\"mode\": \"consistent\"", "\"mode\": \"legendrian\""),
                                      "f.json"); });
    CHECK(m.find("mode is \"consistent\" or \"explicit\"") != std::string::npos);

    m = thrown([&] { load_system_text(patch("    \"y\"\n  ]\n}", "    \"w\"\n  ]\n}"), "f.json"); });
    CHECK(m.find("names no generator family") != std::string::npos);

    m = thrown([&] {
        load_system_text(patch("\"copies\": 2", "\"copies\": 2, \"inclusions\": []"), "f.json");
    });
    CHECK(m.find("explicit-mode key") != std::string::npos);

    m = thrown([&] { load_system_text(patch("\"degree\": -1", "\"degree\": -2"), "f.json"); });
    CHECK(m.find("x (degree 0) and y (degree -1)") != std::string::npos);
}

TEST_CASE("explicit-mode structural validation") {
    std::string text = serialize_system(explicitize(unknot(), 2).sys);
    auto patched = [&](const std::string& needle, const std::string& replacement) {
        std::string t = text;
        size_t at = t.find(needle);
        REQUIRE(at != std::string::npos);
        return t.replace(at, needle.size(), replacement);
    };

    // labels past the declared number of copies
    std::string m =
        thrown([&] { load_system_text(patched("\"copies\": 2", "\"copies\": 1"), "f.json"); });
    CHECK(m.find("outside 1..1") != std::string::npos);

    m = thrown([&] { load_system_text(patched("\"c\": 1", "\"c\": 2"), "f.json"); });
    CHECK(m.find("must lie in the subset") != std::string::npos);

    m = thrown([&] { load_system_text(patched("\"i\": 1", "\"i\": 2"), "f.json"); });
    CHECK(m.find("minima pair index 2") != std::string::npos);
}

TEST_CASE("load vs parse: mathematical violations are findings, not throws") {
    std::string text = R"({
        "version": "augcat-system-v1",
        "field": {"degree": 1},
        "mode": "consistent",
        "copies": 2,
        "components": [{"id": 1, "pi1_rank": 0}],
        "generators": [
            {"base": "a", "pairs": "all", "degree": 1},
            {"base": "x", "pairs": "upper", "degree": 0},
            {"base": "y", "pairs": "upper", "degree": -1}
        ],
        "differentials": {"a": [{"coef": "1", "word": [{"chord": "a"}]}]},
        "minima": ["y"]
    })";
    LoadedSystem ls = load_system_text(text, "bad");  // structurally fine
    CHECK(!ls.audit.ok());                            // d does not lower degree by 1

    std::string path = temp_path("acat_bad_degree.json");
    {
        std::ofstream out(path);
        out << text;
    }
    std::string m = thrown([&] { parse_system(path); });
    CHECK(m.find("fails validation") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("families round-trip through their file form") {
    DGASystem src = consistent_system(unknot(), 3);
    DGASystem tgt = consistent_system(unknot_stab(), 3);
    MorphismFamily fam = inclusion_family(src, tgt, 3);
    std::string text = serialize_family(fam);
    CHECK(text.find("\"identity\"") != std::string::npos);
    MorphismFamily back = parse_family_text(text, src, tgt, "fam");
    REQUIRE(back.maps.size() == fam.maps.size());
    for (const auto& [P, f] : fam.maps) CHECK(morphism_equal(back.maps.at(P), f));
    CHECK(serialize_family(back) == text);

    DGASystem esrc = consistent_system(trefoil(), 3);
    DGASystem etgt = consistent_system(trefoil_elem(), 3);
    MorphismFamily efam = entrywise_family(esrc, etgt, 3, "a1", "a2");
    std::string etext = serialize_family(efam);
    CHECK(etext.find("\"images\"") != std::string::npos);
    MorphismFamily eback = parse_family_text(etext, esrc, etgt, "fam");
    for (const auto& [P, f] : efam.maps) CHECK(morphism_equal(eback.maps.at(P), f));
    CHECK(serialize_family(eback) == etext);
}

TEST_CASE("a system file can embed the morphisms it is checked against") {
    DGASystem src = consistent_system(unknot(), 3);
    DGASystem tgt = consistent_system(unknot_stab(), 3);
    MorphismFamily fam = inclusion_family(src, tgt, 3);

    nlohmann::ordered_json sysdoc = nlohmann::ordered_json::parse(serialize_system(tgt));
    nlohmann::ordered_json famdoc = nlohmann::ordered_json::parse(serialize_family(fam));
    sysdoc["morphisms"] = famdoc["morphisms"];
    std::string text = sysdoc.dump(2) + "\n";

    LoadedSystem ls = load_system_text(text, "sys+fam");  // shape-validated on load
    CHECK(ls.audit.ok());
    MorphismFamily back = parse_family_text(text, src, tgt, "sys+fam");
    for (const auto& [P, f] : fam.maps) CHECK(morphism_equal(back.maps.at(P), f));

    std::string m = thrown(
        [&] { parse_family_text(serialize_system(tgt), src, tgt, "bare"); });
    CHECK(m.find("carries no morphisms") != std::string::npos);
}

TEST_CASE("multi-step family maps compose target endomorphisms") {
    DGASystem src = consistent_system(unknot(), 1);
    DGASystem tgt = consistent_system(unknot_stab(), 1);
    std::string text = R"({
        "version": "augcat-family-v1",
        "morphisms": [{
            "subset": [1],
            "steps": [
                {"kind": "identity"},
                {"kind": "images", "images": {
                    "a[1,1]": [{"coef": "1", "word": [{"chord": "a[1,1]"}]},
                               {"coef": "1", "word": [{"chord": "e2[1,1]"}]}]
                }}
            ]
        }]
    })";
    MorphismFamily fam = parse_family_text(text, src, tgt, "fam");
    const DGAMorphism& f = fam.maps.at({1});
    CHECK(apply(f, f.source.gen("a[1,1]")) ==
          f.target.gen("a[1,1]") + f.target.gen("e2[1,1]"));
    CHECK(verify_chain_map(f).ok());
}

TEST_CASE("family parse rejections") {
    DGASystem src = consistent_system(unknot_stab(), 2);
    DGASystem tgt = consistent_system(unknot(), 2);
    // reversed direction: e-chords have no namesake in the unknot system
    std::string m = thrown([&] {
        parse_family_text(serialize_family(inclusion_family(src, src, 2)), src, tgt, "fam");
    });
    CHECK(m.find("no namesake") != std::string::npos);

    std::string bad = R"({"version": "augcat-family-v1", "morphisms": [
        {"subset": [1], "steps": [{"kind": "images", "images": {"nope": []}}]}]})";
    m = thrown([&] { parse_family_text(bad, tgt, tgt, "fam"); });
    CHECK(m.find("not a generator of the step's source") != std::string::npos);

    std::string empty = R"({"version": "augcat-family-v1", "morphisms": [
        {"subset": [1], "steps": []}]})";
    m = thrown([&] { parse_family_text(empty, tgt, tgt, "fam"); });
    CHECK(m.find("at least one step") != std::string::npos);

    std::string vers = R"({"version": "augcat-family-v2", "morphisms": []})";
    m = thrown([&] { parse_family_text(vers, tgt, tgt, "fam"); });
    CHECK(m.find("unsupported format version") != std::string::npos);
}

TEST_CASE("report documents are byte-stable with fixed key order") {
    Report rep;
    rep.add("d-squared", "a", "d(d(a)) = t");
    nlohmann::ordered_json tables;
    tables["dims"] = {{"0", 1}};
    nlohmann::ordered_json doc = report_doc("check", "fail", rep, tables);
    CHECK(doc.dump() ==
          R"({"command":"check","status":"fail","findings":[{"rule":"d-squared","where":"a",)"
          R"("detail":"d(d(a)) = t"}],"tables":{"dims":{"0":1}}})");
    CHECK(report_doc("check", "pass", Report{}, {}).dump() ==
          R"({"command":"check","status":"pass","findings":[],"tables":{}})");
}

TEST_CASE("file loading reports missing files by path") {
    std::string m = thrown([] { load_system("/nonexistent/x.json"); });
    CHECK(m.find("cannot open file") != std::string::npos);
}
