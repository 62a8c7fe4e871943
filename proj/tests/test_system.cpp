#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "acat/system.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace acat;
using testdga::Explicitized;
using testdga::explicitize;
using testdga::trefoil;
using testdga::unknot;

namespace {

DGASystem consistent_system(const SemiFreeDGA& base, int M,
                            std::vector<std::string> minima = {"y"}) {
    DGASystem s;
    s.mode = SystemMode::consistent;
    s.M = M;
    s.base = base;
    s.pattern_minima = std::move(minima);
    return s;
}

bool has_rule(const Report& r, const std::string& rule) {
    return std::any_of(r.findings.begin(), r.findings.end(),
                       [&](const Finding& f) { return f.rule == rule; });
}

template <class F>
std::string thrown_message(F&& body) {
    try {
        body();
    } catch (const error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("consistent systems over the bundled knots pass every invariant") {
    CHECK(check_system(consistent_system(unknot(), 3)).ok());
    CHECK(check_system(consistent_system(trefoil(), 3)).ok());
    CHECK(check_system(consistent_system(unknot(), 1, {})).ok());
}

TEST_CASE("system_dga hands out relabeled copy algebras") {
    DGASystem sys = consistent_system(unknot(), 3);
    SemiFreeDGA A = system_dga(sys, {1, 3});
    CHECK(A.labels() == std::vector<int>{1, 3});
    CHECK(A.num_chords() == 6);
    CHECK(A.find("a[1,3]"));
    CHECK(A.find("x[1,3]"));
    CHECK(!A.find("x[1,2]"));
    const ChordGen& g = A.chord(A.id_of("a[1,3]"));
    CHECK(g.degree == 1);
    CHECK(g.c == 1);
    CHECK(g.r == 3);
    CHECK(A.chord(A.id_of("y[1,3]")).degree == -1);
    CHECK(A.d(A.id_of("y[1,3]")) == A.zero());
    CHECK(dga_check(A).ok());
    std::vector<int> comps;
    for (const auto& c : A.gspec()->components()) comps.push_back(c.id);
    std::sort(comps.begin(), comps.end());
    CHECK(comps == std::vector<int>{1, 3});

    CHECK(dga_equal(system_dga(sys, {1, 2, 3}), multi_copy(unknot(), 3)));
    CHECK(thrown_message([&] { system_dga(sys, {3, 1}); }) ==
          "subset must be strictly increasing");
    CHECK(thrown_message([&] { system_dga(sys, {4}); }).find("outside") != std::string::npos);
    CHECK(thrown_message([&] { system_dga(sys, std::vector<int>{}); }).find("nonempty") !=
          std::string::npos);
}

TEST_CASE("restrictions of relabeled copies match the canonical construction") {
    // the reduction behind check_system, spot-checked directly once
    DGASystem sys = consistent_system(trefoil(), 3);
    SemiFreeDGA big = system_dga(sys, {1, 2, 3});
    std::string why;
    CHECK(dga_equal(subalgebra(big, {1, 3}), system_dga(sys, {1, 3}), &why));
    CHECK(why.empty());
    CHECK(dga_equal(subalgebra(big, {2}), system_dga(sys, {2})));
}

TEST_CASE("system_inclusion and system_token in consistent mode") {
    DGASystem sys = consistent_system(trefoil(), 3);
    auto inc = system_inclusion(sys, {1, 3}, {1, 2, 3});
    CHECK(inc.size() == system_dga(sys, {1, 3}).num_chords());
    for (const auto& [from, to] : inc) CHECK(from == to);
    CHECK(inc.count("a1[1,3]") == 1);

    CHECK(system_token(sys, {1, 3}, "a1[1,3]") == std::string("a1"));
    CHECK(system_token(sys, {1, 3}, "x[1,3]") == std::string("x"));
    CHECK(!system_token(sys, {1, 3}, "garbage"));

    CHECK(thrown_message([&] { system_inclusion(sys, {1, 2}, {1, 3}); }).find("nested") !=
          std::string::npos);
    CHECK(system_minima(sys, 2) == std::vector<std::string>{"y[2,3]"});
    CHECK(thrown_message([&] { system_minima(sys, 3); }).find("outside") != std::string::npos);
}

TEST_CASE("explicit systems rebuilt from the copy construction pass and interoperate") {
    Explicitized ex = explicitize(unknot(), 3);
    Report rep = check_system(ex.sys);
    INFO(rep.str());
    CHECK(rep.ok());

    // entries answer through the generic accessors
    SemiFreeDGA pair12 = system_dga(ex.sys, {1, 2});
    CHECK(pair12.num_chords() == 6);
    CHECK(!pair12.find("a[1,1]"));  // renamed away

    const std::string za11 = ex.rename[{1}].at("a[1,1]");
    auto inc = system_inclusion(ex.sys, {1}, {1, 2, 3});
    CHECK(inc.at(za11) == ex.rename[{1, 2, 3}].at("a[1,1]"));

    CHECK(system_token(ex.sys, {1}, za11) == std::string("a"));
    CHECK(system_minima(ex.sys, 2) ==
          std::vector<std::string>{ex.rename[{2, 3}].at("y[2,3]")});

    // dropping a covering map: the chain through it must fail loudly
    ex.sys.inclusions.erase({{1}, {1, 2}});
    CHECK(thrown_message([&] { system_inclusion(ex.sys, {1}, {1, 2}); }).find("no inclusion") !=
          std::string::npos);
    Report rep2 = check_system(ex.sys);
    CHECK(!rep2.ok());
    CHECK(has_rule(rep2, "inclusion"));
}

TEST_CASE("explicit systems may omit subsets, but not referenced ones") {
    Explicitized ex = explicitize(unknot(), 2);
    ex.sys.entries.erase({2});
    ex.sys.inclusions.erase({{2}, {1, 2}});
    ex.sys.identification.erase({2});
    CHECK(check_system(ex.sys).ok());
    CHECK(thrown_message([&] { system_dga(ex.sys, {2}); }).find("no DGA provided") !=
          std::string::npos);
}

TEST_CASE("check_system pinpoints a broken restriction") {
    Explicitized ex = explicitize(unknot(), 2);
    // rebuild the {1} entry with d(a) = 0: still a valid DGA on its own,
    // but no longer the restriction of the pair algebra
    SemiFreeDGA& one = ex.sys.entries.at({1});
    SemiFreeDGA bad(one.labels(), one.grading(), one.field(), one.gspec(),
                    one.component_labels());
    for (size_t i = 0; i < one.num_chords(); ++i) bad.add_chord(one.chord((int)i));
    for (size_t i = 0; i < one.num_chords(); ++i) bad.set_differential((int)i, bad.zero());
    ex.sys.entries.at({1}) = bad;

    Report rep = check_system(ex.sys);
    CHECK(!rep.ok());
    CHECK(has_rule(rep, "axiom-3"));
}

TEST_CASE("check_system flags label and minima violations") {
    Explicitized ex = explicitize(unknot(), 2);
    ex.sys.entries.at({2}) = ex.sys.entries.at({1});  // labels {1} under subset {2}
    Report rep = check_system(ex.sys);
    CHECK(!rep.ok());
    CHECK(has_rule(rep, "universe"));

    Explicitized ex2 = explicitize(unknot(), 2);
    ex2.sys.explicit_minima[1] = {ex2.rename[{1, 2}].at("x[1,2]")};  // degree 0, not -1
    Report rep2 = check_system(ex2.sys);
    CHECK(!rep2.ok());
    CHECK(has_rule(rep2, "minima"));

    Explicitized ex3 = explicitize(unknot(), 2);
    ex3.sys.explicit_minima[1] = {ex3.rename[{1, 2}].at("a[1,1]")};  // bigrade (1,1)
    CHECK(has_rule(check_system(ex3.sys), "minima"));

    CHECK(has_rule(check_system(consistent_system(unknot(), 3, {"x"})), "minima"));
    CHECK(has_rule(check_system(consistent_system(unknot(), 3, {"nope"})), "minima"));
    CHECK(has_rule(check_system(consistent_system(unknot(), 1, {"y"})), "minima"));
}

TEST_CASE("check_system catches a pure functoriality violation") {
    // two stabilisations in the same degree give the pair algebra a DGA
    // automorphism e* <-> f*; composing one covering inclusion with it keeps
    // every per-map invariant but breaks the commuting diamonds
    SemiFreeDGA base = unknot();
    base = stabilise(base, 2, 1, 1, "e1", "e2").first;
    base = stabilise(base, 2, 1, 1, "f1", "f2").first;
    Explicitized ex = explicitize(base, 3);
    REQUIRE(check_system(ex.sys).ok());

    auto swapped = [](const std::string& b) {
        if (b == "e1") return std::string("f1");
        if (b == "f1") return std::string("e1");
        if (b == "e2") return std::string("f2");
        if (b == "f2") return std::string("e2");
        return b;
    };
    auto& tampered = ex.sys.inclusions.at({{1, 2}, {1, 2, 3}});
    for (auto& [from, to] : tampered) {
        std::string pat;  // pattern name of the current image in {1,2,3}
        for (const auto& [p, z] : ex.rename[{1, 2, 3}])
            if (z == to) pat = p;
        REQUIRE(!pat.empty());
        std::string b;
        int j = 0, k = 0;
        REQUIRE(parse_pattern_name(pat, &b, &j, &k));
        to = ex.rename[{1, 2, 3}].at(pattern_name(swapped(b), j, k));
    }

    Report rep = check_system(ex.sys);
    INFO(rep.str());
    CHECK(!rep.ok());
    CHECK(has_rule(rep, "functoriality"));
    CHECK(!has_rule(rep, "axiom-3"));
    CHECK(!has_rule(rep, "inclusion"));
    CHECK(!has_rule(rep, "degree"));
    CHECK(!has_rule(rep, "labels"));
}

TEST_CASE("consistent mode rejects stray entries and broken bases") {
    DGASystem sys = consistent_system(unknot(), 2);
    sys.entries.emplace(std::vector<int>{1}, unknot());
    CHECK(has_rule(check_system(sys), "universe"));

    DGASystem sys2 = consistent_system(unknot(), 0, {});
    sys2.M = 0;
    CHECK(has_rule(check_system(sys2), "universe"));

    // a base chord named like the copy construction's own chords
    SemiFreeDGA clash = unknot();
    clash.add_chord({"x", 0, 1, 1});
    clash.set_differential("x", clash.zero());
    CHECK(has_rule(check_system(consistent_system(clash, 2)), "construction"));
}

TEST_CASE("base augmentations and diagonal augmentations") {
    DGASystem sys = consistent_system(trefoil(), 2);
    std::vector<Augmentation> augs = base_augs(sys);
    REQUIRE(augs.size() == 5);

    SemiFreeDGA one = system_dga(sys, {1});
    SemiFreeDGA big = system_dga(sys, {1, 2});
    Augmentation eps = diagonal_aug(sys, {1, 2}, {augs[0], augs[3]});
    CHECK(is_aug(big, eps, true));
    CHECK(eps.chord_val(big.id_of("b1[1,2]")) == 0);
    CHECK(eps.chord_val(big.id_of("b1[2,1]")) == 0);
    CHECK(eps.chord_val(big.id_of("x[1,2]")) == 0);
    CHECK(eps.chord_val(big.id_of("b1[1,1]")) == augs[0].chord_val(one.id_of("b1[1,1]")));
    CHECK(eps.chord_val(big.id_of("b2[2,2]")) == augs[3].chord_val(one.id_of("b2[1,1]")));
    CHECK(eps.groups.at({1, 1}) == augs[0].groups.at({1, 1}));
    CHECK(eps.groups.at({2, 1}) == augs[3].groups.at({1, 1}));

    // all 25 ordered pairs give valid diagonal augmentations
    int count = 0;
    for (const auto& e1 : augs)
        for (const auto& e2 : augs) {
            Augmentation d = diagonal_aug(sys, {1, 2}, {e1, e2});
            count += is_aug(big, d, true);
        }
    CHECK(count == 25);

    CHECK(thrown_message([&] { diagonal_aug(sys, {1, 2}, {augs[0]}); }).find("one part") !=
          std::string::npos);
    Augmentation junk = augs[0];
    junk.chords[one.id_of("a1[1,1]")] = 1;  // degree-1 chord
    CHECK(thrown_message([&] {
              diagonal_aug(sys, {1, 2}, {junk, augs[0]});
          }).find("not an augmentation") != std::string::npos);
}

TEST_CASE("diagonal augmentations may disagree on group values across copies") {
    // a base whose group letter is unconstrained, over F4: three augmentations
    // differing only in where t goes
    const Field* f4 = Field::get(2);
    auto spec = FreeProductSpec::make({{1, 1}});
    SemiFreeDGA base({1}, GradingMode::Z, f4, spec, {{1, 1}});
    base.add_chord({"s", 5, 1, 1});
    base.set_differential("s", base.zero());

    DGASystem sys = consistent_system(base, 2, {});
    std::vector<Augmentation> augs = base_augs(sys);
    REQUIRE(augs.size() == 3);
    REQUIRE(augs[0].groups.at({1, 1}) != augs[2].groups.at({1, 1}));

    Augmentation eps = diagonal_aug(sys, {1, 2}, {augs[0], augs[2]});
    CHECK(is_aug(system_dga(sys, {1, 2}), eps, true));
    CHECK(eps.groups.at({1, 1}) == augs[0].groups.at({1, 1}));
    CHECK(eps.groups.at({2, 1}) == augs[2].groups.at({1, 1}));
}

TEST_CASE("diagonal augmentations on explicit systems go through the identification") {
    Explicitized ex = explicitize(trefoil(), 2);
    std::vector<Augmentation> augs = base_augs(ex.sys);
    REQUIRE(augs.size() == 5);
    SemiFreeDGA big = system_dga(ex.sys, {1, 2});
    Augmentation eps = diagonal_aug(ex.sys, {1, 2}, {augs[1], augs[4]});
    CHECK(is_aug(big, eps, true));
    CHECK(eps.chord_val(big.id_of(ex.rename[{1, 2}].at("b1[1,2]"))) == 0);

    SemiFreeDGA one = system_dga(ex.sys, {1});
    CHECK(eps.chord_val(big.id_of(ex.rename[{1, 2}].at("b1[1,1]"))) ==
          augs[1].chord_val(one.id_of(ex.rename[{1}].at("b1[1,1]"))));

    // without the identification the transport must refuse
    DGASystem stripped = ex.sys;
    stripped.identification.clear();
    CHECK(thrown_message([&] {
              diagonal_aug(stripped, {1, 2}, {augs[1], augs[4]});
          }).find("identification") != std::string::npos);
}
