#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "acat/category.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace acat;
using testdga::consistent_system;
using testdga::entrywise_family;
using testdga::inclusion_family;
using testdga::trefoil;
using testdga::trefoil_elem;
using testdga::unknot;
using testdga::unknot_stab;

namespace {

bool has_rule(const Report& r, const std::string& rule) {
    return std::any_of(r.findings.begin(), r.findings.end(),
                       [&](const Finding& f) { return f.rule == rule; });
}

}  // namespace

TEST_CASE("check_family passes on the stabilisation inclusions") {
    DGASystem src = consistent_system(unknot(), 3);
    DGASystem tgt = consistent_system(unknot_stab(), 3);
    MorphismFamily fam = inclusion_family(src, tgt, 3);
    Report rep = check_family(fam, src, tgt);
    INFO(rep.str());
    CHECK(rep.ok());
}

TEST_CASE("check_family passes on the entrywise elementary family") {
    DGASystem src = consistent_system(trefoil(), 3);
    DGASystem tgt = consistent_system(trefoil_elem(), 3);
    MorphismFamily fam = entrywise_family(src, tgt, 3, "a1", "a2");
    Report rep = check_family(fam, src, tgt);
    INFO(rep.str());
    CHECK(rep.ok());
}

TEST_CASE("check_family flags broken members and broken squares") {
    DGASystem src = consistent_system(unknot(), 3);
    DGASystem tgt = consistent_system(unknot_stab(), 3);

    // not a chain map: send a[1,1] to zero
    MorphismFamily fam = inclusion_family(src, tgt, 3);
    DGAMorphism& f1 = fam.maps.at({1});
    f1.chord_images.at(f1.source.id_of("a[1,1]")) = f1.target.zero();
    Report rep = check_family(fam, src, tgt);
    CHECK(!rep.ok());
    CHECK(has_rule(rep, "chain-map"));

    // wrong endpoint: the {1} map's source is not the system's object algebra
    MorphismFamily fam2 = inclusion_family(src, tgt, 3);
    fam2.maps.at({1}).source = system_dga(tgt, {1});
    Report rep2 = check_family(fam2, src, tgt);
    CHECK(has_rule(rep2, "family"));

    // a pure square violation: a -> a + e2 is a chain map of the object
    // algebras (e2 is a base cocycle of degree 1) but does not commute with
    // the inclusions, because the subset maps still send a to a
    MorphismFamily fam3 = inclusion_family(src, tgt, 3);
    DGAMorphism& g1 = fam3.maps.at({1});
    g1.chord_images.at(g1.source.id_of("a[1,1]")) =
        g1.target.gen("a[1,1]") + g1.target.gen("e2[1,1]");
    Report rep3 = check_family(fam3, src, tgt);
    REQUIRE(!rep3.ok());
    for (const Finding& f : rep3.findings) CHECK(f.rule == "family-square");
}

TEST_CASE("functor_from_family dualizes the stabilisation inclusions") {
    DGASystem src = consistent_system(unknot(), 3);
    DGASystem tgt = consistent_system(unknot_stab(), 3);
    AinfFunctor F = functor_from_family(inclusion_family(src, tgt, 3), src, tgt);
    INFO(F.audit.str());
    CHECK(F.audit.ok());
    REQUIRE(F.objects.size() == 1);
    CHECK(F.object_map == std::vector<size_t>{0});
    CHECK(F.arity_audited == 2);
    // F_1 on hom(eps,eps): the target complex has the e-copies on top of the
    // source complex; the degree-0 slice is y^ -> y^
    const std::map<int, Mat>& F1 = F.F1.at({0, 0});
    REQUIRE(F1.count(0));
    CHECK(F1.at(0).rows == 1);
    CHECK(F1.at(0).cols == 1);
    CHECK(F1.at(0).at(0, 0) == 1);
}

TEST_CASE("functor_from_family dualizes the elementary family on the trefoil") {
    DGASystem src = consistent_system(trefoil(), 3);
    DGASystem tgt = consistent_system(trefoil_elem(), 3);
    AinfFunctor F = functor_from_family(entrywise_family(src, tgt, 3, "a1", "a2"), src, tgt);
    INFO(F.audit.str());
    CHECK(F.audit.ok());
    REQUIRE(F.objects.size() == 5);
    CHECK(F.pullbacks.size() == 5);
    CHECK(F.arity_audited == 2);
    std::set<size_t> images(F.object_map.begin(), F.object_map.end());
    CHECK(images.size() == 5);  // a bijection on augmentations
    CHECK(F.F1.size() == 25);
}

TEST_CASE("functor_from_family reports a family that fails its preconditions") {
    DGASystem src = consistent_system(trefoil(), 3);
    DGASystem tgt = consistent_system(trefoil_elem(), 3);
    MorphismFamily fam = entrywise_family(src, tgt, 3, "a1", "a2");
    // forgetting the substitution on one subset breaks the chain map there
    DGAMorphism& f2 = fam.maps.at({1, 2});
    f2.chord_images.at(f2.source.id_of("a1[1,2]")) = f2.target.gen("a1[1,2]");
    AinfFunctor F = functor_from_family(fam, src, tgt);
    CHECK(!F.audit.ok());
    CHECK(F.objects.empty());  // stopped before the object map
}
