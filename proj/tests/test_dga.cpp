#include <doctest.h>

#include "acat/copies.hpp"
#include "acat/dga.hpp"
#include "helpers.hpp"

using namespace acat;
using testdga::trefoil;
using testdga::unknot;

TEST_CASE("leibniz extension: d(1) = 0 and the two-factor example") {
    auto f = Field::gf2();
    auto spec = FreeProductSpec::make({{1, 1}});
    SemiFreeDGA dga({1}, GradingMode::Z, f, spec, {{1, 1}});
    dga.add_chord({"q1", 1, 1, 1});
    dga.add_chord({"q2", 1, 1, 1});
    dga.set_differential("q1", dga.zero());
    dga.set_differential("q2", dga.unit());

    CHECK(dga.leibniz_extend(dga.unit()).is_zero());
    // d(q1 q2) = d(q1) q2 + q1 d(q2) = 0 + q1 * 1 = q1
    CHECK(dga.leibniz_extend(dga.gen("q1") * dga.gen("q2")) == dga.gen("q1"));
}

TEST_CASE("unknot and trefoil pass the well-formedness check") {
    for (const SemiFreeDGA& dga : {unknot(), trefoil()}) {
        Report rep = dga_check(dga);
        CHECK_MESSAGE(rep.ok(), rep.str());
    }
}

TEST_CASE("well-formedness check flags a degree violation") {
    auto f = Field::gf2();
    auto spec = FreeProductSpec::make({{1, 1}});
    SemiFreeDGA dga({1}, GradingMode::Z, f, spec, {{1, 1}});
    dga.add_chord({"a", 2, 1, 1});
    dga.add_chord({"b", 0, 1, 1});
    dga.set_differential("a", dga.gen("b"));  // deg 0, should be deg 1
    dga.set_differential("b", dga.zero());
    Report rep = dga_check(dga);
    CHECK_FALSE(rep.ok());
    bool found = false;
    for (const auto& fd : rep.findings) found = found || fd.rule == "degree";
    CHECK(found);
}

TEST_CASE("well-formedness check flags d^2 != 0") {
    auto f = Field::gf2();
    auto spec = FreeProductSpec::make({{1, 1}});
    SemiFreeDGA dga({1}, GradingMode::Z, f, spec, {{1, 1}});
    dga.add_chord({"a", 2, 1, 1});
    dga.add_chord({"b", 1, 1, 1});
    dga.set_differential("a", dga.gen("b"));
    dga.set_differential("b", dga.unit());  // d(d(a)) = 1 != 0
    Report rep = dga_check(dga);
    CHECK_FALSE(rep.ok());
    bool found = false;
    for (const auto& fd : rep.findings) found = found || fd.rule == "d-squared";
    CHECK(found);
}

TEST_CASE("off-diagonal differentials may not contain the unit") {
    auto f = Field::gf2();
    auto spec = FreeProductSpec::make({{1, 1}, {2, 1}});
    SemiFreeDGA dga({1, 2}, GradingMode::Z, f, spec, {{1, 1}, {2, 2}});
    dga.add_chord({"a", 1, 1, 2});
    dga.set_differential("a", dga.unit());
    Report rep = dga_check(dga);
    CHECK_FALSE(rep.ok());
    bool found = false;
    for (const auto& fd : rep.findings) found = found || fd.rule == "link-grading";
    CHECK(found);
}

TEST_CASE("composability of words under the link grading") {
    auto f = Field::gf2();
    auto spec = FreeProductSpec::make({{1, 1}, {2, 1}});
    SemiFreeDGA dga({1, 2}, GradingMode::Z, f, spec, {{1, 1}, {2, 2}});
    dga.add_chord({"p", 1, 1, 2});
    dga.add_chord({"q", 1, 2, 1});
    dga.add_chord({"r", 1, 1, 1});

    auto W = [&](std::initializer_list<const char*> names) {
        Word w = Word::unit();
        for (auto n : names) w = w * Word::chord(dga.id_of(n));
        return w;
    };
    CHECK(dga.word_composable(W({"p", "q"}), 1, 1));
    CHECK(dga.word_composable(W({"p", "q", "r"}), 1, 1));
    CHECK_FALSE(dga.word_composable(W({"p", "q"}), 1, 2));   // ends at label 1
    CHECK_FALSE(dga.word_composable(W({"q", "p", "p"}), 2, 2));  // chain breaks at p.p
    CHECK_FALSE(dga.word_composable(W({"r", "q"}), 1, 1));       // r ends on 1, q starts on 2

    // A group element of component 2 may sit between p and q (boundary
    // label 2) but not in front of p (boundary label 1).
    auto t2 = GroupElement::generator(spec, 2, 1);
    Word good = Word::chord(dga.id_of("p")) * Word::group(t2) * Word::chord(dga.id_of("q"));
    Word bad = Word::group(t2) * Word::chord(dga.id_of("p")) * Word::chord(dga.id_of("q"));
    CHECK(dga.word_composable(good, 1, 1));
    CHECK_FALSE(dga.word_composable(bad, 1, 1));

    // The unit word is composable from any label to itself only.
    CHECK(dga.word_composable(Word::unit(), 1, 1));
    CHECK(dga.word_composable(Word::unit(), 2, 2));
    CHECK_FALSE(dga.word_composable(Word::unit(), 1, 2));
}

TEST_CASE("2-copy unknot matches the hand-computed differentials") {
    SemiFreeDGA base = unknot();
    SemiFreeDGA c2 = multi_copy(base, 2);

    // Generators: a[j,k] for all j,k; x[1,2]; y[1,2].
    CHECK(c2.num_chords() == 6);
    CHECK(c2.chord(c2.id_of("a[1,1]")).degree == 1);
    CHECK(c2.chord(c2.id_of("x[1,2]")).degree == 0);
    CHECK(c2.chord(c2.id_of("y[1,2]")).degree == -1);
    CHECK(c2.chord(c2.id_of("a[1,2]")).c == 1);
    CHECK(c2.chord(c2.id_of("a[1,2]")).r == 2);

    auto spec = c2.gspec();
    auto f = c2.field();
    auto t1 = GroupElement::generator(spec, 1, 1);
    auto t2 = GroupElement::generator(spec, 2, 1);
    auto gp = [&](const GroupElement& g) { return Poly::term(f, spec, Word::group(g), 1); };
    Poly a11 = c2.gen("a[1,1]"), a12 = c2.gen("a[1,2]");
    Poly a21 = c2.gen("a[2,1]"), a22 = c2.gen("a[2,2]");
    Poly x12 = c2.gen("x[1,2]"), y12 = c2.gen("y[1,2]");

    CHECK(c2.d(c2.id_of("a[1,1]")) == c2.unit() + gp(t1) + y12 * a21);
    CHECK(c2.d(c2.id_of("a[1,2]")) == x12 * gp(t2) + y12 * a22 + a11 * y12);
    CHECK(c2.d(c2.id_of("a[2,1]")).is_zero());
    CHECK(c2.d(c2.id_of("a[2,2]")) == c2.unit() + gp(t2) + a21 * y12);
    Poly t1_y12_t2inv = gp(t1) * y12 * gp(t2.inverse());
    CHECK(c2.d(c2.id_of("x[1,2]")) == y12 + t1_y12_t2inv);
    CHECK(c2.d(c2.id_of("y[1,2]")).is_zero());
}

TEST_CASE("copy DGAs are well-formed for several base knots and sizes") {
    for (int m : {1, 2, 3, 4}) {
        SemiFreeDGA cm = multi_copy(unknot(), m);
        Report rep = dga_check(cm);
        CHECK_MESSAGE(rep.ok(), "unknot m=", m, ": ", rep.str());
    }
    for (int m : {2, 3}) {
        SemiFreeDGA cm = multi_copy(trefoil(), m);
        Report rep = dga_check(cm);
        CHECK_MESSAGE(rep.ok(), "trefoil m=", m, ": ", rep.str());
    }
    SemiFreeDGA s3 = multi_copy(testdga::unknot_stab(), 3);
    Report rep = dga_check(s3);
    CHECK_MESSAGE(rep.ok(), rep.str());
    SemiFreeDGA e3 = multi_copy(testdga::trefoil_elem(), 3);
    rep = dga_check(e3);
    CHECK_MESSAGE(rep.ok(), rep.str());
}

TEST_CASE("copy construction over GF(4) is well-formed") {
    SemiFreeDGA c3 = multi_copy(trefoil(Field::get(2)), 3);
    Report rep = dga_check(c3);
    CHECK_MESSAGE(rep.ok(), rep.str());
}

TEST_CASE("pattern names round-trip") {
    CHECK(pattern_name("a", 2, 11) == "a[2,11]");
    std::string base;
    int j = 0, k = 0;
    REQUIRE(parse_pattern_name("a[2,11]", &base, &j, &k));
    CHECK(base == "a");
    CHECK(j == 2);
    CHECK(k == 11);
    CHECK_FALSE(parse_pattern_name("a", &base, &j, &k));
    CHECK_FALSE(parse_pattern_name("a[2]", &base, &j, &k));
}

TEST_CASE("quotient by the discrete partition splits a 2-copy into singles") {
    SemiFreeDGA c2 = multi_copy(unknot(), 2);
    SemiFreeDGA q = quotient_partition(c2, Partition{{{1}, {2}}});

    // Mixed chords a[1,2], a[2,1], x[1,2], y[1,2] die; diagonal chords stay.
    CHECK(q.num_chords() == 2);
    auto spec = q.gspec();
    auto f = q.field();
    auto gp = [&](int comp) {
        return Poly::term(f, spec, Word::group(GroupElement::generator(spec, comp, 1)), 1);
    };
    CHECK(q.d(q.id_of("a[1,1]")) == q.unit() + gp(1));
    CHECK(q.d(q.id_of("a[2,2]")) == q.unit() + gp(2));
    CHECK_MESSAGE(dga_check(q).ok(), dga_check(q).str());
}

TEST_CASE("quotient by the trivial partition changes nothing") {
    SemiFreeDGA c2 = multi_copy(unknot(), 2);
    SemiFreeDGA q = quotient_partition(c2, Partition{{{1, 2}}});
    std::string why;
    CHECK_MESSAGE(dga_equal(c2, q, &why), why);
}

TEST_CASE("iterated quotients agree with the direct quotient by the finer partition") {
    SemiFreeDGA c3 = multi_copy(trefoil(), 3);
    Partition fine{{{1}, {2}, {3}}};
    Partition mid{{{1, 2}, {3}}};
    SemiFreeDGA via_mid = quotient_partition(quotient_partition(c3, mid), fine);
    SemiFreeDGA direct = quotient_partition(c3, fine);
    std::string why;
    CHECK_MESSAGE(dga_equal(via_mid, direct, &why), why);
    // And in the other order.
    SemiFreeDGA via_fine = quotient_partition(quotient_partition(c3, fine), mid);
    CHECK_MESSAGE(dga_equal(via_fine, direct, &why), why);
}

TEST_CASE("subalgebra on the full label set is the identity") {
    SemiFreeDGA c2 = multi_copy(unknot(), 2);
    SemiFreeDGA s = subalgebra(c2, {1, 2});
    std::string why;
    CHECK_MESSAGE(dga_equal(c2, s, &why), why);
}

TEST_CASE("subalgebra of a 2-copy on one label is the 1-copy") {
    SemiFreeDGA c2 = multi_copy(unknot(), 2);
    SemiFreeDGA s = subalgebra(c2, {1});
    SemiFreeDGA c1 = multi_copy(unknot(), 1);
    std::string why;
    CHECK_MESSAGE(dga_equal(c1, s, &why), why);
}

TEST_CASE("subalgebra on {2,3} matches the relabelled 2-copy") {
    SemiFreeDGA c3 = multi_copy(trefoil(), 3);
    SemiFreeDGA s = subalgebra(c3, {2, 3});
    SemiFreeDGA c2 = multi_copy(trefoil(), 2);
    std::map<std::string, std::string> names;
    for (const auto& g : c2.chords()) {
        std::string base;
        int j = 0, k = 0;
        REQUIRE(parse_pattern_name(g.name, &base, &j, &k));
        names[g.name] = pattern_name(base, j + 1, k + 1);
    }
    SemiFreeDGA r = relabel_dga(c2, {{1, 2}, {2, 3}}, names);
    std::string why;
    CHECK_MESSAGE(dga_equal(r, s, &why), why);
}

TEST_CASE("subalgebra composes: restricting twice equals restricting once") {
    SemiFreeDGA c4 = multi_copy(unknot(), 4);
    SemiFreeDGA once = subalgebra(c4, {1, 3});
    SemiFreeDGA twice = subalgebra(subalgebra(c4, {1, 3, 4}), {1, 3});
    std::string why;
    CHECK_MESSAGE(dga_equal(once, twice, &why), why);
}

TEST_CASE("dga_equal detects differing differentials") {
    SemiFreeDGA a = unknot();
    SemiFreeDGA b = unknot();
    b.set_differential("a", b.unit());
    std::string why;
    CHECK_FALSE(dga_equal(a, b, &why));
    CHECK(why.find("a") != std::string::npos);
}

TEST_CASE("Z/2 grading mode reduces degrees in the law check") {
    auto f = Field::gf2();
    auto spec = FreeProductSpec::make({{1, 1}});
    SemiFreeDGA dga({1}, GradingMode::Z2, f, spec, {{1, 1}});
    dga.add_chord({"a", 1, 1, 1});
    dga.add_chord({"b", 0, 1, 1});
    // d(a) = b would also be fine over Z; d(b) = a has degree 1 = 0 - 1 mod 2.
    dga.set_differential("a", dga.gen("b"));
    dga.set_differential("b", dga.zero());
    CHECK(dga.degrees_equal(1, -1));
    CHECK_MESSAGE(dga_check(dga).ok(), dga_check(dga).str());
}
