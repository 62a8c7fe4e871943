#pragma once
#include <random>
#include <string>
#include <vector>

#include "acat/copies.hpp"
#include "acat/dga.hpp"
#include "acat/morphism.hpp"
#include "acat/random.hpp"
#include "acat/system.hpp"

// Base knot DGAs used across the test suite. Both live on a single copy
// label with one rank-1 group component (the knot's longitude class t).
namespace testdga {

using namespace acat;
using acat::random_dga;

// One chord a of degree 1 with d(a) = 1 + t.
inline SemiFreeDGA unknot(const Field* f = Field::gf2()) {
    auto spec = FreeProductSpec::make({{1, 1}});
    SemiFreeDGA dga({1}, GradingMode::Z, f, spec, {{1, 1}});
    dga.add_chord({"a", 1, 1, 1});
    auto t = GroupElement::generator(spec, 1, 1);
    dga.set_differential("a", dga.unit() + Poly::term(f, spec, Word::group(t), 1));
    return dga;
}

// Chords a1, a2 of degree 1 and b1, b2, b3 of degree 0 with
//   d(a1) = t^-1 + b1 + b3 + b1 b2 b3
//   d(a2) = t    + b1 + b3 + b3 b2 b1
inline SemiFreeDGA trefoil(const Field* f = Field::gf2()) {
    auto spec = FreeProductSpec::make({{1, 1}});
    SemiFreeDGA dga({1}, GradingMode::Z, f, spec, {{1, 1}});
    dga.add_chord({"a1", 1, 1, 1});
    dga.add_chord({"a2", 1, 1, 1});
    dga.add_chord({"b1", 0, 1, 1});
    dga.add_chord({"b2", 0, 1, 1});
    dga.add_chord({"b3", 0, 1, 1});
    auto t = GroupElement::generator(spec, 1, 1);
    auto gp = [&](const GroupElement& g) { return Poly::term(f, spec, Word::group(g), 1); };
    Poly b1 = dga.gen("b1"), b2 = dga.gen("b2"), b3 = dga.gen("b3");
    dga.set_differential("a1", gp(t.inverse()) + b1 + b3 + b1 * b2 * b3);
    dga.set_differential("a2", gp(t) + b1 + b3 + b3 * b2 * b1);
    return dga;
}

// The unknot after one degree-2 stabilisation: extra chords e1 (degree 2)
// and e2 (degree 1) with d(e1) = e2.
inline SemiFreeDGA unknot_stab(const Field* f = Field::gf2()) {
    SemiFreeDGA dga = unknot(f);
    dga.add_chord({"e1", 2, 1, 1});
    dga.add_chord({"e2", 1, 1, 1});
    dga.set_differential("e1", dga.gen("e2"));
    return dga;
}

// A consistent system over `base` with M copies and the structural minima.
inline DGASystem consistent_system(const SemiFreeDGA& base, int M,
                                   std::vector<std::string> minima = {"y"}) {
    DGASystem s;
    s.mode = SystemMode::consistent;
    s.M = M;
    s.base = base;
    s.pattern_minima = std::move(minima);
    return s;
}

// The family of name-preserving inclusions A_src^{(m)} -> A_tgt^{(m)} for
// the prefixes {1}, {1,2}, .., {1..maxM}; every source chord name must exist
// in the target copy algebra.
inline MorphismFamily inclusion_family(const DGASystem& srcSys, const DGASystem& tgtSys,
                                       int maxM) {
    MorphismFamily fam;
    for (int m = 1; m <= maxM; ++m) {
        std::vector<int> P(m);
        for (int i = 0; i < m; ++i) P[i] = i + 1;
        DGAMorphism f{system_dga(srcSys, P), system_dga(tgtSys, P), {}, MorKind::tame, {}};
        for (size_t q = 0; q < f.source.num_chords(); ++q)
            f.chord_images.emplace((int)q, f.target.gen(f.source.chord((int)q).name));
        fam.maps.emplace(P, std::move(f));
    }
    return fam;
}

// The family induced on copies by a base substitution q0 -> q0 + q1 (both
// base chord names), identity on every other generator: each copy chord
// q0[j,k] maps to q0[j,k] + q1[j,k].
inline MorphismFamily entrywise_family(const DGASystem& srcSys, const DGASystem& tgtSys,
                                       int maxM, const std::string& q0, const std::string& q1) {
    MorphismFamily fam;
    for (int m = 1; m <= maxM; ++m) {
        std::vector<int> P(m);
        for (int i = 0; i < m; ++i) P[i] = i + 1;
        DGAMorphism f{system_dga(srcSys, P), system_dga(tgtSys, P), {}, MorKind::tame, {}};
        for (size_t q = 0; q < f.source.num_chords(); ++q) {
            const ChordGen& g = f.source.chord((int)q);
            std::string base;
            int j = 0, k = 0;
            Poly img = f.target.gen(g.name);
            if (parse_pattern_name(g.name, &base, &j, &k) && base == q0)
                img = img + f.target.gen(pattern_name(q1, j, k));
            f.chord_images.emplace((int)q, img);
        }
        fam.maps.emplace(P, std::move(f));
    }
    return fam;
}

// The trefoil pushed through the elementary automorphism a1 -> a1 + a2:
//   d(a1) = t^-1 + t + b1 b2 b3 + b3 b2 b1, rest unchanged.
inline SemiFreeDGA trefoil_elem(const Field* f = Field::gf2()) {
    SemiFreeDGA dga = trefoil(f);
    auto spec = dga.gspec();
    auto t = GroupElement::generator(spec, 1, 1);
    auto gp = [&](const GroupElement& g) { return Poly::term(f, spec, Word::group(g), 1); };
    Poly b1 = dga.gen("b1"), b2 = dga.gen("b2"), b3 = dga.gen("b3");
    dga.set_differential("a1", gp(t.inverse()) + gp(t) + b1 * b2 * b3 + b3 * b2 * b1);
    return dga;
}

// An explicit-mode system with the same content as the consistent one over
// `base`: every subset present, chords renamed to opaque serials z0, z1, ...
// so that nothing can lean on pattern names; the identification tokens
// recover the base-family names.
struct Explicitized {
    DGASystem sys;
    std::map<std::vector<int>, std::map<std::string, std::string>> rename;  // pattern -> serial
};

inline Explicitized explicitize(const SemiFreeDGA& base, int M,
                                std::vector<std::string> minima = {"y"}) {
    DGASystem src = consistent_system(base, M, minima);
    Explicitized ex;
    ex.sys.mode = SystemMode::explicit_subsets;
    ex.sys.M = M;
    std::vector<std::vector<int>> subsets;
    for (int mask = 1; mask < (1 << M); ++mask) {
        std::vector<int> P;
        for (int i = 0; i < M; ++i)
            if (mask & (1 << i)) P.push_back(i + 1);
        subsets.push_back(P);
    }
    for (const auto& P : subsets) {
        SemiFreeDGA A = system_dga(src, P);
        SemiFreeDGA R(A.labels(), A.grading(), A.field(), A.gspec(), A.component_labels());
        for (size_t i = 0; i < A.num_chords(); ++i) {
            const ChordGen& g = A.chord((int)i);
            std::string z = "z" + std::to_string(i);
            ex.rename[P][g.name] = z;
            R.add_chord({z, g.degree, g.c, g.r});
            std::string b;
            int j = 0, k = 0;
            if (!parse_pattern_name(g.name, &b, &j, &k))
                throw error("explicitize: unpatterned chord name " + g.name);
            ex.sys.identification[P][z] = b;
        }
        for (size_t i = 0; i < A.num_chords(); ++i) R.set_differential((int)i, A.d((int)i));
        ex.sys.entries.emplace(P, std::move(R));
    }
    for (const auto& P : subsets) {
        if (P.size() < 2) continue;
        for (size_t drop = 0; drop < P.size(); ++drop) {
            std::vector<int> Q;
            for (size_t i = 0; i < P.size(); ++i)
                if (i != drop) Q.push_back(P[i]);
            std::map<std::string, std::string> m;
            for (const auto& [pat, z] : ex.rename[Q]) m[z] = ex.rename[P].at(pat);
            ex.sys.inclusions[{Q, P}] = std::move(m);
        }
    }
    for (int i = 1; i < M; ++i) {
        std::vector<int> pair{i, i + 1};
        std::vector<std::string> names;
        for (const auto& b : minima)
            names.push_back(ex.rename[pair].at(pattern_name(b, i, i + 1)));
        ex.sys.explicit_minima[i] = names;
    }
    return ex;
}

}  // namespace testdga
