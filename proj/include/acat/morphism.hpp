#pragma once
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acat/dga.hpp"

namespace acat {

enum class MorKind { elementary, tame, stabilise, destabilise, composite };
std::string morkind_str(MorKind k);

// An invertible coefficient c·g of the group algebra: nonzero scalar times a
// group element. Group letters used next to a chord must carry the label of
// the adjacent endpoint, which verify_chain_map audits via the link grading.
struct UnitCoef {
    uint64_t scalar = 1;
    GroupElement g;
};

// The data (q, x, y, u) of an elementary substitution q ↦ xqy + u, kept on
// the morphism so the inverse q ↦ x⁻¹(q+u)y⁻¹ can be reconstructed exactly.
struct ElemStep {
    int chord;
    UnitCoef x, y;
    Poly u;
};

// A morphism of semi-free DGAs over the same field, group spec and labels:
// identity on group generators, chord q ↦ chord_images[q]. Construction does
// not enforce anything; verify_chain_map audits degree preservation, link
// grading compatibility and f∂ = ∂f.
struct DGAMorphism {
    SemiFreeDGA source, target;
    std::map<int, Poly> chord_images;  // keyed by source chord id
    MorKind kind = MorKind::tame;
    std::optional<ElemStep> elem;  // present iff kind == elementary
};

// A family of morphisms indexed by subsets of copy labels, one per subalgebra
// of a system; compatibility with inclusions is checked by check_family (see
// the system layer, which owns the subset bookkeeping).
struct MorphismFamily {
    std::map<std::vector<int>, DGAMorphism> maps;  // key: sorted subset P
};

// Substitutes chord images through p; group factors pass through unchanged.
Poly apply(const DGAMorphism& f, const Poly& p);

// Audits f: universes match, every chord has an image, images preserve degree
// and are composable from c(q) to r(q), and f(∂q) = ∂(f(q)) per generator
// with the first divergence expanded on both sides.
Report verify_chain_map(const DGAMorphism& f);

DGAMorphism identity_morphism(const SemiFreeDGA& dga);

// q ↦ xqy + u fixing every other generator, as a self-map of `dga`.
// Preconditions: x, y invertible (nonzero scalar); u homogeneous of degree
// |q| and not involving q. The chain-map property is verified against the
// dga's own differential, the inverse is built and both compositions are
// checked to be the identity; any failure throws.
DGAMorphism elementary_auto(const SemiFreeDGA& dga, const std::string& q, const UnitCoef& x,
                            const UnitCoef& y, const Poly& u);

// The same substitution read as a map between two presentations sharing the
// generator table (same names, degrees, labels, ids) but possibly different
// differentials; u is a polynomial over the target. Verified, throws on fail.
DGAMorphism elementary_step(const SemiFreeDGA& source, const SemiFreeDGA& target,
                            const std::string& q, const UnitCoef& x, const UnitCoef& y,
                            const Poly& u);

// Rewrites the differential through q ↦ xqy + u: the returned presentation
// has ∂' = φ∂φ⁻¹, making φ a verified isomorphism onto it.
std::pair<SemiFreeDGA, DGAMorphism> elementary_pushforward(const SemiFreeDGA& dga,
                                                           const std::string& q,
                                                           const UnitCoef& x, const UnitCoef& y,
                                                           const Poly& u);

// Inverse of an elementary morphism, reconstructed from its recorded step.
DGAMorphism elementary_inverse(const DGAMorphism& f);

// Adds e1 (degree deg) and e2 (degree deg−1) with ∂e1 = e2, ∂e2 = 0, both
// carrying labels (c, r); returns the enlarged DGA and the inclusion.
std::pair<SemiFreeDGA, DGAMorphism> stabilise(const SemiFreeDGA& dga, int deg, int c, int r,
                                              const std::string& e1, const std::string& e2);

// Removes e1, e2; requires ∂e1 = e2 exactly, ∂e2 = 0, and that neither
// appears in any other generator's differential. Returns the smaller DGA and
// the projection killing e1, e2.
std::pair<SemiFreeDGA, DGAMorphism> destabilise(const SemiFreeDGA& dga, const std::string& e1,
                                                const std::string& e2);

// `then ∘ first`; sources and targets must agree structurally.
DGAMorphism compose(const DGAMorphism& first, const DGAMorphism& then);

}  // namespace acat
