#pragma once
#include <map>
#include <vector>

#include "acat/dga.hpp"

namespace acat {

// A unital algebra map to the coefficient field: zero on chords of nonzero
// (normalized) degree, invertible on group generators. Chords absent from
// `chords` map to 0; every group letter must be present in `groups`.
struct Augmentation {
    const Field* f = nullptr;
    std::map<int, uint64_t> chords;                  // chord id -> value
    std::map<std::pair<int, int>, uint64_t> groups;  // (component, letter) -> unit

    uint64_t chord_val(int id) const;
    uint64_t eval_group(const GroupElement& g) const;  // throws on missing letters
    uint64_t eval_word(const Word& w) const;
    uint64_t eval(const Poly& p) const;

    bool operator==(const Augmentation& o) const {
        return chords == o.chords && groups == o.groups;
    }
    bool operator<(const Augmentation& o) const {
        if (chords != o.chords) return chords < o.chords;
        return groups < o.groups;
    }

    std::string str(const SemiFreeDGA& dga) const;
};

// Validity of eps on dga: field agreement, support only on chords of
// normalized degree 0 (and only diagonal chords when diagonal_only), group
// letters all present and invertible, and eps(d q) = 0 for every chord q.
Report aug_check(const SemiFreeDGA& dga, const Augmentation& eps, bool diagonal_only);
bool is_aug(const SemiFreeDGA& dga, const Augmentation& eps, bool diagonal_only = false);

// All augmentations of dga over its own field, in a deterministic order.
// Backtracking over the unknowns (group letters over k^*, then supported
// chords over k) ordered by how many differential relations they touch, with
// forced-value propagation through relations linear in one unknown.
std::vector<Augmentation> enumerate_augs(const SemiFreeDGA& dga, bool diagonal_only = true);

// Reference enumeration by exhausting the full assignment space. Throws when
// the space exceeds ~4M assignments; only suitable for small inputs.
std::vector<Augmentation> enumerate_augs_brute(const SemiFreeDGA& dga, bool diagonal_only = true);

// Substitutes q -> q + eps(q) into p and evaluates every group element
// through eps, leaving pure chord words (identity in every group slot).
// The caller guarantees eps is valid on dga.
Poly twist_poly(const SemiFreeDGA& dga, const Augmentation& eps, const Poly& p);

// The differential twisted by eps: twist_poly applied to every d(q), after
// validating eps. The results have the same degrees as d.
std::vector<Poly> twist(const SemiFreeDGA& dga, const Augmentation& eps);

// Extends a per-chord differential to a polynomial by the Leibniz rule
// (characteristic 2). Group factors pass through as constants.
Poly leibniz_with(const SemiFreeDGA& dga, const std::vector<Poly>& diffs, const Poly& p);

// Checks that a twisted differential squares to zero, lowers degree by one
// and has no unit terms (eps(d q) = 0 folds them away).
Report twist_check(const SemiFreeDGA& dga, const std::vector<Poly>& tw);

}  // namespace acat
