#pragma once
#include <map>
#include <vector>

#include "acat/augment.hpp"
#include "acat/linalg.hpp"

namespace acat {

// A k-linear combination of dual generators q^vee, all sharing the copy pair
// (from, to) of the underlying chords.
struct DualElt {
    int from = 0, to = 0;
    std::map<int, uint64_t> coef;  // chord id -> scalar (nonzero entries only)

    bool is_zero() const { return coef.empty(); }
    bool operator==(const DualElt& o) const = default;
};

// Operations dual to a differential twisted by a diagonal augmentation.
//
// Convention (pinned by ainf_selftest): the duals are graded by
// |q^vee| = |q| + 1 and
//
//   m_k(v_1, ..., v_k) = sum_q q^vee * Coeff_{v_1 v_2 ... v_k}(d_eps q)
//
// with the arguments chained left to right: v_i spans duals of chords with
// labels (j_i, j_{i+1}) and the result lives over (j_1, j_{k+1}). m_k has
// degree 2 - k.
class AinfCtx {
 public:
    AinfCtx(SemiFreeDGA big, Augmentation diag, bool verify_twist = false);

    const SemiFreeDGA& dga() const { return big_; }
    const Augmentation& aug() const { return diag_; }
    const std::vector<Poly>& twisted() const { return tw_; }

    // Basis of hom(j, k): ids of chords with labels (j, k), ascending.
    const std::vector<int>& hom_basis(int j, int k) const;
    int dual_degree(int id) const;  // normalized |q| + 1

    DualElt dual(int id, uint64_t c = 1) const;
    DualElt zero(int j, int k) const { return DualElt{j, k, {}}; }
    DualElt add(DualElt a, const DualElt& b) const;
    DualElt mk(const std::vector<DualElt>& v) const;

    std::string dual_str(const DualElt& v) const;

 private:
    // twisted words bucketed by their exact chord sequence, built on first
    // use: word chords -> [(owner chord, coefficient)]
    const std::map<std::vector<int>, std::vector<std::pair<int, uint64_t>>>& word_index() const;

    SemiFreeDGA big_;
    Augmentation diag_;
    std::vector<Poly> tw_;
    std::map<std::pair<int, int>, std::vector<int>> basis_;
    std::vector<int> empty_;
    mutable std::map<std::vector<int>, std::vector<std::pair<int, uint64_t>>> windex_;
    mutable bool windex_built_ = false;
};

// Verifies the A-infinity relations
//
//   sum_{r+s+t=n} m_{r+1+t}(v_1..v_r, m_s(v_{r+1}..v_{r+s}), v_{r+s+1}..v_n) = 0
//
// on tuples of basis duals up to arity kmax.
struct AinfCheckOptions {
    int kmax = 4;
    // Check every composable basis tuple. Exponential; small inputs only.
    bool full_enumeration = false;
    // Restrict to tuples whose duals all have from < to (the chains that
    // matter for categories built on ordered copy labels).
    bool increasing_only = false;
};

Report check_ainf(const AinfCtx& ctx, const AinfCheckOptions& opt = {},
                  size_t* tuples_checked = nullptr);

// Computes m_k by an independent route (bucketed word tables, reversed
// iteration); used to cross-check AinfCtx::mk.
DualElt dual_oracle_mk(const AinfCtx& ctx, const std::vector<DualElt>& v);

// Hard-coded orientation check: d(a) = b c + 1 with eps(b) = eps(c) = 1
// twists to b c + b + c, so m_2(b^vee, c^vee) = a^vee, m_2(c^vee, b^vee) = 0,
// and m_1(b^vee) = m_1(c^vee) = a^vee. Throws if the implementation drifts.
void ainf_selftest();

// One cochain complex hom(eps_j, eps_k) with differential m_1. Degrees are
// normalized (all of Z for Z-graded DGAs, {0,1} cyclically in Z/2 mode).
struct HomComplex {
    const AinfCtx* ctx;
    int from, to;
    std::map<int, std::vector<int>> basis;  // degree -> chord ids
    Mat m1(int degree) const;               // matrix of m_1: C^deg -> C^deg+1
    std::map<int, size_t> homology_dims() const;
};

HomComplex hom_complex(const AinfCtx& ctx, int j, int k);

// Homology with chosen representatives: reduced-echelon kernel vectors that
// stay independent modulo the image, as coordinate vectors in the degree-d
// basis. Only degrees with nonzero homology appear.
struct HomologyTable {
    std::map<int, size_t> dims;
    std::map<int, std::vector<std::vector<uint64_t>>> reps;
};

// Throws when the differential does not square to zero (upstream corruption).
HomologyTable homology(const HomComplex& hc);

}  // namespace acat
