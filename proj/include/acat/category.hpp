#pragma once
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "acat/ainfty.hpp"
#include "acat/morphism.hpp"
#include "acat/system.hpp"

namespace acat {

// ---------------------------------------------------------------------------
// pre-augmentation category
// ---------------------------------------------------------------------------

// An object (i, eps): a copy index together with an augmentation of the
// object algebra A^{{1}}, carried across copies by the canonical
// identification.
struct PreAugObject {
    int copy = 1;
    Augmentation aug;
};

// A dual cochain carried by chord names so it can travel between subset
// algebras. from/to are the copy labels of the supporting chords; `unit`
// marks the strict unit of the formal line hom((i,eps),(i,eps)) = k, which
// has no chord support.
struct CVect {
    int from = 0, to = 0;
    bool unit = false;
    std::map<std::string, uint64_t> coef;

    bool is_zero() const { return !unit && coef.empty(); }
    bool operator==(const CVect& o) const = default;
};

// hom((i,eps),(j,eps')): a complex over the pair algebra when i < j, the
// strict unit line when the objects coincide, zero otherwise. Throws when
// i > j.
struct PreaugHom {
    enum class Kind { general, unit_line, zero };
    Kind kind = Kind::zero;
    PreAugObject src, tgt;
    std::shared_ptr<AinfCtx> ctx;  // general only: A^{{i,j}} with the
                                   // (eps, eps') diagonal twist
    HomComplex hc;                 // general only; points into *ctx
};

PreaugHom preaug_hom(const DGASystem& sys, const PreAugObject& a, const PreAugObject& b);

// general: homology of hc; unit_line: one class in degree 0 (coordinate in
// the formal basis {1}); zero: empty.
HomologyTable preaug_homology(const PreaugHom& h);

// m_k over A^{{i_1,..,i_{k+1}}} with the diagonal twist, strict unitality
// for unit arguments: m_2(1, x) = m_2(x, 1) = x, m_2(1, 1) = 1, and every
// other m_k with a unit argument is zero. Outside the unit cases the object
// copies must be strictly increasing. The result is named in the outer pair
// algebra A^{{i_1, i_{k+1}}}.
CVect preaug_compose(const DGASystem& sys, const std::vector<PreAugObject>& objects,
                     const std::vector<CVect>& inputs);

// ---------------------------------------------------------------------------
// w-classes and the localised homs
// ---------------------------------------------------------------------------

struct WClass {
    int i = 1;         // the pair (i, i+1)
    Augmentation aug;  // the object augmentation eps, used on both slots
    CVect cochain;     // sum of the designated minima duals, named in
                       // A^{{i,i+1}}
};

// Builds w from the designated minima and certifies dual degree 0 and
// m_1(w) = 0 under the (eps, eps) diagonal; throws otherwise, quoting the
// nonzero output.
WClass w_class(const DGASystem& sys, const Augmentation& eps, int i);

// One audited transition H*hom((1,eps),(j,eps')) -> H*hom((1,eps),(j+1,eps'))
// given by x -> m_2(x, w_{eps',j}) inside A^{{1,j,j+1}}.
struct Transition {
    int j = 2;
    std::map<int, size_t> src_dims, tgt_dims;
    std::map<int, size_t> ranks;  // rank of the induced map per degree
    bool iso = false;
};

struct LocHom {
    Augmentation source, target;
    int witness = 0;                      // first j of two consecutive isos
    HomologyTable stable;                 // H of hom((1,eps),(witness,eps'))
    std::vector<Transition> transitions;  // audited at j = 2, 3, ...
    std::map<int, std::vector<CVect>> reps;  // stable representatives, named
                                             // in A^{{1,witness}}
};

// The localised hom: the transitions are followed until two consecutive ones
// are isomorphisms; the stable homology and its witness are returned. When
// the witness is 2 the result is cross-checked against pre-composition by
// w_{eps,1} (H((2,eps),(3,eps')) -> H((1,eps),(3,eps')) must also be an
// isomorphism); disagreement throws as a contract violation. Runs out of
// copies -> throws "insufficient copies".
LocHom loc_hom(const DGASystem& sys, const Augmentation& eps, const Augmentation& epsp);

// ---------------------------------------------------------------------------
// H0 category and the consistent-sequence construction
// ---------------------------------------------------------------------------

// entry[x][y] = coordinates of the composed class in the H^0 basis of
// hom(a, c), for x in the H^0 basis of hom(a, b) and y in that of hom(b, c)
using H0Table = std::vector<std::vector<std::vector<uint64_t>>>;

// The cohomology-level localisation: objects are the augmentations of the
// object algebra, homs the stabilized H*, composition on H^0 through
// A^{{1,2,3}} after transporting stable representatives along the canonical
// identification. The strict unit acts as the identity by definition; the
// [w] classes are audited separately: left and right action the identity
// matrix on every stable H*, and [w] itself nonzero in H^0. Without a
// canonical identification (explicit systems with no token coverage) the
// unit audit degrades to the transition isomorphisms and no tables are
// built; `identified` and `note` say so.
struct H0Category {
    std::vector<Augmentation> objects;
    std::map<std::pair<size_t, size_t>, LocHom> homs;
    std::map<std::tuple<size_t, size_t, size_t>, H0Table> tables;
    bool identified = true;
    std::string note;
    Report audit;  // unit actions, nonzero [w], associativity of the tables
};

H0Category h0_category(const DGASystem& sys);

// The direct construction on a consistent system: homs are the homology of
// C_{12} over A^{(2)}, composition comes from A^{(3)}, and the A-infinity
// relations are re-verified on increasing chains: arity <= min(3, kmax) over
// every object tuple via A^{(4)}, arity 4 on the diagonal tuples via
// A^{(5)}, both clamped to M - 1 copies.
struct ConsistentCat {
    std::vector<Augmentation> objects;
    std::map<std::pair<size_t, size_t>, HomologyTable> homs;
    std::map<std::pair<size_t, size_t>, std::map<int, std::vector<CVect>>> reps;
    std::map<std::tuple<size_t, size_t, size_t>, H0Table> tables;
    int arity_checked = 0;
    size_t tuples_checked = 0;
    Report ainf_audit;
};

// Throws when the system is not consistent or fails check_system.
ConsistentCat consistent_aug_cat(const DGASystem& sys, int kmax = 4);

// Graded dimensions and H^0 composition tables of h0_category vs
// consistent_aug_cat, compared through the change of basis that expresses
// the stable representatives in the copy-(1,2) homology. Construction errors
// are caught into the report, which also carries both constructions' audits.
Report compare_constructions(const DGASystem& sys);

// ---------------------------------------------------------------------------
// functors from morphism families
// ---------------------------------------------------------------------------

// (1) every supplied map is a verified chain map whose endpoints are the two
// systems' subset algebras, and (2) the inclusion squares commute for every
// nested pair of supplied subsets.
Report check_family(const MorphismFamily& fam, const DGASystem& srcSys, const DGASystem& tgtSys);

// The functor dual to a family f: srcSys -> tgtSys. It runs from the target
// system's category to the source system's: objects pull back along f^{{1}}
// (eps -> eps o f), and the components F_k dualize the twisted map
// f_eps = phi_eps o f o phi_{eps o f}^{-1} over A^{(k+1)}.
struct AinfFunctor {
    std::vector<Augmentation> objects;    // augmentations of the target system
    std::vector<Augmentation> pullbacks;  // eps o f, on the source system
    std::vector<size_t> object_map;       // index of each pullback among the
                                          // source augmentations
    // F_1 on hom((1,a),(2,b)): per degree, columns over the target hom basis,
    // rows over the source hom basis
    std::map<std::pair<size_t, size_t>, std::map<int, Mat>> F1;
    int arity_audited = 0;
    Report audit;
};

// Builds and audits the functor: the object map is a bijection onto the
// source augmentations, f_eps has no constant terms, the A-infinity functor
// equations hold on increasing chains (arity <= 2 over every object tuple,
// arity 3 on the diagonal tuples, clamped to the supplied subsets and copy
// counts), F_1 is a quasi-isomorphism on every hom, and H*F_1 sends [w'] to
// [w]. All violations land in `audit`.
AinfFunctor functor_from_family(const MorphismFamily& fam, const DGASystem& srcSys,
                                const DGASystem& tgtSys, int kmax = 3);

}  // namespace acat
