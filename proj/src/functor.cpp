#include <algorithm>
#include <memory>
#include <set>

#include "acat/category.hpp"
#include "acat/error.hpp"
#include "category_detail.hpp"

namespace acat {

using detail::class_coords;
using detail::induced_rank;
using detail::named;
using detail::subset_str;
using detail::tipped;
using detail::vec_str;

namespace {

// carries an augmentation to a structurally equal presentation by chord name
Augmentation remap_aug(const SemiFreeDGA& from, const SemiFreeDGA& to, const Augmentation& e) {
    Augmentation out;
    out.f = e.f;
    out.groups = e.groups;
    for (const auto& [id, v] : e.chords) out.chords[to.id_of(from.chord(id).name)] = v;
    return out;
}

}  // namespace

Report check_family(const MorphismFamily& fam, const DGASystem& srcSys, const DGASystem& tgtSys) {
    Report rep;
    if (fam.maps.empty()) {
        rep.add("family", "-", "the family supplies no maps");
        return rep;
    }
    for (const auto& [P, f] : fam.maps) {
        std::string where = subset_str(P);
        std::string why;
        try {
            SemiFreeDGA s = system_dga(srcSys, P);
            SemiFreeDGA t = system_dga(tgtSys, P);
            if (!dga_equal(f.source, s, &why)) {
                rep.add("family", where, "map source is not the source system's algebra: " + why);
                continue;
            }
            if (!dga_equal(f.target, t, &why)) {
                rep.add("family", where, "map target is not the target system's algebra: " + why);
                continue;
            }
        } catch (const error& e) {
            rep.add("family", where, e.what());
            continue;
        }
        Report v = verify_chain_map(f);
        for (const auto& fd : v.findings) rep.add(fd.rule, where + " " + fd.where, fd.detail);
    }
    if (!rep.ok()) return rep;

    // the inclusion squares must commute for every nested pair of subsets
    for (const auto& [P, fP] : fam.maps)
        for (const auto& [Pp, fPp] : fam.maps) {
            if (P.size() >= Pp.size() || !std::includes(Pp.begin(), Pp.end(), P.begin(), P.end()))
                continue;
            std::string where = subset_str(P) + " into " + subset_str(Pp);
            std::map<std::string, std::string> iS, iT;
            try {
                iS = system_inclusion(srcSys, P, Pp);
                iT = system_inclusion(tgtSys, P, Pp);
            } catch (const error& e) {
                rep.add("family-square", where, e.what());
                continue;
            }
            for (size_t q = 0; q < fP.source.num_chords(); ++q) {
                const std::string& nm = fP.source.chord((int)q).name;
                auto big = fPp.source.find(iS.at(nm));
                if (!big) {
                    rep.add("family-square", where,
                            "inclusion image of " + nm + " is missing upstairs");
                    continue;
                }
                const Poly& lhs = fPp.chord_images.at(*big);
                Poly rhs = fP.chord_images.at((int)q).map_chords([&](int t) {
                    return fPp.target.id_of(iT.at(fP.target.chord(t).name));
                });
                if (!(lhs == rhs))
                    rep.add("family-square", where,
                            "including then mapping differs from mapping then including at " +
                                nm);
            }
        }
    return rep;
}

namespace {

// One object tuple's worth of functor data over A^{(m)}: the two twisted
// contexts and f_eps = phi_eps o f o phi_{eps o f}^{-1} per source chord,
// with words over the target context's chord ids.
struct EqData {
    std::unique_ptr<AinfCtx> ctxT, ctxS;
    std::map<int, Poly> feps;
};

EqData build_eq(const MorphismFamily& fam, const DGASystem& srcSys, const DGASystem& tgtSys,
                int m, const std::vector<Augmentation>& tparts,
                const std::vector<Augmentation>& sparts, Report& rep, const std::string& who) {
    EqData D;
    std::vector<int> P(m);
    for (int i = 0; i < m; ++i) P[i] = i + 1;
    const DGAMorphism& fm = fam.maps.at(P);
    SemiFreeDGA tgtBig = system_dga(tgtSys, P);
    SemiFreeDGA srcBig = system_dga(srcSys, P);
    Augmentation dT = diagonal_aug(tgtSys, P, tparts);
    Augmentation dS = diagonal_aug(srcSys, P, sparts);
    Augmentation dTm = remap_aug(tgtBig, fm.target, dT);
    Augmentation dSm = remap_aug(srcBig, fm.source, dS);
    for (size_t q = 0; q < fm.source.num_chords(); ++q) {
        Poly tp = twist_poly(fm.target, dTm, fm.chord_images.at((int)q));
        uint64_t c0 = dSm.chord_val((int)q);
        if (c0) tp = tp + fm.target.unit().scaled(c0);
        if (tp.coeff_of_word(Word::unit()) != 0)
            rep.add("constant-term", who,
                    "f_eps(" + fm.source.chord((int)q).name + ") has a constant term");
        int sid = srcBig.id_of(fm.source.chord((int)q).name);
        D.feps.emplace(sid, tp.map_chords([&](int t) {
            return tgtBig.id_of(fm.target.chord(t).name);
        }));
    }
    D.ctxT = std::make_unique<AinfCtx>(std::move(tgtBig), dT);
    D.ctxS = std::make_unique<AinfCtx>(std::move(srcBig), dS);
    return D;
}

// F_k(v_1, .., v_k) = sum_q q^vee * Coeff_{v_1 .. v_k}(f_eps q), arguments
// chained left to right like m_k
DualElt F_apply(const EqData& D, const std::vector<DualElt>& v) {
    if (v.empty()) throw error("F needs at least one argument");
    DualElt out = D.ctxS->zero(v.front().from, v.back().to);
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i].to != v[i + 1].from) return out;
    const size_t k = v.size();
    const Field* f = D.ctxS->dga().field();
    for (int q : D.ctxS->hom_basis(out.from, out.to)) {
        uint64_t acc = 0;
        for (const auto& [w, cf] : D.feps.at(q).terms()) {
            if (w.chords.size() != k) continue;
            uint64_t prod = cf;
            for (size_t i = 0; i < k && prod; ++i) {
                auto it = v[i].coef.find(w.chords[i]);
                prod = it == v[i].coef.end() ? 0 : f->mul(prod, it->second);
            }
            acc = f->add(acc, prod);
        }
        if (acc) out.coef[q] = acc;
    }
    return out;
}

// sum_{r+s+t=n} F_{r+1+t}(v_1..v_r, m_s(v_{r+1}..v_{r+s}), v_{r+s+1}..v_n)
DualElt lhs_sum(const EqData& D, const std::vector<DualElt>& v) {
    const size_t n = v.size();
    DualElt lhs = D.ctxS->zero(v.front().from, v.back().to);
    for (size_t r = 0; r < n; ++r)
        for (size_t s = 1; r + s <= n; ++s) {
            DualElt mi = D.ctxT->mk(std::vector<DualElt>(v.begin() + r, v.begin() + r + s));
            if (mi.is_zero()) continue;
            std::vector<DualElt> args(v.begin(), v.begin() + r);
            args.push_back(std::move(mi));
            args.insert(args.end(), v.begin() + r + s, v.end());
            lhs = D.ctxS->add(std::move(lhs), F_apply(D, args));
        }
    return lhs;
}

// sum over splittings i_1+..+i_l = n of m_l(F_{i_1}(..), .., F_{i_l}(..))
DualElt rhs_sum(const EqData& D, const std::vector<DualElt>& v) {
    const size_t n = v.size();
    DualElt rhs = D.ctxS->zero(v.front().from, v.back().to);
    for (uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<DualElt> args;
        size_t start = 0;
        bool dead = false;
        for (size_t i = 0; i < n; ++i) {
            if (i + 1 != n && !((mask >> i) & 1u)) continue;
            DualElt Fi = F_apply(D, std::vector<DualElt>(v.begin() + start, v.begin() + i + 1));
            if (Fi.is_zero()) {
                dead = true;
                break;
            }
            args.push_back(std::move(Fi));
            start = i + 1;
        }
        if (dead) continue;
        rhs = D.ctxS->add(std::move(rhs), D.ctxS->mk(args));
    }
    return rhs;
}

// the arity-n functor equation on every chain of basis duals over the
// positions (1,2), (2,3), .., (n, n+1)
void audit_equations(const EqData& D, int n, const std::string& who, Report& rep) {
    std::vector<const std::vector<int>*> bs(n);
    for (int i = 0; i < n; ++i) {
        bs[i] = &D.ctxT->hom_basis(i + 1, i + 2);
        if (bs[i]->empty()) return;
    }
    std::vector<size_t> idx(n, 0);
    while (true) {
        std::vector<DualElt> v;
        for (int i = 0; i < n; ++i) v.push_back(D.ctxT->dual((*bs[i])[idx[i]]));
        DualElt l = lhs_sum(D, v), r = rhs_sum(D, v);
        if (!(l == r)) {
            std::string tup;
            for (int i = 0; i < n; ++i)
                tup += (i ? ", " : "") + D.ctxT->dga().chord((*bs[i])[idx[i]]).name + "^";
            rep.add("functor-equation", who + " chain (" + tup + ")",
                    "F(m-side) = " + D.ctxS->dual_str(l) +
                        " but m(F-side) = " + D.ctxS->dual_str(r));
        }
        int pos = n - 1;
        while (pos >= 0 && ++idx[pos] == bs[pos]->size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
}

const std::vector<int>& basis_slice(const HomComplex& hc, int d) {
    static const std::vector<int> none;
    auto it = hc.basis.find(d);
    return it == hc.basis.end() ? none : it->second;
}

}  // namespace

AinfFunctor functor_from_family(const MorphismFamily& fam, const DGASystem& srcSys,
                                const DGASystem& tgtSys, int kmax) {
    AinfFunctor F;
    F.audit = check_family(fam, srcSys, tgtSys);
    if (!F.audit.ok()) return F;

    auto it1 = fam.maps.find({1});
    if (it1 == fam.maps.end()) {
        F.audit.add("family", "{1}", "no map supplied for the object algebra");
        return F;
    }
    const DGAMorphism& f1 = it1->second;
    F.objects = base_augs(tgtSys);
    std::vector<Augmentation> srcAugs = base_augs(srcSys);
    SemiFreeDGA tgt1 = system_dga(tgtSys, {1});
    SemiFreeDGA src1 = system_dga(srcSys, {1});
    for (size_t a = 0; a < F.objects.size(); ++a) {
        Augmentation et = remap_aug(tgt1, f1.target, F.objects[a]);
        Augmentation pb;
        pb.f = F.objects[a].f;
        pb.groups = F.objects[a].groups;
        for (size_t q = 0; q < f1.source.num_chords(); ++q) {
            uint64_t v = et.eval(f1.chord_images.at((int)q));
            if (v) pb.chords[(int)q] = v;
        }
        Augmentation pbs = remap_aug(f1.source, src1, pb);
        F.pullbacks.push_back(pbs);
        auto pos = std::find(srcAugs.begin(), srcAugs.end(), pbs);
        if (pos == srcAugs.end()) {
            F.audit.add("object-map", "object " + std::to_string(a),
                        "the pullback is not among the source augmentations");
            return F;
        }
        F.object_map.push_back((size_t)(pos - srcAugs.begin()));
    }
    {
        std::set<size_t> seen(F.object_map.begin(), F.object_map.end());
        if (seen.size() != F.object_map.size() || F.object_map.size() != srcAugs.size())
            F.audit.add("object-map", "-",
                        "pulling back is not a bijection onto the source augmentations (" +
                            std::to_string(F.objects.size()) + " objects, " +
                            std::to_string(srcAugs.size()) + " source augmentations, " +
                            std::to_string(seen.size()) + " distinct images)");
    }

    int prefix = 0;
    for (int m = 1;; ++m) {
        std::vector<int> P(m);
        for (int i = 0; i < m; ++i) P[i] = i + 1;
        if (!fam.maps.count(P)) break;
        prefix = m;
    }
    int cap = std::min({kmax, prefix - 1, srcSys.M - 1, tgtSys.M - 1});
    F.arity_audited = cap;
    const size_t n = F.objects.size();
    const Field* f = srcSys.field();

    // pairs: chain-map equation, F_1 matrices, quasi-isomorphism, [w'] -> [w]
    if (cap >= 1)
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                std::string who =
                    "objects (" + std::to_string(a) + "," + std::to_string(b) + ")";
                EqData D = build_eq(fam, srcSys, tgtSys, 2, {F.objects[a], F.objects[b]},
                                    {F.pullbacks[a], F.pullbacks[b]}, F.audit, who);
                audit_equations(D, 1, who, F.audit);

                HomComplex hcT = hom_complex(*D.ctxT, 1, 2);
                HomComplex hcS = hom_complex(*D.ctxS, 1, 2);
                std::set<int> degs;
                for (const auto& [d, ids] : hcT.basis) degs.insert(d);
                for (const auto& [d, ids] : hcS.basis) degs.insert(d);
                std::map<int, Mat> F1;
                for (int d : degs) {
                    const auto& cols = basis_slice(hcT, d);
                    const auto& rows = basis_slice(hcS, d);
                    std::map<int, size_t> row_of;
                    for (size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
                    Mat m(f, rows.size(), cols.size());
                    for (size_t col = 0; col < cols.size(); ++col) {
                        DualElt img = F_apply(D, {D.ctxT->dual(cols[col])});
                        for (const auto& [sid, c] : img.coef) {
                            auto rit = row_of.find(sid);
                            if (rit == row_of.end())
                                F.audit.add("degree-drift", who,
                                            "F_1 output leaves the degree-" + std::to_string(d) +
                                                " slice at " + D.ctxS->dga().chord(sid).name);
                            else
                                m.at(rit->second, col) = c;
                        }
                    }
                    F1.emplace(d, std::move(m));
                }

                HomologyTable HT = homology(hcT);
                HomologyTable HS = homology(hcS);
                std::set<int> hdegs;
                for (const auto& [d, v] : HT.dims) hdegs.insert(d);
                for (const auto& [d, v] : HS.dims) hdegs.insert(d);
                for (int d : hdegs) {
                    auto ti = HT.dims.find(d);
                    auto si = HS.dims.find(d);
                    size_t dt = ti == HT.dims.end() ? 0 : ti->second;
                    size_t ds = si == HS.dims.end() ? 0 : si->second;
                    size_t rk = dt ? induced_rank(f, F1.at(d), HT.reps.at(d), hcS.m1(d - 1)) : 0;
                    if (rk != dt || dt != ds)
                        F.audit.add("quasi-iso", who + " degree " + std::to_string(d),
                                    "H dims " + std::to_string(dt) + " -> " +
                                        std::to_string(ds) + ", induced rank " +
                                        std::to_string(rk));
                }
                F.F1.emplace(std::make_pair(a, b), std::move(F1));

                if (a == b) {
                    WClass wt = w_class(tgtSys, F.objects[a], 1);
                    WClass ws = w_class(srcSys, F.pullbacks[a], 1);
                    DualElt Fw = F_apply(D, {tipped(*D.ctxT, wt.cochain)});
                    auto got = class_coords(*D.ctxS, hcS, HS, named(*D.ctxS, Fw), 0,
                                            "w-class transport");
                    auto want =
                        class_coords(*D.ctxS, hcS, HS, ws.cochain, 0, "w-class transport");
                    if (got != want)
                        F.audit.add("w-transport", "object " + std::to_string(a),
                                    "H F_1([w']) reduces to " + vec_str(got) + " but [w] is " +
                                        vec_str(want));
                }
            }

    // arity 2 on every object triple
    if (cap >= 2)
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                for (size_t c = 0; c < n; ++c) {
                    std::string who = "objects (" + std::to_string(a) + "," +
                                      std::to_string(b) + "," + std::to_string(c) + ")";
                    EqData D = build_eq(fam, srcSys, tgtSys, 3,
                                        {F.objects[a], F.objects[b], F.objects[c]},
                                        {F.pullbacks[a], F.pullbacks[b], F.pullbacks[c]},
                                        F.audit, who);
                    audit_equations(D, 2, who, F.audit);
                }

    // arity 3 on the diagonal tuples
    if (cap >= 3)
        for (size_t a = 0; a < n; ++a) {
            std::string who = "diagonal object " + std::to_string(a);
            EqData D = build_eq(fam, srcSys, tgtSys, 4,
                                std::vector<Augmentation>(4, F.objects[a]),
                                std::vector<Augmentation>(4, F.pullbacks[a]), F.audit, who);
            audit_equations(D, 3, who, F.audit);
        }
    return F;
}

}  // namespace acat
