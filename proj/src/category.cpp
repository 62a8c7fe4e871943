#include "acat/category.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "acat/error.hpp"
#include "category_detail.hpp"

namespace acat {

namespace detail {

std::string subset_str(const std::vector<int>& P) {
    std::string s = "{";
    for (size_t i = 0; i < P.size(); ++i) s += (i ? "," : "") + std::to_string(P[i]);
    return s + "}";
}

std::string vec_str(const std::vector<uint64_t>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

CVect named(const AinfCtx& ctx, const DualElt& d) {
    CVect v{d.from, d.to, false, {}};
    for (const auto& [id, c] : d.coef) v.coef[ctx.dga().chord(id).name] = c;
    return v;
}

DualElt tipped(const AinfCtx& ctx, const CVect& v) {
    if (v.unit) throw error("the strict unit has no chord support");
    DualElt d = ctx.zero(v.from, v.to);
    for (const auto& [n, c] : v.coef) {
        auto id = ctx.dga().find(n);
        if (!id) throw error("cochain mentions a chord absent from the algebra: " + n);
        d.coef[*id] = c;
    }
    return d;
}

// coordinates of v in the degree-d basis slice of hc
static std::vector<uint64_t> coords_in(const AinfCtx& ctx, const HomComplex& hc, const CVect& v,
                                       int d) {
    int dn = ctx.dga().degree_norm(d);
    auto it = hc.basis.find(dn);
    const std::vector<int> none;
    const std::vector<int>& ids = it == hc.basis.end() ? none : it->second;
    std::vector<uint64_t> x(ids.size(), 0);
    DualElt dv = tipped(ctx, v);
    for (const auto& [id, c] : dv.coef) {
        auto pos = std::lower_bound(ids.begin(), ids.end(), id);
        if (pos == ids.end() || *pos != id)
            throw error("cochain leaves the expected degree or bigrade at chord " +
                        ctx.dga().chord(id).name);
        x[pos - ids.begin()] = c;
    }
    return x;
}

std::vector<uint64_t> class_coords(const AinfCtx& ctx, const HomComplex& hc,
                                   const HomologyTable& H, const CVect& v, int d,
                                   const std::string& what) {
    const Field* f = ctx.dga().field();
    int dn = ctx.dga().degree_norm(d);
    std::vector<uint64_t> x = coords_in(ctx, hc, v, dn);
    auto rit = H.reps.find(dn);
    const std::vector<std::vector<uint64_t>> none;
    const std::vector<std::vector<uint64_t>>& reps = rit == H.reps.end() ? none : rit->second;
    if (x.empty()) return std::vector<uint64_t>(reps.size(), 0);
    Mat B = hc.m1(dn - 1);
    Mat A(f, x.size(), reps.size() + B.cols);
    for (size_t k = 0; k < reps.size(); ++k)
        for (size_t r = 0; r < x.size(); ++r) A.at(r, k) = reps[k][r];
    for (size_t c = 0; c < B.cols; ++c)
        for (size_t r = 0; r < B.rows; ++r) A.at(r, reps.size() + c) = B.at(r, c);
    auto sol = solve(A, x);
    if (!sol) throw error(what + ": the vector is not a cocycle in the recorded class span");
    return std::vector<uint64_t>(sol->begin(), sol->begin() + reps.size());
}

size_t induced_rank(const Field* f, const Mat& F, const std::vector<std::vector<uint64_t>>& reps,
                    const Mat& image) {
    Mat FR(f, F.rows, reps.size());
    for (size_t k = 0; k < reps.size(); ++k) {
        std::vector<uint64_t> y = F.apply(reps[k]);
        for (size_t r = 0; r < F.rows; ++r) FR.at(r, k) = y[r];
    }
    return rank(FR.beside(image)) - rank(image);
}

}  // namespace detail

using detail::class_coords;
using detail::induced_rank;
using detail::named;
using detail::subset_str;
using detail::tipped;
using detail::vec_str;

namespace {

std::string aug_fp(const Augmentation& a) {
    std::string s;
    for (const auto& [id, v] : a.chords) s += std::to_string(id) + ":" + std::to_string(v) + ",";
    s += "|";
    for (const auto& [k, v] : a.groups)
        s += std::to_string(k.first) + "." + std::to_string(k.second) + ":" + std::to_string(v) +
             ",";
    return s;
}

// ---------- named-cochain plumbing ----------

CVect rename_through(const CVect& v, const std::map<std::string, std::string>& nmap) {
    CVect out{v.from, v.to, v.unit, {}};
    for (const auto& [n, c] : v.coef) {
        auto it = nmap.find(n);
        if (it == nmap.end()) throw error("chord " + n + " has no image under the inclusion");
        out.coef[it->second] = c;
    }
    return out;
}

CVect include_into(const DGASystem& sys, const CVect& v, const std::vector<int>& P,
                   const std::vector<int>& Pp) {
    return rename_through(v, system_inclusion(sys, P, Pp));
}

CVect project_onto(const DGASystem& sys, const CVect& v, const std::vector<int>& Pp,
                   const std::vector<int>& P) {
    auto inc = system_inclusion(sys, P, Pp);
    std::map<std::string, std::string> rev;
    for (const auto& [s, t] : inc) rev[t] = s;
    return rename_through(v, rev);
}

// Canonical-identification transport: each support chord's token is looked
// up among the chords of `tgt` (the algebra of subset Q) at the bigrade
// (qc, qr). Throws when a token is missing or ambiguous.
CVect retoken(const DGASystem& sys, const CVect& v, const std::vector<int>& P,
              const SemiFreeDGA& tgt, const std::vector<int>& Q, int qc, int qr) {
    std::map<std::string, std::string> tok2name;
    for (const auto& g : tgt.chords()) {
        if (g.c != qc || g.r != qr) continue;
        auto t = system_token(sys, Q, g.name);
        if (t && !tok2name.emplace(*t, g.name).second)
            throw error("canonical identification is ambiguous for token " + *t + " at (" +
                        std::to_string(qc) + "," + std::to_string(qr) + ")");
    }
    CVect out{qc, qr, v.unit, {}};
    for (const auto& [n, c] : v.coef) {
        auto t = system_token(sys, P, n);
        if (!t) throw error("no canonical token for chord " + n + " of " + subset_str(P));
        auto it = tok2name.find(*t);
        if (it == tok2name.end())
            throw error("no chord with token " + *t + " at bigrade (" + std::to_string(qc) + "," +
                        std::to_string(qr) + ") of " + subset_str(Q));
        out.coef[it->second] = c;
    }
    return out;
}

// ---------- pair complexes and w-action matrices ----------

struct PairData {
    std::vector<int> P;  // {i, j}
    std::shared_ptr<AinfCtx> ctx;
    HomComplex hc;
    HomologyTable H;
};

PairData make_pair_data(const DGASystem& sys, int i, int j, const Augmentation& e1,
                        const Augmentation& e2) {
    PairData pd;
    pd.P = {i, j};
    pd.ctx = std::make_shared<AinfCtx>(system_dga(sys, pd.P), diagonal_aug(sys, pd.P, {e1, e2}));
    pd.hc = hom_complex(*pd.ctx, i, j);
    pd.H = homology(pd.hc);
    return pd;
}

std::map<int, std::vector<CVect>> named_reps(const PairData& pd) {
    std::map<int, std::vector<CVect>> out;
    for (const auto& [d, reps] : pd.H.reps) {
        const auto& ids = pd.hc.basis.at(d);
        for (const auto& r : reps) {
            CVect v{pd.P.front(), pd.P.back(), false, {}};
            for (size_t p = 0; p < ids.size(); ++p)
                if (r[p]) v.coef[pd.ctx->dga().chord(ids[p]).name] = r[p];
            out[d].push_back(v);
        }
    }
    return out;
}

// The cochain map C(src) -> C(tgt) given by x -> m_2(x, w) (post) or
// x -> m_2(w, x) (pre), computed inside A^T with the stated diagonal parts.
// w is named in A^{wP}; all three subsets must be included in T.
std::map<int, Mat> m2_w_matrices(const DGASystem& sys, const std::vector<int>& T,
                                 const std::vector<Augmentation>& parts, const PairData& src,
                                 const PairData& tgt, const CVect& w, const std::vector<int>& wP,
                                 bool post) {
    AinfCtx ctx3(system_dga(sys, T), diagonal_aug(sys, T, parts));
    DualElt wd = tipped(ctx3, include_into(sys, w, wP, T));
    auto incS = system_inclusion(sys, src.P, T);
    auto incT = system_inclusion(sys, tgt.P, T);
    std::map<std::string, std::string> rev;  // A^T name -> target pair name
    for (const auto& [s, t] : incT) rev[t] = s;

    const Field* f = src.ctx->dga().field();
    std::map<int, Mat> F;
    for (const auto& [d, ids] : src.hc.basis) {
        auto rit = tgt.hc.basis.find(d);
        const std::vector<int> none;
        const std::vector<int>& rows = rit == tgt.hc.basis.end() ? none : rit->second;
        std::map<int, size_t> row_of;
        for (size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
        Mat m(f, rows.size(), ids.size());
        for (size_t col = 0; col < ids.size(); ++col) {
            const std::string& nm = src.ctx->dga().chord(ids[col]).name;
            DualElt x3 = ctx3.dual(ctx3.dga().id_of(incS.at(nm)));
            DualElt r = post ? ctx3.mk({x3, wd}) : ctx3.mk({wd, x3});
            for (const auto& [id3, c] : r.coef) {
                auto pr = rev.find(ctx3.dga().chord(id3).name);
                if (pr == rev.end())
                    throw error("w-action output leaves the target pair algebra");
                size_t row = row_of.at(tgt.ctx->dga().id_of(pr->second));
                m.at(row, col) = c;
            }
        }
        F.emplace(d, std::move(m));
    }
    return F;
}

// rank audit of an induced map on homology, per degree over the union of
// source and target homology degrees
std::pair<bool, std::map<int, size_t>> audit_iso(const PairData& src, const PairData& tgt,
                                                 const std::map<int, Mat>& F) {
    const Field* f = src.ctx->dga().field();
    std::set<int> degs;
    for (const auto& [d, n] : src.H.dims) degs.insert(d);
    for (const auto& [d, n] : tgt.H.dims) degs.insert(d);
    bool iso = true;
    std::map<int, size_t> ranks;
    for (int d : degs) {
        auto sit = src.H.dims.find(d);
        auto tit = tgt.H.dims.find(d);
        size_t ds = sit == src.H.dims.end() ? 0 : sit->second;
        size_t dt = tit == tgt.H.dims.end() ? 0 : tit->second;
        size_t rk = 0;
        if (ds) rk = induced_rank(f, F.at(d), src.H.reps.at(d), tgt.hc.m1(d - 1));
        ranks[d] = rk;
        if (rk != ds || ds != dt) iso = false;
    }
    return {iso, ranks};
}

struct CtxCache {
    const DGASystem* sys;
    std::map<std::string, std::shared_ptr<AinfCtx>> store;

    explicit CtxCache(const DGASystem& s) : sys(&s) {}
    std::shared_ptr<AinfCtx> get(const std::vector<int>& P,
                                 const std::vector<Augmentation>& parts) {
        std::string key = subset_str(P) + "#";
        for (const auto& a : parts) key += aug_fp(a) + "/";
        auto it = store.find(key);
        if (it != store.end()) return it->second;
        auto ctx =
            std::make_shared<AinfCtx>(system_dga(*sys, P), diagonal_aug(*sys, P, parts));
        store.emplace(std::move(key), ctx);
        return ctx;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// pre-augmentation category
// ---------------------------------------------------------------------------

PreaugHom preaug_hom(const DGASystem& sys, const PreAugObject& a, const PreAugObject& b) {
    if (a.copy > b.copy)
        throw error("hom((i,eps),(j,eps')) needs i <= j, got i = " + std::to_string(a.copy) +
                    ", j = " + std::to_string(b.copy));
    PreaugHom h;
    h.src = a;
    h.tgt = b;
    if (a.copy == b.copy) {
        h.kind = a.aug == b.aug ? PreaugHom::Kind::unit_line : PreaugHom::Kind::zero;
        return h;
    }
    h.kind = PreaugHom::Kind::general;
    std::vector<int> P{a.copy, b.copy};
    h.ctx = std::make_shared<AinfCtx>(system_dga(sys, P), diagonal_aug(sys, P, {a.aug, b.aug}));
    h.hc = hom_complex(*h.ctx, a.copy, b.copy);
    return h;
}

HomologyTable preaug_homology(const PreaugHom& h) {
    switch (h.kind) {
        case PreaugHom::Kind::general:
            return homology(h.hc);
        case PreaugHom::Kind::unit_line: {
            HomologyTable t;
            t.dims[0] = 1;
            t.reps[0] = {{1}};
            return t;
        }
        case PreaugHom::Kind::zero:
            return {};
    }
    throw error("unreachable hom kind");
}

CVect preaug_compose(const DGASystem& sys, const std::vector<PreAugObject>& objects,
                     const std::vector<CVect>& inputs) {
    if (inputs.empty()) throw error("composition needs at least one input");
    if (objects.size() != inputs.size() + 1)
        throw error("k inputs need k+1 objects, got " + std::to_string(inputs.size()) + " and " +
                    std::to_string(objects.size()));
    size_t k = inputs.size();
    size_t units = 0;
    for (size_t l = 0; l < k; ++l) {
        if (inputs[l].unit) {
            ++units;
            if (objects[l].copy != objects[l + 1].copy || !(objects[l].aug == objects[l + 1].aug))
                throw error("a strict unit input needs equal endpoint objects at slot " +
                            std::to_string(l + 1));
        } else if (inputs[l].from != objects[l].copy || inputs[l].to != objects[l + 1].copy) {
            throw error("input bigrade does not match its objects at slot " +
                        std::to_string(l + 1));
        }
    }
    if (units) {
        if (k == 2) {
            if (inputs[0].unit && inputs[1].unit) return inputs[0];  // m_2(1, 1) = 1
            return inputs[0].unit ? inputs[1] : inputs[0];
        }
        // m_1(1) = 0 and m_k(..., 1, ...) = 0 for k >= 3
        return CVect{objects.front().copy, objects.back().copy, false, {}};
    }
    std::vector<int> P;
    std::vector<Augmentation> parts;
    for (const auto& o : objects) {
        if (!P.empty() && o.copy <= P.back())
            throw error("object copies must be strictly increasing outside the unit cases");
        P.push_back(o.copy);
        parts.push_back(o.aug);
    }
    AinfCtx ctx(system_dga(sys, P), diagonal_aug(sys, P, parts));
    std::vector<DualElt> v;
    for (size_t l = 0; l < k; ++l)
        v.push_back(tipped(ctx, include_into(sys, inputs[l], {P[l], P[l + 1]}, P)));
    CVect out = named(ctx, ctx.mk(v));
    if (P.size() == 2) return out;
    return project_onto(sys, out, P, {P.front(), P.back()});
}

// ---------------------------------------------------------------------------
// w-classes and localised homs
// ---------------------------------------------------------------------------

WClass w_class(const DGASystem& sys, const Augmentation& eps, int i) {
    std::vector<std::string> mins = system_minima(sys, i);
    if (mins.empty()) throw error("no minima designated for the pair (" + std::to_string(i) +
                                  "," + std::to_string(i + 1) + ")");
    std::vector<int> P{i, i + 1};
    SemiFreeDGA pair = system_dga(sys, P);
    AinfCtx ctx(pair, diagonal_aug(sys, P, {eps, eps}));
    DualElt w = ctx.zero(i, i + 1);
    for (const auto& n : mins) {
        auto id = ctx.dga().find(n);
        if (!id) throw error("designated minimum " + n + " is not a chord of A^" + subset_str(P));
        const ChordGen& g = ctx.dga().chord(*id);
        if (!ctx.dga().degrees_equal(g.degree, -1) || g.c != i || g.r != i + 1)
            throw error("designated minimum " + n +
                        " is not a degree-0 dual of bigrade (i,i+1)");
        w = ctx.add(w, ctx.dual(*id));
    }
    DualElt dw = ctx.mk({w});
    if (!dw.is_zero())
        throw error("w fails the cocycle certificate: m_1(w) = " + ctx.dual_str(dw));
    WClass out;
    out.i = i;
    out.aug = eps;
    out.cochain = named(ctx, w);
    return out;
}

namespace {

// pre-composition audit at witness 2: m_2(w_eps, -) must be an isomorphism
// H((2,eps),(3,eps')) -> H((1,eps),(3,eps')), and the stable dimensions must
// agree with it
void cross_check_precompose(const DGASystem& sys, const Augmentation& eps,
                            const Augmentation& epsp, const PairData& pair13,
                            const HomologyTable& stable) {
    PairData mid = make_pair_data(sys, 2, 3, eps, epsp);
    if (mid.H.dims != stable.dims || pair13.H.dims != stable.dims)
        throw error("pre-composition cross-check failed: stable dimensions disagree between "
                    "hom((1,eps),(2,eps')), hom((2,eps),(3,eps')) and hom((1,eps),(3,eps'))");
    WClass w = w_class(sys, eps, 1);
    std::map<int, Mat> F = m2_w_matrices(sys, {1, 2, 3}, {eps, eps, epsp}, mid, pair13,
                                         w.cochain, {1, 2}, /*post=*/false);
    auto [iso, ranks] = audit_iso(mid, pair13, F);
    if (!iso)
        throw error("pre-composition cross-check failed: m_2(w, -) is not an isomorphism onto "
                    "H((1,eps),(3,eps'))");
}

}  // namespace

LocHom loc_hom(const DGASystem& sys, const Augmentation& eps, const Augmentation& epsp) {
    LocHom out;
    out.source = eps;
    out.target = epsp;
    if (sys.M < 3)
        throw insufficient_copies(
            sys.M, 3,
            "insufficient copies: auditing a transition needs M >= 3, got M = " +
                std::to_string(sys.M));
    std::vector<PairData> pds;  // pds[l] is the pair (1, l + 2)
    pds.push_back(make_pair_data(sys, 1, 2, eps, epsp));
    int run = 0;
    for (int j = 2; j + 1 <= sys.M; ++j) {
        pds.push_back(make_pair_data(sys, 1, j + 1, eps, epsp));
        const PairData& src = pds[j - 2];
        const PairData& tgt = pds[j - 1];
        WClass w = w_class(sys, epsp, j);
        std::map<int, Mat> F = m2_w_matrices(sys, {1, j, j + 1}, {eps, epsp, epsp}, src, tgt,
                                             w.cochain, {j, j + 1}, /*post=*/true);
        Transition t;
        t.j = j;
        t.src_dims = src.H.dims;
        t.tgt_dims = tgt.H.dims;
        auto [iso, ranks] = audit_iso(src, tgt, F);
        t.ranks = std::move(ranks);
        t.iso = iso;
        out.transitions.push_back(std::move(t));
        run = iso ? run + 1 : 0;
        if (run >= 2) {
            out.witness = j - 1;
            const PairData& st = pds[out.witness - 2];
            out.stable = st.H;
            out.reps = named_reps(st);
            if (out.witness == 2) cross_check_precompose(sys, eps, epsp, pds[1], out.stable);
            return out;
        }
    }
    throw insufficient_copies(
        sys.M, sys.M + 1,
        "insufficient copies: no two consecutive transition isomorphisms within M = " +
            std::to_string(sys.M));
}

// ---------------------------------------------------------------------------
// H0 category
// ---------------------------------------------------------------------------

namespace {

std::string pair_str(size_t a, size_t b) {
    return "hom(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

H0Category h0_category(const DGASystem& sys) {
    H0Category cat;
    cat.objects = base_augs(sys);
    const size_t n = cat.objects.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            cat.homs.emplace(std::make_pair(a, b), loc_hom(sys, cat.objects[a], cat.objects[b]));

    // canonical identification probe: the triple and every stable pair must
    // have full token coverage
    auto tokens_ok = [&](const std::vector<int>& P) {
        SemiFreeDGA d = system_dga(sys, P);
        for (const auto& g : d.chords())
            if (!system_token(sys, P, g.name)) return false;
        return true;
    };
    bool identified = sys.M >= 3 && tokens_ok({1, 2, 3});
    std::set<std::vector<int>> stable_pairs;
    for (const auto& [ab, lh] : cat.homs) stable_pairs.insert({1, lh.witness});
    for (const auto& P : stable_pairs)
        if (identified) identified = tokens_ok(P);
    if (!identified) {
        cat.identified = false;
        cat.note =
            "no canonical identification: the [w] action is certified as an isomorphism "
            "(transition audit) rather than the identity, and no H0 tables are built";
        return cat;
    }

    // pair data of each stable hom, for reductions
    std::map<std::pair<size_t, size_t>, PairData> spd;
    for (const auto& [ab, lh] : cat.homs)
        spd.emplace(ab, make_pair_data(sys, 1, lh.witness, cat.objects[ab.first],
                                       cat.objects[ab.second]));

    auto h0_dim = [&](const LocHom& lh) -> size_t {
        auto it = lh.stable.dims.find(0);
        return it == lh.stable.dims.end() ? 0 : it->second;
    };

    // H0 composition tables via A^{{1,2,3}}
    CtxCache cache(sys);
    const std::vector<int> T{1, 2, 3};
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                const LocHom& AB = cat.homs.at({a, b});
                const LocHom& BC = cat.homs.at({b, c});
                const LocHom& AC = cat.homs.at({a, c});
                const PairData& red = spd.at({a, c});
                size_t la = h0_dim(AB), lb = h0_dim(BC);
                H0Table tab(la, std::vector<std::vector<uint64_t>>(lb));
                if (la && lb) {
                    auto ctx3 = cache.get(T, {cat.objects[a], cat.objects[b], cat.objects[c]});
                    for (size_t x = 0; x < la; ++x)
                        for (size_t y = 0; y < lb; ++y) {
                            CVect xt = retoken(sys, AB.reps.at(0)[x], {1, AB.witness},
                                               ctx3->dga(), T, 1, 2);
                            CVect yt = retoken(sys, BC.reps.at(0)[y], {1, BC.witness},
                                               ctx3->dga(), T, 2, 3);
                            DualElt r = ctx3->mk({tipped(*ctx3, xt), tipped(*ctx3, yt)});
                            CVect back = retoken(sys, named(*ctx3, r), T, red.ctx->dga(),
                                                 {1, AC.witness}, 1, AC.witness);
                            tab[x][y] = class_coords(*red.ctx, red.hc, red.H, back, 0,
                                                     "H0 composition");
                        }
                }
                cat.tables.emplace(std::make_tuple(a, b, c), std::move(tab));
            }

    // associativity of the tables
    const Field* f = sys.field();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                for (size_t d = 0; d < n; ++d) {
                    const H0Table& abc = cat.tables.at({a, b, c});
                    const H0Table& acd = cat.tables.at({a, c, d});
                    const H0Table& bcd = cat.tables.at({b, c, d});
                    const H0Table& abd = cat.tables.at({a, b, d});
                    size_t la = h0_dim(cat.homs.at({a, b}));
                    size_t lb = h0_dim(cat.homs.at({b, c}));
                    size_t lc = h0_dim(cat.homs.at({c, d}));
                    size_t lad = h0_dim(cat.homs.at({a, d}));
                    for (size_t x = 0; x < la; ++x)
                        for (size_t y = 0; y < lb; ++y)
                            for (size_t z = 0; z < lc; ++z) {
                                std::vector<uint64_t> lhs(lad, 0), rhs(lad, 0);
                                const auto& t1 = abc[x][y];  // coords in H0(a,c)
                                for (size_t k = 0; k < t1.size(); ++k)
                                    if (t1[k])
                                        for (size_t m = 0; m < lad; ++m)
                                            lhs[m] = f->add(lhs[m],
                                                            f->mul(t1[k], acd[k][z][m]));
                                const auto& t2 = bcd[y][z];  // coords in H0(b,d)
                                for (size_t m = 0; m < t2.size(); ++m)
                                    if (t2[m])
                                        for (size_t k = 0; k < lad; ++k)
                                            rhs[k] = f->add(rhs[k],
                                                            f->mul(t2[m], abd[x][m][k]));
                                if (lhs != rhs)
                                    cat.audit.add(
                                        "associativity",
                                        "objects (" + std::to_string(a) + "," +
                                            std::to_string(b) + "," + std::to_string(c) + "," +
                                            std::to_string(d) + ") basis (" +
                                            std::to_string(x) + "," + std::to_string(y) + "," +
                                            std::to_string(z) + ")",
                                        "(xy)z = " + vec_str(lhs) + " but x(yz) = " +
                                            vec_str(rhs));
                            }
                }

    // [w] acts as the identity on every stable H*, on both sides
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            const LocHom& AB = cat.homs.at({a, b});
            const PairData& red = spd.at({a, b});
            // right action: x -> m_2(x, w_b) over (eps_a, eps_b, eps_b)
            auto ctxR = cache.get(T, {cat.objects[a], cat.objects[b], cat.objects[b]});
            CVect wR = include_into(sys, w_class(sys, cat.objects[b], 2).cochain, {2, 3}, T);
            // left action: x -> m_2(w_a, x) over (eps_a, eps_a, eps_b)
            auto ctxL = cache.get(T, {cat.objects[a], cat.objects[a], cat.objects[b]});
            CVect wL = include_into(sys, w_class(sys, cat.objects[a], 1).cochain, {1, 2}, T);
            for (const auto& [d, reps] : AB.reps) {
                for (size_t x = 0; x < reps.size(); ++x) {
                    std::vector<uint64_t> want(reps.size(), 0);
                    want[x] = 1;
                    CVect xr = retoken(sys, reps[x], {1, AB.witness}, ctxR->dga(), T, 1, 2);
                    DualElt rr = ctxR->mk({tipped(*ctxR, xr), tipped(*ctxR, wR)});
                    CVect backR = retoken(sys, named(*ctxR, rr), T, red.ctx->dga(),
                                          {1, AB.witness}, 1, AB.witness);
                    auto gotR = class_coords(*red.ctx, red.hc, red.H, backR, d,
                                             "[w] right action");
                    if (gotR != want)
                        cat.audit.add("unit-right",
                                      pair_str(a, b) + " degree " + std::to_string(d) +
                                          " basis " + std::to_string(x),
                                      "x [w] reduces to " + vec_str(gotR) + ", expected " +
                                          vec_str(want));
                    CVect xl = retoken(sys, reps[x], {1, AB.witness}, ctxL->dga(), T, 2, 3);
                    DualElt rl = ctxL->mk({tipped(*ctxL, wL), tipped(*ctxL, xl)});
                    CVect backL = retoken(sys, named(*ctxL, rl), T, red.ctx->dga(),
                                          {1, AB.witness}, 1, AB.witness);
                    auto gotL = class_coords(*red.ctx, red.hc, red.H, backL, d,
                                             "[w] left action");
                    if (gotL != want)
                        cat.audit.add("unit-left",
                                      pair_str(a, b) + " degree " + std::to_string(d) +
                                          " basis " + std::to_string(x),
                                      "[w] x reduces to " + vec_str(gotL) + ", expected " +
                                          vec_str(want));
                }
            }
        }

    // [w] itself must be nonzero in H0(a, a)
    for (size_t a = 0; a < n; ++a) {
        const LocHom& AA = cat.homs.at({a, a});
        const PairData& red = spd.at({a, a});
        CVect w = w_class(sys, cat.objects[a], 1).cochain;
        CVect back = retoken(sys, w, {1, 2}, red.ctx->dga(), {1, AA.witness}, 1, AA.witness);
        auto coords = class_coords(*red.ctx, red.hc, red.H, back, 0, "[w] class");
        if (std::all_of(coords.begin(), coords.end(), [](uint64_t v) { return v == 0; }))
            cat.audit.add("unit-class", "object " + std::to_string(a),
                          "[w] is null-cohomologous in H0");
    }
    return cat;
}

// ---------------------------------------------------------------------------
// consistent-sequence construction
// ---------------------------------------------------------------------------

ConsistentCat consistent_aug_cat(const DGASystem& sys, int kmax) {
    if (sys.mode != SystemMode::consistent)
        throw error("the consistent-sequence construction needs a consistent system");
    Report chk = check_system(sys);
    if (!chk.ok())
        throw error("system fails the consistency axioms: [" + chk.findings.front().rule + "] " +
                    chk.findings.front().where + ": " + chk.findings.front().detail);
    if (sys.M < 3) throw error("the construction needs M >= 3 copies");

    ConsistentCat cat;
    cat.objects = base_augs(sys);
    const size_t n = cat.objects.size();

    std::map<std::pair<size_t, size_t>, PairData> pd;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            PairData p = make_pair_data(sys, 1, 2, cat.objects[a], cat.objects[b]);
            cat.homs.emplace(std::make_pair(a, b), p.H);
            cat.reps.emplace(std::make_pair(a, b), named_reps(p));
            pd.emplace(std::make_pair(a, b), std::move(p));
        }

    auto h0_dim = [&](size_t a, size_t b) -> size_t {
        auto it = cat.homs.at({a, b}).dims.find(0);
        return it == cat.homs.at({a, b}).dims.end() ? 0 : it->second;
    };

    // H0 tables via A^{(3)}
    CtxCache cache(sys);
    const std::vector<int> T{1, 2, 3};
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                size_t la = h0_dim(a, b), lb = h0_dim(b, c);
                const PairData& red = pd.at({a, c});
                H0Table tab(la, std::vector<std::vector<uint64_t>>(lb));
                if (la && lb) {
                    auto ctx3 = cache.get(T, {cat.objects[a], cat.objects[b], cat.objects[c]});
                    for (size_t x = 0; x < la; ++x)
                        for (size_t y = 0; y < lb; ++y) {
                            CVect xt = retoken(sys, cat.reps.at({a, b}).at(0)[x], {1, 2},
                                               ctx3->dga(), T, 1, 2);
                            CVect yt = retoken(sys, cat.reps.at({b, c}).at(0)[y], {1, 2},
                                               ctx3->dga(), T, 2, 3);
                            DualElt r = ctx3->mk({tipped(*ctx3, xt), tipped(*ctx3, yt)});
                            CVect back = retoken(sys, named(*ctx3, r), T, red.ctx->dga(),
                                                 {1, 2}, 1, 2);
                            tab[x][y] = class_coords(*red.ctx, red.hc, red.H, back, 0,
                                                     "H0 composition");
                        }
                }
                cat.tables.emplace(std::make_tuple(a, b, c), std::move(tab));
            }

    // A-infinity re-verification on increasing chains
    int cap = std::min(kmax, sys.M - 1);
    cat.arity_checked = cap;
    if (cap >= 1) {
        int na = std::min(3, cap);
        int m = na + 1;
        std::vector<int> P(m);
        for (int i = 0; i < m; ++i) P[i] = i + 1;
        std::vector<size_t> idx(m, 0);
        while (true) {
            std::vector<Augmentation> parts;
            std::string who = "objects (";
            for (int i = 0; i < m; ++i) {
                parts.push_back(cat.objects[idx[i]]);
                who += (i ? "," : "") + std::to_string(idx[i]);
            }
            who += ")";
            AinfCtx ctx(system_dga(sys, P), diagonal_aug(sys, P, parts));
            AinfCheckOptions opt;
            opt.kmax = na;
            opt.increasing_only = true;
            size_t cnt = 0;
            Report r = check_ainf(ctx, opt, &cnt);
            cat.tuples_checked += cnt;
            for (const auto& fd : r.findings)
                cat.ainf_audit.add(fd.rule, who + " " + fd.where, fd.detail);
            int pos = m - 1;
            while (pos >= 0 && ++idx[pos] == n) idx[pos--] = 0;
            if (pos < 0) break;
        }
        if (cap >= 4) {
            std::vector<int> P5{1, 2, 3, 4, 5};
            for (size_t a = 0; a < n; ++a) {
                std::vector<Augmentation> parts(5, cat.objects[a]);
                AinfCtx ctx(system_dga(sys, P5), diagonal_aug(sys, P5, parts));
                AinfCheckOptions opt;
                opt.kmax = 4;
                opt.increasing_only = true;
                size_t cnt = 0;
                Report r = check_ainf(ctx, opt, &cnt);
                cat.tuples_checked += cnt;
                for (const auto& fd : r.findings)
                    cat.ainf_audit.add(fd.rule,
                                       "diagonal object " + std::to_string(a) + " " + fd.where,
                                       fd.detail);
            }
        }
    }
    return cat;
}

// ---------------------------------------------------------------------------
// comparison of the two constructions
// ---------------------------------------------------------------------------

Report compare_constructions(const DGASystem& sys) {
    Report rep;
    ConsistentCat cons;
    H0Category loc;
    try {
        cons = consistent_aug_cat(sys);
        loc = h0_category(sys);
    } catch (const error& e) {
        rep.add("construction", "-", e.what());
        return rep;
    }
    rep.merge(cons.ainf_audit);
    rep.merge(loc.audit);
    if (!loc.identified) {
        rep.add("identification", "-", loc.note);
        return rep;
    }
    if (!(loc.objects == cons.objects)) {
        rep.add("objects", "-", "the two constructions enumerate different augmentation sets");
        return rep;
    }
    const size_t n = cons.objects.size();
    const Field* f = sys.field();

    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            const auto& ld = loc.homs.at({a, b}).stable.dims;
            const auto& cd = cons.homs.at({a, b}).dims;
            if (ld != cd) {
                std::string d = "stabilized:";
                for (const auto& [k, v] : ld)
                    d += " " + std::to_string(k) + "->" + std::to_string(v);
                d += "; copy-(1,2):";
                for (const auto& [k, v] : cd)
                    d += " " + std::to_string(k) + "->" + std::to_string(v);
                rep.add("dims", pair_str(a, b), d);
            }
        }
    if (!rep.ok()) return rep;

    // change of basis U[{a,b}][x] = the class of the stabilized representative
    // x in the copy-(1,2) homology basis
    std::map<std::pair<size_t, size_t>, std::vector<std::vector<uint64_t>>> U;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            const LocHom& lh = loc.homs.at({a, b});
            PairData red = make_pair_data(sys, 1, 2, cons.objects[a], cons.objects[b]);
            std::vector<std::vector<uint64_t>> rows;
            auto rit = lh.reps.find(0);
            if (rit != lh.reps.end())
                for (const auto& r : rit->second) {
                    CVect back =
                        retoken(sys, r, {1, lh.witness}, red.ctx->dga(), {1, 2}, 1, 2);
                    rows.push_back(
                        class_coords(*red.ctx, red.hc, red.H, back, 0, "change of basis"));
                }
            size_t dim = rows.size();
            Mat u(f, dim, dim);
            for (size_t x = 0; x < dim; ++x)
                for (size_t k = 0; k < dim; ++k) u.at(k, x) = rows[x][k];
            if (rank(u) != dim)
                rep.add("identification", pair_str(a, b),
                        "the stabilized H0 basis does not span the copy-(1,2) H0 under the "
                        "canonical identification");
            U.emplace(std::make_pair(a, b), std::move(rows));
        }
    if (!rep.ok()) return rep;

    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                const H0Table& lt = loc.tables.at({a, b, c});
                const H0Table& ct = cons.tables.at({a, b, c});
                const auto& Uab = U.at({a, b});
                const auto& Ubc = U.at({b, c});
                const auto& Uac = U.at({a, c});
                size_t la = Uab.size(), lb = Ubc.size(), lc = Uac.size();
                for (size_t x = 0; x < la; ++x)
                    for (size_t y = 0; y < lb; ++y) {
                        std::vector<uint64_t> lhs(lc, 0), rhs(lc, 0);
                        for (size_t i = 0; i < lc; ++i)
                            if (lt[x][y][i])
                                for (size_t k = 0; k < lc; ++k)
                                    lhs[k] = f->add(lhs[k], f->mul(lt[x][y][i], Uac[i][k]));
                        for (size_t i = 0; i < la; ++i)
                            for (size_t j = 0; j < lb; ++j) {
                                uint64_t s = f->mul(Uab[x][i], Ubc[y][j]);
                                if (!s) continue;
                                for (size_t k = 0; k < lc; ++k)
                                    rhs[k] = f->add(rhs[k], f->mul(s, ct[i][j][k]));
                            }
                        if (lhs != rhs)
                            rep.add("table",
                                    "objects (" + std::to_string(a) + "," + std::to_string(b) +
                                        "," + std::to_string(c) + ") basis (" +
                                        std::to_string(x) + "," + std::to_string(y) + ")",
                                    "stabilized composition maps to " + vec_str(lhs) +
                                        " but the copy-(1,2) tables give " + vec_str(rhs));
                    }
            }
    return rep;
}

}  // namespace acat
