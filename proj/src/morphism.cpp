#include "acat/morphism.hpp"

#include <algorithm>

namespace acat {

std::string morkind_str(MorKind k) {
    switch (k) {
        case MorKind::elementary: return "elementary";
        case MorKind::tame: return "tame";
        case MorKind::stabilise: return "stabilise";
        case MorKind::destabilise: return "destabilise";
        case MorKind::composite: return "composite";
    }
    return "?";
}

namespace {

Poly unit_poly(const SemiFreeDGA& dga, const UnitCoef& u) {
    return Poly::term(dga.field(), dga.gspec(), Word::group(u.g), u.scalar);
}

UnitCoef unit_inverse(const SemiFreeDGA& dga, const UnitCoef& u) {
    return {dga.field()->inv(u.scalar), u.g.inverse()};
}

bool poly_involves(const Poly& p, int id) {
    for (const auto& [w, c] : p.terms()) {
        (void)c;
        if (std::find(w.chords.begin(), w.chords.end(), id) != w.chords.end()) return true;
    }
    return false;
}

// chord tables agree name-for-name in order, so ids transfer unchanged
bool same_generator_table(const SemiFreeDGA& a, const SemiFreeDGA& b, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (a.field() != b.field()) return fail("fields differ");
    if (!(a.gspec() == b.gspec() || (a.gspec() && b.gspec() && *a.gspec() == *b.gspec())))
        return fail("group specs differ");
    if (a.grading() != b.grading()) return fail("grading modes differ");
    if (a.labels() != b.labels()) return fail("copy labels differ");
    if (a.component_labels() != b.component_labels()) return fail("component labels differ");
    if (a.num_chords() != b.num_chords()) return fail("chord counts differ");
    for (size_t i = 0; i < a.num_chords(); ++i) {
        const ChordGen& x = a.chord((int)i);
        const ChordGen& y = b.chord((int)i);
        if (x.name != y.name || !a.degrees_equal(x.degree, y.degree) || x.c != y.c || x.r != y.r)
            return fail("generator " + x.name + " differs between the two presentations");
    }
    return true;
}

// images of the substitution q ↦ xqy + u, every other generator fixed
std::map<int, Poly> elementary_images(const SemiFreeDGA& target, int qid, const UnitCoef& x,
                                      const UnitCoef& y, const Poly& u) {
    std::map<int, Poly> img;
    for (size_t i = 0; i < target.num_chords(); ++i) img.emplace((int)i, target.gen((int)i));
    img.at(qid) = unit_poly(target, x) * target.gen(qid) * unit_poly(target, y) + u;
    return img;
}

void require_elementary_preconditions(const SemiFreeDGA& dga, int qid, const UnitCoef& x,
                                      const UnitCoef& y, const Poly& u) {
    const ChordGen& q = dga.chord(qid);
    if (x.scalar == 0 || y.scalar == 0)
        throw error("elementary substitution at " + q.name + ": coefficient not invertible");
    if (poly_involves(u, qid))
        throw error("elementary substitution at " + q.name + ": u involves the chord itself");
    for (const auto& [w, c] : u.terms()) {
        (void)c;
        if (!dga.degrees_equal(dga.degree_of_word(w), q.degree))
            throw error("elementary substitution at " + q.name + ": u is not homogeneous of degree " +
                        std::to_string(q.degree));
    }
}

DGAMorphism make_verified_elementary(const SemiFreeDGA& source, const SemiFreeDGA& target,
                                     int qid, const UnitCoef& x, const UnitCoef& y,
                                     const Poly& u) {
    DGAMorphism f{source, target, elementary_images(target, qid, x, y, u), MorKind::elementary,
                  ElemStep{qid, x, y, u}};
    Report rep = verify_chain_map(f);
    if (!rep.ok())
        throw error("elementary substitution at " + source.chord(qid).name +
                    " rejected: " + rep.findings.front().rule + " at " + rep.findings.front().where +
                    ": " + rep.findings.front().detail);
    return f;
}

}  // namespace

Poly apply(const DGAMorphism& f, const Poly& p) {
    const SemiFreeDGA& t = f.target;
    Poly out = t.zero();
    for (const auto& [w, c] : p.terms()) {
        Poly acc = Poly::term(t.field(), t.gspec(), Word::group(w.groups[0]), c);
        for (size_t i = 0; i < w.chords.size(); ++i) {
            auto it = f.chord_images.find(w.chords[i]);
            if (it == f.chord_images.end())
                throw error("no image for chord " + f.source.chord(w.chords[i]).name);
            acc = acc * it->second;
            acc = acc * Poly::term(t.field(), t.gspec(), Word::group(w.groups[i + 1]), 1);
        }
        out = out + acc;
    }
    return out;
}

Report verify_chain_map(const DGAMorphism& f) {
    Report rep;
    const SemiFreeDGA& s = f.source;
    const SemiFreeDGA& t = f.target;
    if (s.field() != t.field() ||
        !(s.gspec() == t.gspec() || (s.gspec() && t.gspec() && *s.gspec() == *t.gspec())) ||
        s.grading() != t.grading() || s.labels() != t.labels() ||
        s.component_labels() != t.component_labels()) {
        rep.add("universe", "-", "source and target disagree on field, group spec, grading or labels");
        return rep;
    }
    std::vector<bool> missing(s.num_chords(), false);
    for (size_t i = 0; i < s.num_chords(); ++i)
        if (!f.chord_images.count((int)i)) {
            missing[i] = true;
            rep.add("image", s.chord((int)i).name, "no image assigned");
        }
    for (size_t i = 0; i < s.num_chords(); ++i) {
        const ChordGen& q = s.chord((int)i);
        if (missing[i]) continue;
        auto it = f.chord_images.find((int)i);
        bool usable = true;
        for (const auto& [w, c] : it->second.terms()) {
            (void)c;
            for (int id : w.chords)
                if (id < 0 || id >= (int)t.num_chords()) {
                    rep.add("image", q.name, "image references a chord id outside the target");
                    usable = false;
                }
            if (!usable) break;
            if (!t.degrees_equal(t.degree_of_word(w), q.degree))
                rep.add("degree", q.name,
                        "image word " + t.word_str(w) + " has degree " +
                            std::to_string(t.degree_of_word(w)) + ", expected " +
                            std::to_string(t.degree_norm(q.degree)));
            std::string why;
            if (!t.word_composable(w, q.c, q.r, &why))
                rep.add("link-grading", q.name, "image word " + t.word_str(w) + ": " + why);
        }
        for (const auto& [w, c] : s.d((int)i).terms()) {
            (void)c;
            for (int id : w.chords) usable = usable && !missing[id];
        }
        if (!usable) continue;
        Poly lhs = apply(f, s.d((int)i));
        Poly rhs = t.leibniz_extend(it->second);
        if (lhs != rhs)
            rep.add("chain-map", q.name,
                    "f(dq) = " + t.poly_str(lhs) + " but d(f(q)) = " + t.poly_str(rhs));
    }
    return rep;
}

DGAMorphism identity_morphism(const SemiFreeDGA& dga) {
    std::map<int, Poly> img;
    for (size_t i = 0; i < dga.num_chords(); ++i) img.emplace((int)i, dga.gen((int)i));
    return {dga, dga, std::move(img), MorKind::tame, std::nullopt};
}

DGAMorphism elementary_auto(const SemiFreeDGA& dga, const std::string& q, const UnitCoef& x,
                            const UnitCoef& y, const Poly& u) {
    return elementary_step(dga, dga, q, x, y, u);
}

DGAMorphism elementary_step(const SemiFreeDGA& source, const SemiFreeDGA& target,
                            const std::string& q, const UnitCoef& x, const UnitCoef& y,
                            const Poly& u) {
    std::string why;
    if (!same_generator_table(source, target, &why))
        throw error("elementary substitution needs matching generator tables: " + why);
    int qid = source.id_of(q);
    require_elementary_preconditions(target, qid, x, y, u);
    DGAMorphism fwd = make_verified_elementary(source, target, qid, x, y, u);
    DGAMorphism inv = elementary_inverse(fwd);
    // two-sided inverse, exactly, on every generator
    for (size_t i = 0; i < source.num_chords(); ++i) {
        if (apply(inv, fwd.chord_images.at((int)i)) != source.gen((int)i))
            throw error("elementary substitution at " + q + ": inverse fails on the left");
        if (apply(fwd, inv.chord_images.at((int)i)) != target.gen((int)i))
            throw error("elementary substitution at " + q + ": inverse fails on the right");
    }
    return fwd;
}

DGAMorphism elementary_inverse(const DGAMorphism& f) {
    if (f.kind != MorKind::elementary || !f.elem)
        throw error("elementary_inverse needs an elementary morphism");
    const ElemStep& e = *f.elem;
    const SemiFreeDGA& s = f.target;  // roles swap
    const SemiFreeDGA& t = f.source;
    UnitCoef xi = unit_inverse(t, e.x);
    UnitCoef yi = unit_inverse(t, e.y);
    // u lives over f.target; its words transfer verbatim since the tables match
    Poly ui = unit_poly(t, xi) * e.u * unit_poly(t, yi);
    require_elementary_preconditions(t, e.chord, xi, yi, ui);
    return make_verified_elementary(s, t, e.chord, xi, yi, ui);
}

std::pair<SemiFreeDGA, DGAMorphism> elementary_pushforward(const SemiFreeDGA& dga,
                                                           const std::string& q,
                                                           const UnitCoef& x, const UnitCoef& y,
                                                           const Poly& u) {
    int qid = dga.id_of(q);
    require_elementary_preconditions(dga, qid, x, y, u);
    std::map<int, Poly> img = elementary_images(dga, qid, x, y, u);
    DGAMorphism phi{dga, dga, img, MorKind::elementary, ElemStep{qid, x, y, u}};
    // ∂' = φ ∂ φ⁻¹: on generators other than q this is φ∘∂; at q the inverse
    // substitution contributes x⁻¹(∂q + ∂u)y⁻¹ before φ is applied.
    SemiFreeDGA out = dga;
    for (size_t i = 0; i < dga.num_chords(); ++i) {
        Poly pre = (int)i == qid ? unit_poly(dga, unit_inverse(dga, x)) *
                                       (dga.d(qid) + dga.leibniz_extend(u)) *
                                       unit_poly(dga, unit_inverse(dga, y))
                                 : dga.d((int)i);
        out.set_differential((int)i, apply(phi, pre));
    }
    Report rep = dga_check(out);
    if (!rep.ok())
        throw error("pushforward through " + q + " left an invalid differential: " +
                    rep.findings.front().rule + " at " + rep.findings.front().where);
    return {out, elementary_step(dga, out, q, x, y, u)};
}

std::pair<SemiFreeDGA, DGAMorphism> stabilise(const SemiFreeDGA& dga, int deg, int c, int r,
                                              const std::string& e1, const std::string& e2) {
    if (dga.find(e1) || dga.find(e2) || e1 == e2)
        throw error("stabilise: name collision on " + e1 + ", " + e2);
    if (std::find(dga.labels().begin(), dga.labels().end(), c) == dga.labels().end() ||
        std::find(dga.labels().begin(), dga.labels().end(), r) == dga.labels().end())
        throw error("stabilise: labels (" + std::to_string(c) + ", " + std::to_string(r) +
                    ") are not copy labels of the DGA");
    SemiFreeDGA out = dga;
    int i1 = out.add_chord({e1, deg, c, r});
    int i2 = out.add_chord({e2, deg - 1, c, r});
    out.set_differential(i1, out.gen(i2));
    out.set_differential(i2, out.zero());
    Report rep = dga_check(out);
    if (!rep.ok())
        throw error("stabilise left an invalid DGA: " + rep.findings.front().rule + " at " +
                    rep.findings.front().where);
    std::map<int, Poly> img;
    for (size_t i = 0; i < dga.num_chords(); ++i)
        img.emplace((int)i, out.gen(dga.chord((int)i).name));
    DGAMorphism inc{dga, out, std::move(img), MorKind::stabilise, std::nullopt};
    Report chain = verify_chain_map(inc);
    if (!chain.ok()) throw error("stabilise inclusion failed verification: " + chain.str());
    return {out, inc};
}

std::pair<SemiFreeDGA, DGAMorphism> destabilise(const SemiFreeDGA& dga, const std::string& e1,
                                                const std::string& e2) {
    int i1 = dga.id_of(e1);
    int i2 = dga.id_of(e2);
    if (dga.d(i1) != dga.gen(i2))
        throw error("destabilise: d(" + e1 + ") is not exactly " + e2);
    if (!dga.d(i2).is_zero()) throw error("destabilise: d(" + e2 + ") is not zero");
    for (size_t i = 0; i < dga.num_chords(); ++i) {
        if ((int)i == i1) continue;
        if (poly_involves(dga.d((int)i), i1) || poly_involves(dga.d((int)i), i2))
            throw error("destabilise: " + e1 + " or " + e2 + " appears in d(" +
                        dga.chord((int)i).name + ")");
    }
    SemiFreeDGA out(dga.labels(), dga.grading(), dga.field(), dga.gspec(),
                    dga.component_labels());
    std::vector<int> old_of_new;
    std::map<int, int> new_of_old;
    for (size_t i = 0; i < dga.num_chords(); ++i) {
        if ((int)i == i1 || (int)i == i2) continue;
        new_of_old[(int)i] = out.add_chord(dga.chord((int)i));
        old_of_new.push_back((int)i);
    }
    for (int nid = 0; nid < (int)out.num_chords(); ++nid)
        out.set_differential(nid, dga.d(old_of_new[nid]).map_chords(
                                      [&](int id) { return new_of_old.at(id); }));
    std::map<int, Poly> img;
    for (size_t i = 0; i < dga.num_chords(); ++i) {
        if ((int)i == i1 || (int)i == i2)
            img.emplace((int)i, out.zero());
        else
            img.emplace((int)i, out.gen(new_of_old.at((int)i)));
    }
    DGAMorphism proj{dga, out, std::move(img), MorKind::destabilise, std::nullopt};
    Report chain = verify_chain_map(proj);
    if (!chain.ok()) throw error("destabilise projection failed verification: " + chain.str());
    return {out, proj};
}

DGAMorphism compose(const DGAMorphism& first, const DGAMorphism& then) {
    std::string why;
    if (!dga_equal(first.target, then.source, &why))
        throw error("composition mismatch: " + why);
    std::map<int, Poly> img;
    for (const auto& [id, p] : first.chord_images) img.emplace(id, apply(then, p));
    return {first.source, then.target, std::move(img), MorKind::composite, std::nullopt};
}

}  // namespace acat
