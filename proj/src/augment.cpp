#include "acat/augment.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "acat/error.hpp"

namespace acat {

uint64_t Augmentation::chord_val(int id) const {
    auto it = chords.find(id);
    return it == chords.end() ? 0 : it->second;
}

uint64_t Augmentation::eval_group(const GroupElement& g) const {
    uint64_t v = 1;
    for (const auto& s : g.syllables()) {
        for (int l : s.letters) {
            auto it = groups.find({s.comp, std::abs(l)});
            if (it == groups.end())
                throw error("augmentation has no value for group letter t" + std::to_string(s.comp));
            uint64_t x = it->second;
            if (l < 0) x = f->inv(x);
            v = f->mul(v, x);
        }
    }
    return v;
}

uint64_t Augmentation::eval_word(const Word& w) const {
    uint64_t v = eval_group(w.groups[0]);
    for (size_t i = 0; i < w.chords.size(); ++i) {
        v = f->mul(v, chord_val(w.chords[i]));
        if (v == 0) return 0;
        v = f->mul(v, eval_group(w.groups[i + 1]));
    }
    return v;
}

uint64_t Augmentation::eval(const Poly& p) const {
    if (p.field() != f) throw error("augmentation evaluated against a different field");
    uint64_t v = 0;
    for (const auto& [w, c] : p.terms()) v = f->add(v, f->mul(c, eval_word(w)));
    return v;
}

std::string Augmentation::str(const SemiFreeDGA& dga) const {
    std::ostringstream os;
    bool first = true;
    auto item = [&](const std::string& k, uint64_t v) {
        if (!first) os << ", ";
        first = false;
        os << k << "=" << bits_to_string(v);
    };
    for (const auto& [key, v] : groups) {
        std::string k = "t" + std::to_string(key.first);
        if (dga.gspec()->rank_of(key.first) > 1) k += "_" + std::to_string(key.second);
        item(k, v);
    }
    for (const auto& [id, v] : chords)
        if (v != 0) item(dga.chord(id).name, v);
    if (first) os << "0";
    return os.str();
}

Report aug_check(const SemiFreeDGA& dga, const Augmentation& eps, bool diagonal_only) {
    Report rep;
    if (eps.f != dga.field()) {
        rep.add("field", "augmentation", "augmentation field differs from the DGA field");
        return rep;
    }
    bool groups_ok = true;
    for (const auto& c : dga.gspec()->components()) {
        for (int l = 1; l <= c.rank; ++l) {
            auto it = eps.groups.find({c.id, l});
            std::string gname = "t" + std::to_string(c.id) + (c.rank > 1 ? "_" + std::to_string(l) : "");
            if (it == eps.groups.end()) {
                rep.add("group-unit", gname, "no value assigned");
                groups_ok = false;
            } else if (it->second == 0) {
                rep.add("group-unit", gname, "group letters must map to invertible scalars");
                groups_ok = false;
            }
        }
    }
    for (const auto& [id, v] : eps.chords) {
        if (v == 0) continue;
        if (id < 0 || id >= static_cast<int>(dga.num_chords())) {
            rep.add("support", std::to_string(id), "value on an unknown chord id");
            continue;
        }
        const ChordGen& g = dga.chord(id);
        if (dga.degree_norm(g.degree) != 0)
            rep.add("support", g.name, "nonzero value on a chord of degree " + std::to_string(g.degree));
        if (diagonal_only && g.c != g.r)
            rep.add("support", g.name, "nonzero value on an off-diagonal chord");
    }
    if (!groups_ok) return rep;
    for (size_t id = 0; id < dga.num_chords(); ++id) {
        uint64_t v = eps.eval(dga.d(static_cast<int>(id)));
        if (v != 0)
            rep.add("d-vanish", dga.chord(static_cast<int>(id)).name,
                    "eps(d q) = " + bits_to_string(v) + ", expected 0");
    }
    return rep;
}

namespace {

// Shared state for both enumeration strategies.
struct AugSpace {
    const SemiFreeDGA& dga;
    const Field* f;
    std::vector<std::pair<int, int>> gkeys;  // (component, letter), domain k^*
    std::vector<int> free_chords;            // supported chords, domain k
    std::vector<std::optional<uint64_t>> cval;  // by chord id; unsupported fixed to 0
    std::map<std::pair<int, int>, std::optional<uint64_t>> gval;

    AugSpace(const SemiFreeDGA& d, bool diagonal_only) : dga(d), f(d.field()) {
        for (const auto& c : dga.gspec()->components())
            for (int l = 1; l <= c.rank; ++l) gkeys.push_back({c.id, l});
        cval.assign(dga.num_chords(), std::nullopt);
        for (size_t id = 0; id < dga.num_chords(); ++id) {
            const ChordGen& g = dga.chord(static_cast<int>(id));
            bool supported = dga.degree_norm(g.degree) == 0 && (!diagonal_only || g.c == g.r);
            if (supported)
                free_chords.push_back(static_cast<int>(id));
            else
                cval[id] = 0;
        }
        for (const auto& k : gkeys) gval[k] = std::nullopt;
    }

    std::optional<uint64_t> eval_syllables(const GroupElement& g) const {
        uint64_t v = 1;
        for (const auto& s : g.syllables()) {
            for (int l : s.letters) {
                const auto& slot = gval.at({s.comp, std::abs(l)});
                if (!slot) return std::nullopt;
                v = f->mul(v, l < 0 ? f->inv(*slot) : *slot);
            }
        }
        return v;
    }

    // Value of one word under the partial assignment. Unassigned factors make
    // the result unknown unless an assigned factor already forces zero.
    std::optional<uint64_t> eval_word(const Word& w) const {
        uint64_t v = 1;
        bool unknown = false;
        for (int q : w.chords) {
            if (!cval[q])
                unknown = true;
            else if (*cval[q] == 0)
                return 0;
            else
                v = f->mul(v, *cval[q]);
        }
        for (const auto& g : w.groups) {
            auto gv = eval_syllables(g);
            if (!gv)
                unknown = true;
            else
                v = f->mul(v, *gv);
        }
        if (unknown) return std::nullopt;
        return v;
    }

    std::optional<uint64_t> eval_rel(const Poly& p) const {
        uint64_t v = 0;
        for (const auto& [w, c] : p.terms()) {
            auto wv = eval_word(w);
            if (!wv) return std::nullopt;
            v = f->add(v, f->mul(c, *wv));
        }
        return v;
    }

    Augmentation snapshot() const {
        Augmentation eps;
        eps.f = f;
        for (size_t id = 0; id < cval.size(); ++id)
            if (cval[id] && *cval[id] != 0) eps.chords[static_cast<int>(id)] = *cval[id];
        for (const auto& [k, v] : gval) eps.groups[k] = *v;
        return eps;
    }
};

struct Backtracker {
    AugSpace sp;
    std::vector<const Poly*> rels;
    // Unknowns: group letters first (small domains, ubiquitous in relations),
    // then chords by how many relation words mention them.
    struct Unknown {
        bool is_group;
        std::pair<int, int> gkey;
        int chord;
    };
    std::vector<Unknown> order;
    std::vector<Augmentation> out;

    Backtracker(const SemiFreeDGA& dga, bool diagonal_only) : sp(dga, diagonal_only) {
        for (size_t id = 0; id < dga.num_chords(); ++id) rels.push_back(&dga.d(static_cast<int>(id)));
        std::map<int, int> uses;
        for (const Poly* p : rels)
            for (const auto& [w, c] : p->terms())
                for (int q : w.chords) ++uses[q];
        for (const auto& k : sp.gkeys) order.push_back({true, k, -1});
        std::vector<int> cs = sp.free_chords;
        std::stable_sort(cs.begin(), cs.end(), [&](int a, int b) {
            int ua = uses.count(a) ? uses[a] : 0, ub = uses.count(b) ? uses[b] : 0;
            if (ua != ub) return ua > ub;
            return a < b;
        });
        for (int q : cs) order.push_back({false, {0, 0}, q});
    }

    // Tries to read off a forced value for chord x from relation p: if x
    // occurs at most once per word and everything else is decided, the
    // relation is a*x + b = 0. Returns false on a contradiction.
    bool propagate_linear(const Poly& p, int x, std::vector<int>* trail) {
        uint64_t a = 0, b = 0;
        for (const auto& [w, c] : p.terms()) {
            int occ = 0;
            for (int q : w.chords)
                if (q == x) ++occ;
            if (occ >= 2) return true;  // not linear in x, no information
            uint64_t v = c;
            bool dead = false;
            for (int q : w.chords) {
                if (q == x) continue;
                if (!sp.cval[q]) return true;  // undecided companion factor
                if (*sp.cval[q] == 0) {
                    dead = true;
                    break;
                }
                v = sp.f->mul(v, *sp.cval[q]);
            }
            if (dead) continue;
            for (const auto& g : w.groups) {
                auto gv = sp.eval_syllables(g);
                if (!gv) return true;
                v = sp.f->mul(v, *gv);
            }
            if (occ == 1)
                a = sp.f->add(a, v);
            else
                b = sp.f->add(b, v);
        }
        if (a == 0) return b == 0;
        uint64_t forced = sp.f->mul(sp.f->inv(a), b);
        sp.cval[x] = forced;
        trail->push_back(x);
        return true;
    }

    // Returns false when the current partial assignment is contradictory.
    bool propagate(std::vector<int>* trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Poly* p : rels) {
                auto v = sp.eval_rel(*p);
                if (v && *v != 0) return false;
                if (v) continue;
                size_t before = trail->size();
                for (int x : sp.free_chords) {
                    if (sp.cval[x]) continue;
                    if (!propagate_linear(*p, x, trail)) return false;
                    if (trail->size() != before) {
                        changed = true;
                        break;
                    }
                }
            }
        }
        return true;
    }

    void rewind(std::vector<int>& trail, size_t mark) {
        while (trail.size() > mark) {
            sp.cval[trail.back()] = std::nullopt;
            trail.pop_back();
        }
    }

    void solve(size_t i, std::vector<int>& trail) {
        size_t mark = trail.size();
        if (!propagate(&trail)) {
            rewind(trail, mark);
            return;
        }
        size_t next = i;
        while (next < order.size() && !order[next].is_group && sp.cval[order[next].chord]) ++next;
        if (next == order.size()) {
            bool ok = true;
            for (const Poly* p : rels) {
                auto v = sp.eval_rel(*p);
                if (!v || *v != 0) ok = false;
            }
            if (ok) out.push_back(sp.snapshot());
            rewind(trail, mark);
            return;
        }
        const Unknown& u = order[next];
        if (u.is_group) {
            for (uint64_t v = 1; v < sp.f->order(); ++v) {
                sp.gval[u.gkey] = v;
                solve(next + 1, trail);
            }
            sp.gval[u.gkey] = std::nullopt;
        } else {
            for (uint64_t v = 0; v < sp.f->order(); ++v) {
                sp.cval[u.chord] = v;
                solve(next + 1, trail);
            }
            sp.cval[u.chord] = std::nullopt;
        }
        rewind(trail, mark);
    }
};

}  // namespace

bool is_aug(const SemiFreeDGA& dga, const Augmentation& eps, bool diagonal_only) {
    return aug_check(dga, eps, diagonal_only).ok();
}

std::vector<Augmentation> enumerate_augs(const SemiFreeDGA& dga, bool diagonal_only) {
    Backtracker bt(dga, diagonal_only);
    std::vector<int> trail;
    bt.solve(0, trail);
    std::sort(bt.out.begin(), bt.out.end());
    return bt.out;
}

std::vector<Augmentation> enumerate_augs_brute(const SemiFreeDGA& dga, bool diagonal_only) {
    AugSpace sp(dga, diagonal_only);
    const uint64_t q = sp.dga.field()->order();
    double space = 1;
    for (size_t i = 0; i < sp.gkeys.size(); ++i) space *= static_cast<double>(q - 1);
    for (size_t i = 0; i < sp.free_chords.size(); ++i) space *= static_cast<double>(q);
    if (space > double(1 << 22)) throw error("assignment space too large for brute enumeration");

    std::vector<Augmentation> out;
    size_t ng = sp.gkeys.size(), nc = sp.free_chords.size();
    std::vector<uint64_t> pick(ng + nc, 0);
    for (;;) {
        for (size_t i = 0; i < ng; ++i) sp.gval[sp.gkeys[i]] = pick[i] + 1;
        for (size_t i = 0; i < nc; ++i) sp.cval[sp.free_chords[i]] = pick[ng + i];
        bool ok = true;
        for (size_t id = 0; id < sp.dga.num_chords() && ok; ++id) {
            auto v = sp.eval_rel(sp.dga.d(static_cast<int>(id)));
            ok = v && *v == 0;
        }
        if (ok) out.push_back(sp.snapshot());
        // odometer step
        size_t i = 0;
        for (; i < pick.size(); ++i) {
            uint64_t lim = i < ng ? q - 1 : q;
            if (++pick[i] < lim) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Poly twist_poly(const SemiFreeDGA& dga, const Augmentation& eps, const Poly& p) {
    const Field* f = dga.field();
    Poly out = dga.zero();
    for (const auto& [w, coef] : p.terms()) {
        uint64_t base = coef;
        for (const auto& g : w.groups) base = f->mul(base, eps.eval_group(g));
        // expand prod_i (q_i + eps(q_i)): each nonzero eps(q_i) may
        // absorb its chord into the coefficient
        std::vector<size_t> droppable;
        for (size_t i = 0; i < w.chords.size(); ++i)
            if (eps.chord_val(w.chords[i]) != 0) droppable.push_back(i);
        for (uint64_t mask = 0; mask < (uint64_t(1) << droppable.size()); ++mask) {
            uint64_t c = base;
            std::vector<bool> drop(w.chords.size(), false);
            for (size_t b = 0; b < droppable.size(); ++b)
                if (mask >> b & 1) {
                    drop[droppable[b]] = true;
                    c = f->mul(c, eps.chord_val(w.chords[droppable[b]]));
                }
            Word m;
            m.groups.clear();
            for (size_t i = 0; i < w.chords.size(); ++i)
                if (!drop[i]) m.chords.push_back(w.chords[i]);
            m.groups.assign(m.chords.size() + 1, GroupElement());
            out.add_term(m, c);
        }
    }
    return out;
}

std::vector<Poly> twist(const SemiFreeDGA& dga, const Augmentation& eps) {
    Report rep = aug_check(dga, eps, /*diagonal_only=*/false);
    if (!rep.ok()) throw error("twist by an invalid augmentation: " + rep.str());
    std::vector<Poly> tw;
    tw.reserve(dga.num_chords());
    for (size_t id = 0; id < dga.num_chords(); ++id)
        tw.push_back(twist_poly(dga, eps, dga.d(static_cast<int>(id))));
    return tw;
}

Poly leibniz_with(const SemiFreeDGA& dga, const std::vector<Poly>& diffs, const Poly& p) {
    Poly out = dga.zero();
    for (const auto& [w, c] : p.terms()) {
        for (size_t i = 0; i < w.chords.size(); ++i) {
            Word u, v;
            u.chords.assign(w.chords.begin(), w.chords.begin() + i);
            u.groups.assign(w.groups.begin(), w.groups.begin() + i + 1);
            v.chords.assign(w.chords.begin() + i + 1, w.chords.end());
            v.groups.assign(w.groups.begin() + i + 1, w.groups.end());
            out = out + Poly::term(dga.field(), dga.gspec(), u, c) * diffs[w.chords[i]] *
                            Poly::term(dga.field(), dga.gspec(), v, 1);
        }
    }
    return out;
}

Report twist_check(const SemiFreeDGA& dga, const std::vector<Poly>& tw) {
    Report rep;
    if (tw.size() != dga.num_chords()) {
        rep.add("twist", "differential", "one polynomial per chord expected");
        return rep;
    }
    for (size_t id = 0; id < tw.size(); ++id) {
        const std::string& name = dga.chord(static_cast<int>(id)).name;
        int want = dga.chord(static_cast<int>(id)).degree - 1;
        for (const auto& [w, c] : tw[id].terms()) {
            (void)c;
            for (const auto& g : w.groups)
                if (!g.is_identity())
                    rep.add("twist", name, "group factors must be evaluated away");
            if (w.chords.empty())
                rep.add("twist", name, "twisted differential has a unit term");
            else if (!dga.degrees_equal(dga.degree_of_word(w), want))
                rep.add("degree", name, "word " + dga.word_str(w) + " has the wrong degree");
        }
        Poly dd = leibniz_with(dga, tw, tw[id]);
        if (!dd.is_zero())
            rep.add("d-squared", name, "twisted d^2 = " + dga.poly_str(dd));
    }
    return rep;
}

}  // namespace acat
