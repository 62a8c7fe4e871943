#include "acat/dga.hpp"

#include <algorithm>
#include <sstream>

namespace acat {

SemiFreeDGA::SemiFreeDGA(std::vector<int> labels, GradingMode mode, const Field* field, SpecPtr gspec,
                         std::map<int, int> component_labels)
    : labels_(std::move(labels)), mode_(mode), field_(field), gspec_(std::move(gspec)),
      comp_labels_(std::move(component_labels)) {
    std::sort(labels_.begin(), labels_.end());
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
        throw error("duplicate copy label in DGA label set");
    if (labels_.empty()) throw error("a DGA needs at least one copy label");
    for (const auto& c : gspec_->components()) {
        auto it = comp_labels_.find(c.id);
        if (it == comp_labels_.end())
            throw error("component " + std::to_string(c.id) + " has no diagonal copy label");
        if (!std::binary_search(labels_.begin(), labels_.end(), it->second))
            throw error("component " + std::to_string(c.id) + " assigned to unknown label " +
                        std::to_string(it->second));
    }
}

int SemiFreeDGA::add_chord(const ChordGen& g) {
    if (by_name_.count(g.name)) throw error("duplicate chord name '" + g.name + "'");
    if (!std::binary_search(labels_.begin(), labels_.end(), g.c) ||
        !std::binary_search(labels_.begin(), labels_.end(), g.r))
        throw error("chord '" + g.name + "' uses labels outside the DGA label set");
    int id = static_cast<int>(chords_.size());
    chords_.push_back(g);
    by_name_[g.name] = id;
    diff_.push_back(zero());
    return id;
}

void SemiFreeDGA::set_differential(int id, Poly p) {
    if (p.field() != field_ || !(*p.spec() == *gspec_))
        throw error("differential for '" + chords_.at(id).name + "' lives in the wrong universe");
    diff_.at(id) = std::move(p);
}

void SemiFreeDGA::set_differential(const std::string& name, const Poly& p) {
    set_differential(id_of(name), p);
}

int SemiFreeDGA::id_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw error("unknown chord name '" + name + "'");
    return it->second;
}

std::optional<int> SemiFreeDGA::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

int SemiFreeDGA::degree_norm(int deg) const {
    if (mode_ == GradingMode::Z) return deg;
    return ((deg % 2) + 2) % 2;
}

int SemiFreeDGA::degree_of_word(const Word& w) const {
    int d = 0;
    for (int q : w.chords) d += chords_.at(q).degree;
    return degree_norm(d);
}

bool SemiFreeDGA::word_composable(const Word& w, int from, int to, std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    // boundary labels at group slot i: the label between chord i-1 and chord i
    int at = from;
    for (size_t i = 0; i <= w.chords.size(); ++i) {
        for (const auto& syl : w.groups[i].syllables()) {
            auto it = comp_labels_.find(syl.comp);
            if (it == comp_labels_.end()) return fail("group factor from unknown component");
            if (it->second != at)
                return fail("group factor of component " + std::to_string(syl.comp) +
                            " (diagonal label " + std::to_string(it->second) +
                            ") sits at boundary label " + std::to_string(at));
        }
        if (i == w.chords.size()) break;
        const ChordGen& g = chords_.at(w.chords[i]);
        if (g.c != at)
            return fail("chord '" + g.name + "' starts at label " + std::to_string(g.c) +
                        ", expected " + std::to_string(at));
        at = g.r;
    }
    if (at != to) return fail("word ends at label " + std::to_string(at) + ", expected " + std::to_string(to));
    return true;
}

Poly SemiFreeDGA::leibniz_extend(const Poly& p) const {
    Poly out = zero();
    for (const auto& [w, coef] : p.terms()) {
        // d(g0 q1 g1 ... qm gm) = sum_i g0 q1 ... g_{i-1} (d qi) gi ... qm gm
        for (size_t i = 0; i < w.chords.size(); ++i) {
            Word left;
            left.chords.assign(w.chords.begin(), w.chords.begin() + i);
            left.groups.assign(w.groups.begin(), w.groups.begin() + i + 1);
            Word right;
            right.chords.assign(w.chords.begin() + i + 1, w.chords.end());
            right.groups.assign(w.groups.begin() + i + 1, w.groups.end());
            Poly mid = diff_.at(w.chords[i]);
            Poly piece = Poly::term(field_, gspec_, left, coef) * mid * Poly::term(field_, gspec_, right, 1);
            out = out + piece;
        }
    }
    return out;
}

std::string SemiFreeDGA::word_str(const Word& w) const {
    if (w.is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const std::string& s) {
        if (!first) os << "*";
        first = false;
        os << s;
    };
    for (size_t i = 0; i <= w.chords.size(); ++i) {
        if (!w.groups[i].is_identity()) emit(w.groups[i].str());
        if (i < w.chords.size()) emit(chords_.at(w.chords[i]).name);
    }
    return os.str();
}

std::string SemiFreeDGA::poly_str(const Poly& p) const {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        if (c != 1 || w.is_unit()) {
            os << bits_to_string(c);
            if (!w.is_unit()) os << "*";
        }
        if (!w.is_unit()) os << word_str(w);
    }
    return os.str();
}

Report dga_check(const SemiFreeDGA& dga) {
    Report rep;
    // deterministic order: by chord name
    std::vector<int> order(dga.num_chords());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return dga.chord(a).name < dga.chord(b).name; });

    for (int id : order) {
        const ChordGen& g = dga.chord(id);
        const Poly& dq = dga.d(id);
        for (const auto& [w, coef] : dq.terms()) {
            (void)coef;
            if (!dga.degrees_equal(dga.degree_of_word(w), g.degree - 1))
                rep.add("degree", g.name,
                        "word " + dga.word_str(w) + " of d(" + g.name + ") has degree " +
                            std::to_string(dga.degree_of_word(w)) + ", expected " +
                            std::to_string(dga.degree_norm(g.degree - 1)));
            std::string why;
            if (g.c != g.r) {
                if (w.is_unit())
                    rep.add("link-grading", g.name,
                            "unit word in d(" + g.name + ") but the chord is off-diagonal (rule 1)");
                else if (!dga.word_composable(w, g.c, g.r, &why))
                    rep.add("link-grading", g.name, "word " + dga.word_str(w) + " not composable: " + why);
            } else if (!w.is_unit() && !dga.word_composable(w, g.c, g.r, &why)) {
                rep.add("link-grading", g.name, "word " + dga.word_str(w) + " not composable: " + why);
            }
        }
        Poly dd = dga.leibniz_extend(dq);
        if (!dd.is_zero())
            rep.add("d-squared", g.name, "d(d(" + g.name + ")) = " + dga.poly_str(dd));
    }
    return rep;
}

namespace {

int block_of(const Partition& pi, int label) {
    for (size_t b = 0; b < pi.blocks.size(); ++b)
        for (int l : pi.blocks[b])
            if (l == label) return static_cast<int>(b);
    return -1;
}

}  // namespace

SemiFreeDGA quotient_partition(const SemiFreeDGA& dga, const Partition& pi) {
    // validate the partition
    std::set<int> seen;
    for (const auto& blk : pi.blocks)
        for (int l : blk)
            if (!seen.insert(l).second) throw error("partition repeats label " + std::to_string(l));
    for (int l : dga.labels())
        if (!seen.count(l)) throw error("partition misses label " + std::to_string(l));
    if (seen.size() != dga.labels().size()) throw error("partition uses labels outside the DGA");

    SemiFreeDGA out(dga.labels(), dga.grading(), dga.field(), dga.gspec(), dga.component_labels());
    std::vector<int> keep(dga.num_chords(), -1);
    for (size_t id = 0; id < dga.num_chords(); ++id) {
        const ChordGen& g = dga.chord(static_cast<int>(id));
        if (block_of(pi, g.c) == block_of(pi, g.r)) keep[id] = out.add_chord(g);
    }
    for (size_t id = 0; id < dga.num_chords(); ++id) {
        if (keep[id] < 0) continue;
        Poly nd = out.zero();
        for (const auto& [w, coef] : dga.d(static_cast<int>(id)).terms()) {
            bool drop = false;
            for (int q : w.chords)
                if (keep[q] < 0) drop = true;
            if (drop) continue;
            Word m = w;
            for (auto& q : m.chords) q = keep[q];
            nd.add_term(m, coef);
        }
        out.set_differential(keep[id], std::move(nd));
    }
    return out;
}

SemiFreeDGA subalgebra(const SemiFreeDGA& dga, const std::vector<int>& I) {
    if (I.empty()) throw error("subalgebra over an empty label set");
    std::set<int> in(I.begin(), I.end());
    for (int l : I)
        if (!std::binary_search(dga.labels().begin(), dga.labels().end(), l))
            throw error("subalgebra label " + std::to_string(l) + " not in the DGA");
    // Differential inherited through the quotient by {I, complement}:
    // realized directly by dropping words that touch chords leaving I.
    std::vector<int> labels(in.begin(), in.end());
    std::vector<FreeProductSpec::Component> comps;
    std::map<int, int> clabels;
    for (const auto& c : dga.gspec()->components()) {
        int lab = dga.component_labels().at(c.id);
        if (in.count(lab)) {
            comps.push_back(c);
            clabels[c.id] = lab;
        }
    }
    SemiFreeDGA out(labels, dga.grading(), dga.field(), FreeProductSpec::make(comps), clabels);
    std::vector<int> keep(dga.num_chords(), -1);
    for (size_t id = 0; id < dga.num_chords(); ++id) {
        const ChordGen& g = dga.chord(static_cast<int>(id));
        if (in.count(g.c) && in.count(g.r)) keep[id] = out.add_chord(g);
    }
    for (size_t id = 0; id < dga.num_chords(); ++id) {
        if (keep[id] < 0) continue;
        Poly nd = out.zero();
        for (const auto& [w, coef] : dga.d(static_cast<int>(id)).terms()) {
            bool drop = false;
            for (int q : w.chords)
                if (keep[q] < 0) drop = true;
            if (drop) continue;
            Word m;
            m.chords = w.chords;
            for (auto& q : m.chords) q = keep[q];
            m.groups.clear();
            for (const auto& g2 : w.groups)
                m.groups.push_back(GroupElement::from_syllables(out.gspec(), g2.syllables()));
            nd.add_term(m, coef);
        }
        out.set_differential(keep[id], std::move(nd));
    }
    return out;
}

SemiFreeDGA relabel_dga(const SemiFreeDGA& dga, const std::map<int, int>& label_map,
                        const std::map<std::string, std::string>& name_map) {
    auto map_label = [&](int l) {
        auto it = label_map.find(l);
        if (it == label_map.end()) throw error("relabel: no image for label " + std::to_string(l));
        return it->second;
    };
    auto map_name = [&](const std::string& n) {
        auto it = name_map.find(n);
        if (it == name_map.end()) throw error("relabel: no image for chord '" + n + "'");
        return it->second;
    };
    std::vector<int> labels;
    for (int l : dga.labels()) labels.push_back(map_label(l));
    // components are relabeled by their diagonal label; ids follow the label
    std::vector<FreeProductSpec::Component> comps;
    std::map<int, int> clabels;
    std::map<int, int> comp_map;  // old comp id -> new comp id
    for (const auto& c : dga.gspec()->components()) {
        int nl = map_label(dga.component_labels().at(c.id));
        int nid = c.id == dga.component_labels().at(c.id) ? nl : c.id;  // diagonal ids track the label
        comps.push_back({nid, c.rank});
        clabels[nid] = nl;
        comp_map[c.id] = nid;
    }
    SemiFreeDGA out(labels, dga.grading(), dga.field(), FreeProductSpec::make(comps), clabels);
    std::vector<int> newid(dga.num_chords());
    for (size_t id = 0; id < dga.num_chords(); ++id) {
        const ChordGen& g = dga.chord(static_cast<int>(id));
        newid[id] = out.add_chord({map_name(g.name), g.degree, map_label(g.c), map_label(g.r)});
    }
    for (size_t id = 0; id < dga.num_chords(); ++id) {
        Poly nd = out.zero();
        for (const auto& [w, coef] : dga.d(static_cast<int>(id)).terms()) {
            Word m;
            m.chords = w.chords;
            for (auto& q : m.chords) q = newid[q];
            m.groups.clear();
            for (const auto& g2 : w.groups) {
                std::vector<Syllable> syls = g2.syllables();
                for (auto& s : syls) s.comp = comp_map.at(s.comp);
                m.groups.push_back(GroupElement::from_syllables(out.gspec(), syls));
            }
            nd.add_term(m, coef);
        }
        out.set_differential(newid[id], std::move(nd));
    }
    return out;
}

bool dga_equal(const SemiFreeDGA& a, const SemiFreeDGA& b, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (a.labels() != b.labels()) return fail("label sets differ");
    if (a.grading() != b.grading()) return fail("grading modes differ");
    if (a.field() != b.field()) return fail("fields differ");
    if (!(*a.gspec() == *b.gspec())) return fail("group specs differ");
    if (a.component_labels() != b.component_labels()) return fail("component labels differ");
    if (a.num_chords() != b.num_chords()) return fail("chord counts differ");
    for (size_t id = 0; id < a.num_chords(); ++id) {
        const ChordGen& g = a.chord(static_cast<int>(id));
        auto other = b.find(g.name);
        if (!other) return fail("chord '" + g.name + "' missing on one side");
        const ChordGen& h = b.chord(*other);
        if (g.degree != h.degree || g.c != h.c || g.r != h.r)
            return fail("chord '" + g.name + "' differs in degree or labels");
        Poly da = a.d(static_cast<int>(id));
        Poly db_mapped = b.d(*other).map_chords([&](int q) { return a.id_of(b.chord(q).name); });
        Poly da_spec = Poly::zero(a.field(), a.gspec());
        for (const auto& [w, c] : da.terms()) da_spec.add_term(w, c);
        Poly db_spec = Poly::zero(a.field(), a.gspec());
        for (const auto& [w, c] : db_mapped.terms()) {
            Word m;
            m.chords = w.chords;
            m.groups.clear();
            for (const auto& g2 : w.groups)
                m.groups.push_back(GroupElement::from_syllables(a.gspec(), g2.syllables()));
            db_spec.add_term(m, c);
        }
        if (!(da_spec == db_spec))
            return fail("differential of '" + g.name + "' differs: " + a.poly_str(da_spec) + " vs " +
                        a.poly_str(db_spec));
    }
    return true;
}

}  // namespace acat
