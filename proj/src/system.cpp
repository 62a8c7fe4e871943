#include "acat/system.hpp"

#include <algorithm>
#include <set>

namespace acat {

std::string mode_str(SystemMode m) {
    return m == SystemMode::consistent ? "consistent" : "explicit";
}

namespace {

void require_subset(const DGASystem& sys, const std::vector<int>& P) {
    if (P.empty()) throw error("subset must be nonempty");
    for (size_t i = 0; i < P.size(); ++i) {
        if (P[i] < 1 || P[i] > sys.M)
            throw error("subset element " + std::to_string(P[i]) + " outside 1.." +
                        std::to_string(sys.M));
        if (i && P[i] <= P[i - 1]) throw error("subset must be strictly increasing");
    }
}

std::string subset_str(const std::vector<int>& P) {
    std::string s = "{";
    for (size_t i = 0; i < P.size(); ++i) s += (i ? "," : "") + std::to_string(P[i]);
    return s + "}";
}

std::vector<int> iota_subset(int m) {
    std::vector<int> r(m);
    for (int i = 0; i < m; ++i) r[i] = i + 1;
    return r;
}

// order-preserving relabel of the canonical |P|-copy onto the labels in P
SemiFreeDGA relabel_onto(const SemiFreeDGA& mc, const std::vector<int>& P) {
    std::map<int, int> lmap;
    for (size_t i = 0; i < P.size(); ++i) lmap[(int)i + 1] = P[i];
    std::map<std::string, std::string> nmap;
    for (const auto& g : mc.chords()) {
        std::string b;
        int j = 0, k = 0;
        if (!parse_pattern_name(g.name, &b, &j, &k))
            throw error("consistent-mode chord without pattern name: " + g.name);
        nmap[g.name] = pattern_name(b, P[j - 1], P[k - 1]);
    }
    return relabel_dga(mc, lmap, nmap);
}

Poly translate_poly(const Poly& p, const SemiFreeDGA& src, const SemiFreeDGA& dst,
                    const std::map<std::string, std::string>& nmap) {
    return p.map_chords([&](int id) { return dst.id_of(nmap.at(src.chord(id).name)); });
}

}  // namespace

const Field* DGASystem::field() const {
    if (mode == SystemMode::consistent) {
        if (!base) throw error("consistent system without a base DGA");
        return base->field();
    }
    if (entries.empty()) throw error("explicit system without entries");
    return entries.begin()->second.field();
}

SemiFreeDGA system_dga(const DGASystem& sys, const std::vector<int>& P) {
    require_subset(sys, P);
    if (sys.mode == SystemMode::consistent) {
        if (!sys.base) throw error("consistent system without a base DGA");
        SemiFreeDGA mc = multi_copy(*sys.base, (int)P.size());
        if (P == iota_subset((int)P.size())) return mc;
        return relabel_onto(mc, P);
    }
    auto it = sys.entries.find(P);
    if (it == sys.entries.end())
        throw error("no DGA provided for subset " + subset_str(P));
    return it->second;
}

std::map<std::string, std::string> system_inclusion(const DGASystem& sys,
                                                    const std::vector<int>& P,
                                                    const std::vector<int>& Pp) {
    require_subset(sys, P);
    require_subset(sys, Pp);
    if (!std::includes(Pp.begin(), Pp.end(), P.begin(), P.end()))
        throw error("inclusion needs nested subsets " + subset_str(P) + " within " +
                    subset_str(Pp));
    SemiFreeDGA small = system_dga(sys, P);
    if (sys.mode == SystemMode::consistent) {
        std::map<std::string, std::string> id;
        for (const auto& g : small.chords()) id[g.name] = g.name;
        return id;
    }
    std::map<std::string, std::string> acc;
    for (const auto& g : small.chords()) acc[g.name] = g.name;
    std::vector<int> cur = P;
    for (int e : Pp) {
        if (std::binary_search(cur.begin(), cur.end(), e)) continue;
        std::vector<int> next = cur;
        next.insert(std::upper_bound(next.begin(), next.end(), e), e);
        auto step = sys.inclusions.find({cur, next});
        if (step == sys.inclusions.end())
            throw error("no inclusion map from " + subset_str(cur) + " to " + subset_str(next));
        for (auto& kv : acc) {
            auto hit = step->second.find(kv.second);
            if (hit == step->second.end())
                throw error("inclusion " + subset_str(cur) + " -> " + subset_str(next) +
                            " misses generator " + kv.second);
            kv.second = hit->second;
        }
        cur = std::move(next);
    }
    return acc;
}

std::optional<std::string> system_token(const DGASystem& sys, const std::vector<int>& P,
                                        const std::string& chord) {
    if (sys.mode == SystemMode::consistent) {
        std::string b;
        int j = 0, k = 0;
        if (!parse_pattern_name(chord, &b, &j, &k)) return std::nullopt;
        return b;
    }
    auto it = sys.identification.find(P);
    if (it == sys.identification.end()) return std::nullopt;
    auto hit = it->second.find(chord);
    if (hit == it->second.end()) return std::nullopt;
    return hit->second;
}

std::vector<std::string> system_minima(const DGASystem& sys, int i) {
    if (i < 1 || i + 1 > sys.M)
        throw error("pair (" + std::to_string(i) + "," + std::to_string(i + 1) +
                    ") is outside the system");
    if (sys.mode == SystemMode::consistent) {
        std::vector<std::string> out;
        for (const auto& b : sys.pattern_minima) out.push_back(pattern_name(b, i, i + 1));
        return out;
    }
    auto it = sys.explicit_minima.find(i);
    if (it == sys.explicit_minima.end())
        throw error("no minima designated for pair (" + std::to_string(i) + "," +
                    std::to_string(i + 1) + ")");
    return it->second;
}

std::vector<Augmentation> base_augs(const DGASystem& sys) {
    return enumerate_augs(system_dga(sys, {1}));
}

Augmentation diagonal_aug(const DGASystem& sys, const std::vector<int>& P,
                          const std::vector<Augmentation>& parts) {
    require_subset(sys, P);
    if (parts.size() != P.size())
        throw error("diagonal augmentation needs one part per element of " + subset_str(P));
    SemiFreeDGA one = system_dga(sys, {1});
    SemiFreeDGA big = system_dga(sys, P);

    // token -> value tables, one per part, read off the object algebra
    std::vector<std::map<std::string, uint64_t>> tables(parts.size());
    for (size_t l = 0; l < parts.size(); ++l) {
        Report ok = aug_check(one, parts[l], /*diagonal_only=*/true);
        if (!ok.ok())
            throw error("part " + std::to_string(l + 1) + " is not an augmentation of the object algebra: " +
                        ok.findings.front().detail);
        for (size_t i = 0; i < one.num_chords(); ++i) {
            auto tok = system_token(sys, {1}, one.chord((int)i).name);
            if (!tok)
                throw error("diagonal augmentation needs the canonical identification of " +
                            one.chord((int)i).name);
            tables[l][*tok] = parts[l].chord_val((int)i);
        }
    }

    Augmentation out;
    out.f = big.field();
    for (size_t i = 0; i < big.num_chords(); ++i) {
        const ChordGen& q = big.chord((int)i);
        if (q.c != q.r) continue;
        auto l = std::lower_bound(P.begin(), P.end(), q.c) - P.begin();
        auto tok = system_token(sys, P, q.name);
        if (!tok)
            throw error("diagonal augmentation needs the canonical identification of " + q.name);
        auto hit = tables[l].find(*tok);
        uint64_t v = hit == tables[l].end() ? 0 : hit->second;
        if (v) out.chords[(int)i] = v;
    }
    for (const auto& comp : big.gspec()->components()) {
        int label = big.component_labels().at(comp.id);
        auto l = std::lower_bound(P.begin(), P.end(), label) - P.begin();
        for (int letter = 1; letter <= comp.rank; ++letter) {
            auto hit = parts[l].groups.find({1, letter});
            if (hit == parts[l].groups.end())
                throw error("part for copy " + std::to_string(label) +
                            " misses a group letter value");
            out.groups[{comp.id, letter}] = hit->second;
        }
    }

    Report ok = aug_check(big, out, /*diagonal_only=*/true);
    if (!ok.ok())
        throw error("diagonal augmentation fails re-verification: " + ok.findings.front().detail);
    return out;
}

namespace {

void check_consistent(const DGASystem& sys, Report& rep) {
    if (!sys.base) {
        rep.add("universe", "-", "consistent system without a base DGA");
        return;
    }
    if (!sys.entries.empty() || !sys.inclusions.empty())
        rep.add("universe", "-", "consistent system carries explicit-mode entries");
    Report baseok = dga_check(*sys.base);
    if (!baseok.ok()) {
        for (auto& f : baseok.findings) rep.add(f.rule, "base: " + f.where, f.detail);
        return;
    }
    std::vector<SemiFreeDGA> mc;  // mc[m-1] = the m-copy algebra
    try {
        for (int m = 1; m <= sys.M; ++m) mc.push_back(multi_copy(*sys.base, m));
    } catch (const error& e) {
        rep.add("construction", "base", e.what());
        return;
    }
    for (int m = 1; m <= sys.M; ++m) {
        Report r = dga_check(mc[m - 1]);
        for (auto& f : r.findings)
            rep.add(f.rule, std::to_string(m) + "-copy: " + f.where, f.detail);
    }
    // Axiom 3 plus order-preserving equivariance, reduced to covering pairs:
    // every nested pair factors through covers, and every cover relabels to a
    // canonical one, so subalgebra-vs-relabel agreement at each size certifies
    // the whole poset.
    for (int m = 2; m <= sys.M; ++m) {
        std::vector<int> all = iota_subset(m);
        for (int drop = 0; drop < m; ++drop) {
            std::vector<int> Q;
            for (int x : all)
                if (x != all[drop]) Q.push_back(x);
            SemiFreeDGA sub = subalgebra(mc[m - 1], Q);
            SemiFreeDGA canon =
                Q == iota_subset(m - 1) ? mc[m - 2] : relabel_onto(mc[m - 2], Q);
            std::string why;
            if (!dga_equal(sub, canon, &why))
                rep.add("axiom-3", subset_str(Q) + " in " + subset_str(all),
                        "restriction of the " + std::to_string(m) +
                            "-copy differs from the canonical copy: " + why);
        }
    }
    // minima: pattern instances must exist with dual degree 0, bigrade (i,i+1)
    for (const auto& b : sys.pattern_minima) {
        if (sys.M < 2) {
            rep.add("minima", b, "designated minima need at least two copies");
            continue;
        }
        const SemiFreeDGA& two = mc[1];
        auto id = two.find(pattern_name(b, 1, 2));
        if (!id) {
            rep.add("minima", b, "no chord " + pattern_name(b, 1, 2) + " in the 2-copy algebra");
            continue;
        }
        const ChordGen& g = two.chord(*id);
        if (!two.degrees_equal(g.degree, -1))
            rep.add("minima", g.name,
                    "minimum has degree " + std::to_string(g.degree) +
                        " (dual degree must be 0, so the chord degree must be -1)");
        if (g.c != 1 || g.r != 2)
            rep.add("minima", g.name, "minimum is not of bigrade (1,2)");
    }
}

void check_explicit(const DGASystem& sys, Report& rep) {
    if (sys.entries.empty()) {
        rep.add("universe", "-", "explicit system without entries");
        return;
    }
    const Field* f = sys.entries.begin()->second.field();
    GradingMode gm = sys.entries.begin()->second.grading();
    for (const auto& [P, dga] : sys.entries) {
        try {
            require_subset(sys, P);
        } catch (const error& e) {
            rep.add("universe", subset_str(P), e.what());
            continue;
        }
        if (dga.field() != f || dga.grading() != gm)
            rep.add("universe", subset_str(P), "field or grading differs across entries");
        if (dga.labels() != P)
            rep.add("universe", subset_str(P), "entry labels differ from its subset");
        std::vector<int> comps;
        for (const auto& c : dga.gspec()->components()) comps.push_back(c.id);
        std::sort(comps.begin(), comps.end());
        if (comps != P)
            rep.add("universe", subset_str(P),
                    "group components must be indexed by the subset labels");
        Report r = dga_check(dga);
        for (auto& fd : r.findings) rep.add(fd.rule, subset_str(P) + ": " + fd.where, fd.detail);
    }
    // covering pairs: inclusion present, structure-preserving, axiom 3
    for (const auto& [P, dga] : sys.entries) {
        if (P.size() < 2) continue;
        for (size_t drop = 0; drop < P.size(); ++drop) {
            std::vector<int> Q;
            for (size_t i = 0; i < P.size(); ++i)
                if (i != drop) Q.push_back(P[i]);
            auto qit = sys.entries.find(Q);
            if (qit == sys.entries.end()) continue;  // absent subsets are allowed
            auto mit = sys.inclusions.find({Q, P});
            if (mit == sys.inclusions.end()) {
                rep.add("inclusion", subset_str(Q) + " in " + subset_str(P),
                        "no inclusion map provided");
                continue;
            }
            const SemiFreeDGA& small = qit->second;
            const std::map<std::string, std::string>& nmap = mit->second;
            bool total = true;
            std::set<std::string> image;
            for (const auto& g : small.chords()) {
                auto hit = nmap.find(g.name);
                if (hit == nmap.end()) {
                    rep.add("inclusion", g.name + " of " + subset_str(Q), "no image assigned");
                    total = false;
                    continue;
                }
                auto tid = dga.find(hit->second);
                if (!tid) {
                    rep.add("inclusion", g.name + " of " + subset_str(Q),
                            "image " + hit->second + " is not a chord of " + subset_str(P));
                    total = false;
                    continue;
                }
                if (!image.insert(hit->second).second) {
                    rep.add("inclusion", hit->second, "two generators share an image");
                    total = false;
                }
                const ChordGen& tg = dga.chord(*tid);
                if (tg.c != g.c || tg.r != g.r)
                    rep.add("labels", g.name + " of " + subset_str(Q),
                            "inclusion changes the (c, r) labels");
                if (!dga.degrees_equal(tg.degree, g.degree))
                    rep.add("degree", g.name + " of " + subset_str(Q),
                            "inclusion changes the degree");
            }
            if (!total) continue;
            SemiFreeDGA sub = subalgebra(dga, Q);
            if (image.size() != sub.num_chords()) {
                rep.add("axiom-3", subset_str(Q) + " in " + subset_str(P),
                        "inclusion image misses chords of the restricted subalgebra");
                continue;
            }
            bool clean = true;
            for (const auto& name : image)
                if (!sub.find(name)) {
                    rep.add("axiom-3", name, "image chord does not restrict to " + subset_str(Q));
                    clean = false;
                }
            if (!clean) continue;
            for (const auto& g : small.chords()) {
                Poly want = translate_poly(small.d(small.id_of(g.name)), small, sub, nmap);
                const Poly& got = sub.d(sub.id_of(nmap.at(g.name)));
                if (want != got)
                    rep.add("axiom-3", g.name + " of " + subset_str(Q),
                            "differential does not match the restriction: expected " +
                                sub.poly_str(want) + ", got " + sub.poly_str(got));
            }
        }
    }
    // functoriality: two-step diamonds agree wherever both chains exist
    for (const auto& [P, dga] : sys.entries) {
        (void)dga;
        if (P.size() < 3) continue;
        for (size_t d1 = 0; d1 < P.size(); ++d1)
            for (size_t d2 = d1 + 1; d2 < P.size(); ++d2) {
                std::vector<int> Q;
                for (size_t i = 0; i < P.size(); ++i)
                    if (i != d1 && i != d2) Q.push_back(P[i]);
                std::vector<int> via1, via2;
                for (size_t i = 0; i < P.size(); ++i) {
                    if (i != d1) via1.push_back(P[i]);
                    if (i != d2) via2.push_back(P[i]);
                }
                auto need = [&](const std::vector<int>& a, const std::vector<int>& b) {
                    return sys.entries.count(a) && sys.entries.count(b) &&
                           sys.inclusions.count({a, b});
                };
                if (!sys.entries.count(Q)) continue;
                if (!need(Q, via1) || !need(via1, P) || !need(Q, via2) || !need(via2, P))
                    continue;
                const auto& m1a = sys.inclusions.at({Q, via1});
                const auto& m1b = sys.inclusions.at({via1, P});
                const auto& m2a = sys.inclusions.at({Q, via2});
                const auto& m2b = sys.inclusions.at({via2, P});
                for (const auto& g : sys.entries.at(Q).chords()) {
                    auto p1 = m1a.count(g.name) && m1b.count(m1a.at(g.name))
                                  ? m1b.at(m1a.at(g.name))
                                  : std::string();
                    auto p2 = m2a.count(g.name) && m2b.count(m2a.at(g.name))
                                  ? m2b.at(m2a.at(g.name))
                                  : std::string();
                    if (p1 != p2)
                        rep.add("functoriality",
                                g.name + " of " + subset_str(Q) + " into " + subset_str(P),
                                "the two inclusion chains send it to " +
                                    (p1.empty() ? "<undefined>" : p1) + " versus " +
                                    (p2.empty() ? "<undefined>" : p2));
                }
            }
    }
    // minima designations
    for (const auto& [i, names] : sys.explicit_minima) {
        std::vector<int> pair{i, i + 1};
        auto it = sys.entries.find(pair);
        if (i < 1 || i + 1 > sys.M) {
            rep.add("minima", subset_str(pair), "pair outside the copy range");
            continue;
        }
        if (it == sys.entries.end()) {
            rep.add("minima", subset_str(pair), "no DGA entry for the pair");
            continue;
        }
        for (const auto& n : names) {
            auto id = it->second.find(n);
            if (!id) {
                rep.add("minima", n, "not a chord of " + subset_str(pair));
                continue;
            }
            const ChordGen& g = it->second.chord(*id);
            if (!it->second.degrees_equal(g.degree, -1))
                rep.add("minima", n,
                        "minimum has degree " + std::to_string(g.degree) +
                            " (dual degree must be 0, so the chord degree must be -1)");
            if (g.c != i || g.r != i + 1)
                rep.add("minima", n, "minimum is not of bigrade (" + std::to_string(i) + "," +
                                         std::to_string(i + 1) + ")");
        }
    }
    // identification sanity: referenced chords must exist
    for (const auto& [P, idmap] : sys.identification) {
        auto it = sys.entries.find(P);
        if (it == sys.entries.end()) {
            rep.add("identification", subset_str(P), "identification for an absent subset");
            continue;
        }
        for (const auto& [name, tok] : idmap) {
            (void)tok;
            if (!it->second.find(name))
                rep.add("identification", name, "not a chord of " + subset_str(P));
        }
    }
}

}  // namespace

Report check_system(const DGASystem& sys) {
    Report rep;
    if (sys.M < 1) {
        rep.add("universe", "-", "a system needs at least one copy");
        return rep;
    }
    if (sys.mode == SystemMode::consistent)
        check_consistent(sys, rep);
    else
        check_explicit(sys, rep);
    return rep;
}

}  // namespace acat
