#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acat/ainfty.hpp"
#include "acat/augment.hpp"
#include "acat/category.hpp"
#include "acat/error.hpp"
#include "acat/io.hpp"
#include "acat/random.hpp"
#include "acat/system.hpp"

using namespace acat;
using nlohmann::ordered_json;

namespace {

// Report emission with the exit-code contract: 0 all checks pass, 1 a
// verified mathematical violation, 2 input or usage errors.
struct Emitter {
    std::string command;
    bool json = false;

    int report(const Report& rep, ordered_json tables = ordered_json::object()) const {
        std::string status = rep.ok() ? "pass" : "fail";
        if (json) {
            std::cout << report_doc(command, status, rep, std::move(tables)).dump(2) << "\n";
        } else {
            for (const auto& [key, val] : tables.items())
                if (!val.is_structured()) std::cout << key << ": " << dump_plain(val) << "\n";
            std::cout << (rep.ok() ? "status: pass" : "status: fail\n" + rep.str());
            if (rep.ok()) std::cout << "\n";
        }
        return rep.ok() ? 0 : 1;
    }

    int input_error(const std::string& msg) const {
        if (json) {
            Report rep;
            rep.add("input", "-", msg);
            std::cout << report_doc(command, "error", rep, ordered_json::object()).dump(2)
                      << "\n";
        } else {
            std::cerr << "error: " << msg << "\n";
        }
        return 2;
    }

    static std::string dump_plain(const ordered_json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    }
};

std::string aug_label(size_t i) { return "aug " + std::to_string(i); }

ordered_json dims_json(const std::map<int, size_t>& dims) {
    ordered_json out = ordered_json::object();
    for (const auto& [deg, n] : dims) out[std::to_string(deg)] = n;
    return out;
}

std::string cvect_str(const CVect& v, const Field* f) {
    if (v.unit) return "1";
    if (v.is_zero()) return "0";
    std::string s;
    for (const auto& [name, c] : v.coef) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += bits_to_string(c) + "*";
        s += name + "^";
    }
    return s;
}

ordered_json aug_json(const SemiFreeDGA& dga, const Augmentation& eps) {
    ordered_json chords = ordered_json::object();
    for (const auto& [id, v] : eps.chords) chords[dga.chord(id).name] = bits_to_string(v);
    ordered_json group = ordered_json::array();
    for (const auto& [key, v] : eps.groups)
        group.push_back({{"component", key.first},
                         {"letter", key.second},
                         {"value", bits_to_string(v)}});
    return {{"chords", chords}, {"group", group}};
}

ordered_json table_json(const H0Table& t) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : t) {
        ordered_json cells = ordered_json::array();
        for (const auto& cell : row) {
            ordered_json coords = ordered_json::array();
            for (uint64_t c : cell) coords.push_back(bits_to_string(c));
            cells.push_back(coords);
        }
        rows.push_back(cells);
    }
    return rows;
}

// Loads a system and treats check_system findings as the command's verdict:
// a structurally broken file throws (exit 2), a mathematically broken system
// reports and exits 1 before the command-specific work starts.
LoadedSystem load_for(const std::string& path, const std::string& field_override) {
    if (field_override.empty()) return load_system(path);
    std::string text;
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw error(path + ": cannot open file");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception&) {
        return load_system_text(text, path);  // report the syntax error properly
    }
    size_t colon = field_override.find(':');
    ordered_json f;
    f["degree"] = std::stoi(field_override.substr(0, colon));
    if (colon != std::string::npos) f["modulus"] = field_override.substr(colon + 1);
    doc["field"] = f;
    return load_system_text(doc.dump(), path + " (field " + field_override + ")");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        ainf_selftest();  // pin the dualization convention before any work
    } catch (const std::exception& e) {
        std::cerr << "self-test failed at startup: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"augmentation categories of consistent DGA systems"};
    app.require_subcommand(1);
    bool json = false;
    unsigned seed = 1;
    int kmax = 4;
    app.add_flag("--json", json, "emit a machine-readable report document");
    app.add_option("--seed", seed, "seed for randomized self-tests");
    auto* kopt = app.add_option("--kmax", kmax, "largest arity of A-infinity relations")
                     ->check(CLI::Range(1, 8));

    std::string file, src_file, tgt_file, family_file, field_override;
    int copy = 1;
    size_t aug_index = 0, source_index = 0, target_index = 0, trials = 20;

    CLI::App* c_check = app.add_subcommand("check", "verify every system axiom");
    c_check->add_option("file", file)->required();

    CLI::App* c_augs = app.add_subcommand("augs", "enumerate augmentations of a copy algebra");
    c_augs->add_option("file", file)->required();
    c_augs->add_option("--field", field_override, "override the coefficient field (e[:modulus])");
    c_augs->add_option("--copy", copy, "copy label whose algebra is enumerated");

    CLI::App* c_twist = app.add_subcommand("twist", "differential twisted by an augmentation");
    c_twist->add_option("file", file)->required();
    c_twist->add_option("--aug", aug_index, "augmentation index")->required();

    CLI::App* c_ainf = app.add_subcommand("ainf", "verify the A-infinity relations");
    c_ainf->add_option("file", file)->required();

    CLI::App* c_w = app.add_subcommand("w-check", "certify the unit cocycles w");
    c_w->add_option("file", file)->required();

    CLI::App* c_loc = app.add_subcommand("loc-hom", "stabilized hom of two augmentations");
    c_loc->add_option("file", file)->required();
    c_loc->add_option("--source", source_index, "source augmentation index")->required();
    c_loc->add_option("--target", target_index, "target augmentation index")->required();

    CLI::App* c_h0 = app.add_subcommand("h0", "H^0 composition tables of the localisation");
    c_h0->add_option("file", file)->required();

    CLI::App* c_cmp = app.add_subcommand(
        "compare", "localised construction vs the direct consistent category");
    c_cmp->add_option("file", file)->required();

    CLI::App* c_fun = app.add_subcommand("functor-check", "audit the functor dual to a family");
    c_fun->add_option("src", src_file)->required();
    c_fun->add_option("tgt", tgt_file)->required();
    c_fun->add_option("--family", family_file, "morphism family file")->required();

    CLI::App* c_self = app.add_subcommand("selftest", "orientation pin plus randomized oracles");
    c_self->add_option("--trials", trials, "number of random DGAs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    Emitter emit{app.get_subcommands().front()->get_name(), json};

    try {
        if (c_check->parsed()) {
            LoadedSystem ls = load_system(file);
            ordered_json tables;
            tables["mode"] = mode_str(ls.sys.mode);
            tables["copies"] = ls.sys.M;
            return emit.report(ls.audit, tables);
        }

        if (c_augs->parsed()) {
            LoadedSystem ls = load_for(file, field_override);
            if (!ls.audit.ok()) return emit.report(ls.audit);
            if (copy < 1 || copy > ls.sys.M)
                return emit.input_error("--copy " + std::to_string(copy) + " is outside 1.." +
                                        std::to_string(ls.sys.M));
            SemiFreeDGA dga = system_dga(ls.sys, {copy});
            std::vector<Augmentation> augs = enumerate_augs(dga);
            ordered_json list = ordered_json::array();
            for (const Augmentation& eps : augs) list.push_back(aug_json(dga, eps));
            ordered_json tables;
            tables["copy"] = copy;
            tables["count"] = augs.size();
            tables["augmentations"] = list;
            if (!json)
                for (size_t i = 0; i < augs.size(); ++i)
                    std::cout << aug_label(i) << ": " << augs[i].str(dga) << "\n";
            return emit.report(Report{}, tables);
        }

        if (c_twist->parsed()) {
            LoadedSystem ls = load_system(file);
            if (!ls.audit.ok()) return emit.report(ls.audit);
            std::vector<Augmentation> augs = base_augs(ls.sys);
            if (aug_index >= augs.size())
                return emit.input_error("--aug " + std::to_string(aug_index) +
                                        " is outside 0.." + std::to_string(augs.size() - 1));
            SemiFreeDGA dga = system_dga(ls.sys, {1});
            std::vector<Poly> tw = twist(dga, augs[aug_index]);
            ordered_json twisted = ordered_json::object();
            for (size_t id = 0; id < dga.num_chords(); ++id)
                twisted[dga.chord((int)id).name] = dga.poly_str(tw[id]);
            ordered_json tables;
            tables["aug"] = aug_index;
            tables["twisted"] = twisted;
            if (!json)
                for (size_t id = 0; id < dga.num_chords(); ++id)
                    std::cout << "d_eps(" << dga.chord((int)id).name
                              << ") = " << dga.poly_str(tw[id]) << "\n";
            return emit.report(Report{}, tables);
        }

        if (c_ainf->parsed()) {
            LoadedSystem ls = load_system(file);
            if (!ls.audit.ok()) return emit.report(ls.audit);
            int m = std::min(ls.sys.M, kmax + 1);
            std::vector<int> P;
            for (int l = 1; l <= m; ++l) P.push_back(l);
            SemiFreeDGA big = system_dga(ls.sys, P);
            std::vector<Augmentation> augs = base_augs(ls.sys);
            Report all;
            size_t tuples = 0;
            for (size_t i = 0; i < augs.size(); ++i) {
                Augmentation diag =
                    diagonal_aug(ls.sys, P, std::vector<Augmentation>((size_t)m, augs[i]));
                AinfCtx ctx(big, diag);
                size_t n = 0;
                Report rep = check_ainf(ctx, {.kmax = kmax}, &n);
                tuples += n;
                for (const Finding& f : rep.findings)
                    all.add(f.rule, aug_label(i) + ", " + f.where, f.detail);
            }
            ordered_json tables;
            tables["kmax"] = kmax;
            tables["copies_used"] = m;
            tables["augmentations"] = augs.size();
            tables["tuples"] = tuples;
            return emit.report(all, tables);
        }

        if (c_w->parsed()) {
            LoadedSystem ls = load_system(file);
            if (!ls.audit.ok()) return emit.report(ls.audit);
            std::vector<Augmentation> augs = base_augs(ls.sys);
            Report all;
            size_t certified = 0;
            for (size_t i = 0; i < augs.size(); ++i)
                for (int p = 1; p < ls.sys.M; ++p) {
                    try {
                        w_class(ls.sys, augs[i], p);
                        ++certified;
                    } catch (const error& e) {
                        all.add("w-class",
                                aug_label(i) + ", pair (" + std::to_string(p) + "," +
                                    std::to_string(p + 1) + ")",
                                e.what());
                    }
                }
            ordered_json tables;
            tables["augmentations"] = augs.size();
            tables["pairs"] = ls.sys.M - 1;
            tables["certified"] = certified;
            return emit.report(all, tables);
        }

        if (c_loc->parsed()) {
            LoadedSystem ls = load_system(file);
            if (!ls.audit.ok()) return emit.report(ls.audit);
            std::vector<Augmentation> augs = base_augs(ls.sys);
            if (source_index >= augs.size() || target_index >= augs.size())
                return emit.input_error("augmentation indices are 0.." +
                                        std::to_string(augs.size() - 1));
            LocHom lh = loc_hom(ls.sys, augs[source_index], augs[target_index]);
            ordered_json trans = ordered_json::array();
            for (const Transition& t : lh.transitions)
                trans.push_back({{"j", t.j},
                                 {"iso", t.iso},
                                 {"src_dims", dims_json(t.src_dims)},
                                 {"tgt_dims", dims_json(t.tgt_dims)},
                                 {"ranks", dims_json(t.ranks)}});
            ordered_json reps = ordered_json::object();
            for (const auto& [deg, vecs] : lh.reps) {
                ordered_json list = ordered_json::array();
                for (const CVect& v : vecs) list.push_back(cvect_str(v, ls.sys.field()));
                reps[std::to_string(deg)] = list;
            }
            ordered_json tables;
            tables["witness"] = lh.witness;
            tables["stable_dims"] = dims_json(lh.stable.dims);
            tables["transitions"] = trans;
            tables["representatives"] = reps;
            if (!json) {
                std::cout << "witness: " << lh.witness << "\n";
                for (const auto& [deg, n] : lh.stable.dims)
                    std::cout << "dim H^" << deg << " = " << n << "\n";
            }
            return emit.report(Report{}, tables);
        }

        if (c_h0->parsed()) {
            LoadedSystem ls = load_system(file);
            if (!ls.audit.ok()) return emit.report(ls.audit);
            H0Category cat = h0_category(ls.sys);
            ordered_json homs = ordered_json::array();
            for (const auto& [key, lh] : cat.homs)
                homs.push_back({{"pair", {key.first, key.second}},
                                {"witness", lh.witness},
                                {"dims", dims_json(lh.stable.dims)}});
            ordered_json comp = ordered_json::object();
            for (const auto& [key, t] : cat.tables)
                comp[std::to_string(std::get<0>(key)) + "," + std::to_string(std::get<1>(key)) +
                     "," + std::to_string(std::get<2>(key))] = table_json(t);
            ordered_json tables;
            tables["objects"] = cat.objects.size();
            tables["identified"] = cat.identified;
            if (!cat.note.empty()) tables["note"] = cat.note;
            tables["homs"] = homs;
            tables["composition"] = comp;
            if (!json) {
                std::cout << "objects: " << cat.objects.size() << "\n";
                if (!cat.identified) std::cout << "note: " << cat.note << "\n";
            }
            return emit.report(cat.audit, tables);
        }

        if (c_cmp->parsed()) {
            LoadedSystem ls = load_system(file);
            if (!ls.audit.ok()) return emit.report(ls.audit);
            Report rep = compare_constructions(ls.sys);
            ordered_json tables;
            tables["objects"] = base_augs(ls.sys).size();
            return emit.report(rep, tables);
        }

        if (c_fun->parsed()) {
            LoadedSystem s = load_system(src_file);
            LoadedSystem t = load_system(tgt_file);
            Report gate;
            for (const Finding& f : s.audit.findings)
                gate.add(f.rule, "source: " + f.where, f.detail);
            for (const Finding& f : t.audit.findings)
                gate.add(f.rule, "target: " + f.where, f.detail);
            if (!gate.ok()) return emit.report(gate);
            MorphismFamily fam = parse_family(family_file, s.sys, t.sys);
            int fk = kopt->count() ? kmax : 3;
            AinfFunctor F = functor_from_family(fam, s.sys, t.sys, fk);
            ordered_json tables;
            tables["objects"] = F.objects.size();
            ordered_json omap = ordered_json::array();
            for (size_t i : F.object_map) omap.push_back(i);
            tables["object_map"] = omap;
            tables["arity_audited"] = F.arity_audited;
            return emit.report(F.audit, tables);
        }

        if (c_self->parsed()) {
            std::mt19937 rng(seed);
            Report all;
            size_t tuples = 0, used = 0;
            for (size_t trial = 0; trial < trials; ++trial) {
                SemiFreeDGA dga = random_dga(rng);
                if (dga.num_chords() == 0) continue;
                std::vector<Augmentation> augs = enumerate_augs(dga);
                if (augs.empty()) continue;
                ++used;
                AinfCtx ctx(dga, augs[rng() % augs.size()]);
                size_t n = 0;
                Report rep = check_ainf(ctx, {.kmax = 3, .full_enumeration = true}, &n);
                tuples += n;
                for (const Finding& f : rep.findings)
                    all.add(f.rule, "trial " + std::to_string(trial) + ": " + f.where, f.detail);
                // cross-check m_k against the independent dual oracle
                std::vector<std::vector<int>> chains{{}};
                for (int k = 1; k <= 3; ++k) {
                    std::vector<std::vector<int>> next;
                    for (const auto& c : chains)
                        for (size_t id = 0; id < dga.num_chords(); ++id) {
                            std::vector<int> ext = c;
                            ext.push_back((int)id);
                            std::vector<DualElt> v;
                            for (int x : ext) v.push_back(ctx.dual(x));
                            DualElt a = ctx.mk(v);
                            DualElt b = dual_oracle_mk(ctx, v);
                            ++tuples;
                            if (!(ctx.add(a, b).terms.empty()))
                                all.add("oracle", "trial " + std::to_string(trial),
                                        "m_k and the dual oracle disagree on a chain of length " +
                                            std::to_string(k));
                            next.push_back(std::move(ext));
                        }
                    chains = std::move(next);
                }
            }
            ordered_json tables;
            tables["seed"] = seed;
            tables["trials"] = trials;
            tables["dgas_with_augmentations"] = used;
            tables["tuples"] = tuples;
            return emit.report(all, tables);
        }
    } catch (const insufficient_copies& e) {
        Report rep;
        rep.add("insufficient-copies", "-", e.what());
        return emit.report(rep);
    } catch (const error& e) {
        return emit.input_error(e.what());
    } catch (const std::exception& e) {
        return emit.input_error(e.what());
    }
    return 2;
}
