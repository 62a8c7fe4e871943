#include "acat/io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "acat/error.hpp"

namespace acat {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& origin, const std::string& path, const std::string& msg) {
    throw error(origin + ": " + (path.empty() ? "" : path + ": ") + msg);
}

std::string type_name(const json& j) {
    if (j.is_null()) return "null";
    if (j.is_boolean()) return "a boolean";
    if (j.is_number()) return "a number";
    if (j.is_string()) return "a string";
    if (j.is_array()) return "an array";
    return "an object";
}

const json& need(const json& obj, const char* key, const std::string& origin,
                 const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(origin, path, std::string("missing required key \"") + key + "\"");
    return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& origin, const std::string& path) {
    if (!obj.is_object()) fail(origin, path, "expected an object, got " + type_name(obj));
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = std::any_of(allowed.begin(), allowed.end(),
                                 [&](const char* k) { return it.key() == k; });
        if (!known) fail(origin, path, "unknown key \"" + it.key() + "\"");
    }
}

std::string as_str(const json& j, const std::string& origin, const std::string& path) {
    if (!j.is_string()) fail(origin, path, "expected a string, got " + type_name(j));
    return j.get<std::string>();
}

int as_int(const json& j, const std::string& origin, const std::string& path) {
    if (!j.is_number_integer()) fail(origin, path, "expected an integer, got " + type_name(j));
    return j.get<int>();
}

const json& as_array(const json& j, const std::string& origin, const std::string& path) {
    if (!j.is_array()) fail(origin, path, "expected an array, got " + type_name(j));
    return j;
}

const json& as_object(const json& j, const std::string& origin, const std::string& path) {
    if (!j.is_object()) fail(origin, path, "expected an object, got " + type_name(j));
    return j;
}

uint64_t parse_bits(const json& j, const std::string& origin, const std::string& path) {
    std::string s = as_str(j, origin, path);
    if (s.empty()) fail(origin, path, "empty bit-string");
    if (s.size() > 64) fail(origin, path, "bit-string longer than 64 bits");
    for (char c : s)
        if (c != '0' && c != '1')
            fail(origin, path, "bit-strings use only '0' and '1', got \"" + s + "\"");
    return bits_from_string(s);
}

std::string subset_key(const std::vector<int>& P) {
    std::string s;
    for (size_t i = 0; i < P.size(); ++i) s += (i ? "," : "") + std::to_string(P[i]);
    return s;
}

std::vector<int> parse_subset(const json& j, int M, const std::string& origin,
                              const std::string& path) {
    const json& a = as_array(j, origin, path);
    if (a.empty()) fail(origin, path, "a subset of copy labels must be nonempty");
    std::vector<int> P;
    for (size_t i = 0; i < a.size(); ++i) {
        int l = as_int(a[i], origin, path + "[" + std::to_string(i) + "]");
        if (l < 1 || l > M)
            fail(origin, path + "[" + std::to_string(i) + "]",
                 "copy label " + std::to_string(l) + " is outside 1.." + std::to_string(M));
        P.push_back(l);
    }
    if (!std::is_sorted(P.begin(), P.end()) ||
        std::adjacent_find(P.begin(), P.end()) != P.end())
        fail(origin, path, "copy labels must be strictly increasing");
    return P;
}

// --- polynomials -----------------------------------------------------------

Poly parse_poly(const SemiFreeDGA& dga, const json& terms, const std::string& origin,
                const std::string& path) {
    const json& arr = as_array(terms, origin, path);
    Poly p = dga.zero();
    for (size_t t = 0; t < arr.size(); ++t) {
        std::string tp = path + "[" + std::to_string(t) + "]";
        check_keys(arr[t], {"coef", "word"}, origin, tp);
        uint64_t coef = parse_bits(need(arr[t], "coef", origin, tp), origin, tp + ".coef");
        if (coef == 0) fail(origin, tp + ".coef", "term with zero coefficient");
        if (coef >= dga.field()->order())
            fail(origin, tp + ".coef", "coefficient does not fit in GF(2^" +
                                           std::to_string(dga.field()->degree()) + ")");
        const json& word = as_array(need(arr[t], "word", origin, tp), origin, tp + ".word");
        Word w = Word::unit();
        for (size_t i = 0; i < word.size(); ++i) {
            std::string fp = tp + ".word[" + std::to_string(i) + "]";
            const json& factor = as_object(word[i], origin, fp);
            if (factor.contains("chord")) {
                check_keys(factor, {"chord"}, origin, fp);
                std::string name = as_str(factor["chord"], origin, fp + ".chord");
                auto id = dga.find(name);
                if (!id)
                    fail(origin, fp, "chord \"" + name + "\" used in a term is not a declared generator");
                w = w * Word::chord(*id);
            } else if (factor.contains("group")) {
                check_keys(factor, {"group"}, origin, fp);
                const json& syls = as_array(factor["group"], origin, fp + ".group");
                GroupElement g;
                for (size_t s = 0; s < syls.size(); ++s) {
                    std::string sp = fp + ".group[" + std::to_string(s) + "]";
                    check_keys(syls[s], {"component", "letters"}, origin, sp);
                    int comp = as_int(need(syls[s], "component", origin, sp), origin,
                                      sp + ".component");
                    if (!dga.gspec()->has(comp))
                        fail(origin, sp + ".component",
                             "group component " + std::to_string(comp) + " is not declared");
                    const json& letters =
                        as_array(need(syls[s], "letters", origin, sp), origin, sp + ".letters");
                    if (letters.empty()) fail(origin, sp + ".letters", "empty syllable");
                    for (size_t l = 0; l < letters.size(); ++l) {
                        std::string lp = sp + ".letters[" + std::to_string(l) + "]";
                        int letter = as_int(letters[l], origin, lp);
                        int rank = dga.gspec()->rank_of(comp);
                        if (letter == 0 || std::abs(letter) > rank)
                            fail(origin, lp,
                                 "letter " + std::to_string(letter) + " is outside the rank-" +
                                     std::to_string(rank) + " component " + std::to_string(comp));
                        g = g * GroupElement::generator(dga.gspec(), comp, letter);
                    }
                }
                w = w * Word::group(g);
            } else {
                fail(origin, fp, "a factor is {\"chord\": name} or {\"group\": [syllables]}");
            }
        }
        p = p + Poly::term(dga.field(), dga.gspec(), w, coef);
    }
    return p;
}

ordered_json group_json(const GroupElement& g) {
    ordered_json syls = ordered_json::array();
    for (const Syllable& s : g.syllables()) {
        ordered_json letters = ordered_json::array();
        for (int l : s.letters) letters.push_back(l);
        syls.push_back({{"component", s.comp}, {"letters", letters}});
    }
    return syls;
}

ordered_json poly_json(const SemiFreeDGA& dga, const Poly& p) {
    ordered_json terms = ordered_json::array();
    for (const auto& [w, coef] : p.terms()) {
        ordered_json factors = ordered_json::array();
        if (!w.groups[0].is_identity()) factors.push_back({{"group", group_json(w.groups[0])}});
        for (size_t i = 0; i < w.chords.size(); ++i) {
            factors.push_back({{"chord", dga.chord(w.chords[i]).name}});
            if (!w.groups[i + 1].is_identity())
                factors.push_back({{"group", group_json(w.groups[i + 1])}});
        }
        terms.push_back({{"coef", bits_to_string(coef)}, {"word", factors}});
    }
    return terms;
}

// --- field / grading / components -------------------------------------------

const Field* parse_field(const json& root, const std::string& origin) {
    const json& f = as_object(need(root, "field", origin, ""), origin, "field");
    check_keys(f, {"degree", "modulus"}, origin, "field");
    int degree = as_int(need(f, "degree", origin, "field"), origin, "field.degree");
    if (degree < 1) fail(origin, "field.degree", "field degree must be at least 1");
    try {
        if (f.contains("modulus"))
            return Field::get(degree, parse_bits(f["modulus"], origin, "field.modulus"));
        return Field::get(degree);
    } catch (const std::exception& e) {
        fail(origin, "field", e.what());
    }
}

GradingMode parse_grading(const json& root, const std::string& origin) {
    if (!root.contains("grading")) return GradingMode::Z;
    std::string g = as_str(root["grading"], origin, "grading");
    if (g == "Z") return GradingMode::Z;
    if (g == "Z2") return GradingMode::Z2;
    fail(origin, "grading", "grading is \"Z\" or \"Z2\", got \"" + g + "\"");
}

std::map<int, int> parse_components(const json& root, const std::string& origin) {
    const json& arr = as_array(need(root, "components", origin, ""), origin, "components");
    std::map<int, int> ranks;
    for (size_t i = 0; i < arr.size(); ++i) {
        std::string p = "components[" + std::to_string(i) + "]";
        check_keys(arr[i], {"id", "pi1_rank"}, origin, p);
        int id = as_int(need(arr[i], "id", origin, p), origin, p + ".id");
        int rank = as_int(need(arr[i], "pi1_rank", origin, p), origin, p + ".pi1_rank");
        if (rank < 0) fail(origin, p + ".pi1_rank", "rank must be nonnegative");
        if (!ranks.emplace(id, rank).second)
            fail(origin, p + ".id", "duplicate component id " + std::to_string(id));
    }
    if (ranks.empty()) fail(origin, "components", "at least one group component is required");
    return ranks;
}

ChordGen parse_chord_gen(const json& j, const std::string& origin, const std::string& path) {
    check_keys(j, {"name", "degree", "c", "r"}, origin, path);
    ChordGen g;
    g.name = as_str(need(j, "name", origin, path), origin, path + ".name");
    if (g.name.empty()) fail(origin, path + ".name", "empty generator name");
    g.degree = as_int(need(j, "degree", origin, path), origin, path + ".degree");
    g.c = as_int(need(j, "c", origin, path), origin, path + ".c");
    g.r = as_int(need(j, "r", origin, path), origin, path + ".r");
    return g;
}

// --- consistent mode ---------------------------------------------------------

DGASystem parse_consistent(const json& root, const Field* field, GradingMode grading, int M,
                           const std::map<int, int>& ranks, const std::string& origin) {
    if (ranks.size() != 1 || ranks.begin()->first != 1)
        fail(origin, "components",
             "consistent mode takes exactly one group component, with id 1 (the base)");
    auto spec = FreeProductSpec::make({{1, ranks.begin()->second}});
    SemiFreeDGA base({1}, grading, field, spec, {{1, 1}});

    const json& gens = as_array(need(root, "generators", origin, ""), origin, "generators");
    bool saw_x = false, saw_y = false;
    for (size_t i = 0; i < gens.size(); ++i) {
        std::string p = "generators[" + std::to_string(i) + "]";
        check_keys(gens[i], {"base", "pairs", "degree"}, origin, p);
        std::string name = as_str(need(gens[i], "base", origin, p), origin, p + ".base");
        std::string pairs = as_str(need(gens[i], "pairs", origin, p), origin, p + ".pairs");
        int degree = as_int(need(gens[i], "degree", origin, p), origin, p + ".degree");
        if (pairs == "all") {
            if (name == "x" || name == "y")
                fail(origin, p + ".base",
                     "\"" + name + "\" is reserved for the copy construction's upper families");
            try {
                base.add_chord({name, degree, 1, 1});
            } catch (const std::exception& e) {
                fail(origin, p + ".base", e.what());
            }
        } else if (pairs == "upper") {
            if (name == "x" && degree == 0) saw_x = true;
            else if (name == "y" && degree == -1) saw_y = true;
            else
                fail(origin, p,
                     "the upper families are exactly x (degree 0) and y (degree -1)");
        } else {
            fail(origin, p + ".pairs", "pairs is \"all\" or \"upper\", got \"" + pairs + "\"");
        }
    }
    if (!saw_x || !saw_y)
        fail(origin, "generators",
             "consistent mode lists the upper families x (degree 0) and y (degree -1)");

    const json& diffs = as_object(need(root, "differentials", origin, ""), origin, "differentials");
    for (auto it = diffs.begin(); it != diffs.end(); ++it) {
        if (!base.find(it.key()))
            fail(origin, "differentials",
                 "chord \"" + it.key() + "\" is not a declared generator");
        base.set_differential(it.key(), parse_poly(base, it.value(), origin,
                                                   "differentials." + it.key()));
    }

    DGASystem sys;
    sys.mode = SystemMode::consistent;
    sys.M = M;
    sys.base = std::move(base);

    const json& minima = as_array(need(root, "minima", origin, ""), origin, "minima");
    for (size_t i = 0; i < minima.size(); ++i) {
        std::string p = "minima[" + std::to_string(i) + "]";
        std::string name = as_str(minima[i], origin, p);
        if (!sys.base->find(name) && name != "x" && name != "y")
            fail(origin, p, "minimum \"" + name + "\" names no generator family");
        sys.pattern_minima.push_back(name);
    }
    return sys;
}

// --- explicit mode -----------------------------------------------------------

DGASystem parse_explicit(const json& root, const Field* field, GradingMode grading, int M,
                         const std::map<int, int>& ranks, const std::string& origin) {
    DGASystem sys;
    sys.mode = SystemMode::explicit_subsets;
    sys.M = M;

    const json& gens = as_array(need(root, "generators", origin, ""), origin, "generators");
    for (size_t i = 0; i < gens.size(); ++i) {
        std::string p = "generators[" + std::to_string(i) + "]";
        check_keys(gens[i], {"subset", "chords"}, origin, p);
        std::vector<int> P =
            parse_subset(need(gens[i], "subset", origin, p), M, origin, p + ".subset");
        if (sys.entries.count(P))
            fail(origin, p + ".subset", "duplicate subset {" + subset_key(P) + "}");
        std::vector<FreeProductSpec::Component> comps;
        std::map<int, int> comp_labels;
        for (int l : P) {
            auto it = ranks.find(l);
            if (it == ranks.end())
                fail(origin, p + ".subset",
                     "no component declared for copy label " + std::to_string(l));
            comps.push_back({l, it->second});
            comp_labels[l] = l;
        }
        SemiFreeDGA dga(P, grading, field, FreeProductSpec::make(std::move(comps)),
                        std::move(comp_labels));
        const json& chords = as_array(need(gens[i], "chords", origin, p), origin, p + ".chords");
        for (size_t c = 0; c < chords.size(); ++c) {
            std::string cp = p + ".chords[" + std::to_string(c) + "]";
            ChordGen g = parse_chord_gen(chords[c], origin, cp);
            if (!std::binary_search(P.begin(), P.end(), g.c) ||
                !std::binary_search(P.begin(), P.end(), g.r))
                fail(origin, cp, "chord labels (" + std::to_string(g.c) + ", " +
                                     std::to_string(g.r) + ") must lie in the subset");
            try {
                dga.add_chord(g);
            } catch (const std::exception& e) {
                fail(origin, cp + ".name", e.what());
            }
        }
        sys.entries.emplace(std::move(P), std::move(dga));
    }

    const json& diffs = as_array(need(root, "differentials", origin, ""), origin, "differentials");
    std::set<std::vector<int>> diff_seen;
    for (size_t i = 0; i < diffs.size(); ++i) {
        std::string p = "differentials[" + std::to_string(i) + "]";
        check_keys(diffs[i], {"subset", "d"}, origin, p);
        std::vector<int> P =
            parse_subset(need(diffs[i], "subset", origin, p), M, origin, p + ".subset");
        auto entry = sys.entries.find(P);
        if (entry == sys.entries.end())
            fail(origin, p + ".subset",
                 "differentials for a subset {" + subset_key(P) + "} with no generators entry");
        if (!diff_seen.insert(P).second)
            fail(origin, p + ".subset", "duplicate subset {" + subset_key(P) + "}");
        const json& d = as_object(need(diffs[i], "d", origin, p), origin, p + ".d");
        for (auto it = d.begin(); it != d.end(); ++it) {
            if (!entry->second.find(it.key()))
                fail(origin, p + ".d", "chord \"" + it.key() + "\" is not a declared generator");
            entry->second.set_differential(
                it.key(), parse_poly(entry->second, it.value(), origin, p + ".d." + it.key()));
        }
    }

    const json& minima = as_array(need(root, "minima", origin, ""), origin, "minima");
    for (size_t i = 0; i < minima.size(); ++i) {
        std::string p = "minima[" + std::to_string(i) + "]";
        check_keys(minima[i], {"i", "chords"}, origin, p);
        int idx = as_int(need(minima[i], "i", origin, p), origin, p + ".i");
        if (idx < 1 || idx >= M)
            fail(origin, p + ".i",
                 "minima pair index " + std::to_string(idx) + " is outside 1.." +
                     std::to_string(M - 1));
        if (sys.explicit_minima.count(idx))
            fail(origin, p + ".i", "duplicate minima pair index " + std::to_string(idx));
        std::vector<std::string> names;
        const json& chords = as_array(need(minima[i], "chords", origin, p), origin, p + ".chords");
        for (size_t c = 0; c < chords.size(); ++c)
            names.push_back(as_str(chords[c], origin, p + ".chords[" + std::to_string(c) + "]"));
        sys.explicit_minima.emplace(idx, std::move(names));
    }

    if (root.contains("inclusions")) {
        const json& incs = as_array(root["inclusions"], origin, "inclusions");
        for (size_t i = 0; i < incs.size(); ++i) {
            std::string p = "inclusions[" + std::to_string(i) + "]";
            check_keys(incs[i], {"from", "to", "map"}, origin, p);
            std::vector<int> from =
                parse_subset(need(incs[i], "from", origin, p), M, origin, p + ".from");
            std::vector<int> to =
                parse_subset(need(incs[i], "to", origin, p), M, origin, p + ".to");
            if (to.size() != from.size() + 1 ||
                !std::includes(to.begin(), to.end(), from.begin(), from.end()))
                fail(origin, p, "inclusion maps are given per covering pair: {" +
                                    subset_key(from) + "} is not covered by {" + subset_key(to) +
                                    "}");
            auto key = std::make_pair(std::move(from), std::move(to));
            if (sys.inclusions.count(key)) fail(origin, p, "duplicate covering pair");
            std::map<std::string, std::string> m;
            const json& mj = as_object(need(incs[i], "map", origin, p), origin, p + ".map");
            for (auto it = mj.begin(); it != mj.end(); ++it)
                m.emplace(it.key(), as_str(it.value(), origin, p + ".map." + it.key()));
            sys.inclusions.emplace(std::move(key), std::move(m));
        }
    }

    if (root.contains("identification")) {
        const json& ids = as_array(root["identification"], origin, "identification");
        for (size_t i = 0; i < ids.size(); ++i) {
            std::string p = "identification[" + std::to_string(i) + "]";
            check_keys(ids[i], {"subset", "tokens"}, origin, p);
            std::vector<int> P =
                parse_subset(need(ids[i], "subset", origin, p), M, origin, p + ".subset");
            if (sys.identification.count(P))
                fail(origin, p + ".subset", "duplicate subset {" + subset_key(P) + "}");
            std::map<std::string, std::string> m;
            const json& tj = as_object(need(ids[i], "tokens", origin, p), origin, p + ".tokens");
            for (auto it = tj.begin(); it != tj.end(); ++it)
                m.emplace(it.key(), as_str(it.value(), origin, p + ".tokens." + it.key()));
            sys.identification.emplace(std::move(P), std::move(m));
        }
    }

    return sys;
}

// Shape-only validation of an embedded morphisms array (names can only be
// resolved against a concrete source and target, which a system file does
// not carry).
void validate_morphisms_shape(const json& arr, int M, const std::string& origin) {
    as_array(arr, origin, "morphisms");
    for (size_t i = 0; i < arr.size(); ++i) {
        std::string p = "morphisms[" + std::to_string(i) + "]";
        check_keys(arr[i], {"subset", "steps"}, origin, p);
        parse_subset(need(arr[i], "subset", origin, p), M, origin, p + ".subset");
        const json& steps = as_array(need(arr[i], "steps", origin, p), origin, p + ".steps");
        if (steps.empty()) fail(origin, p + ".steps", "a morphism needs at least one step");
        for (size_t s = 0; s < steps.size(); ++s) {
            std::string sp = p + ".steps[" + std::to_string(s) + "]";
            check_keys(steps[s], {"kind", "images"}, origin, sp);
            std::string kind = as_str(need(steps[s], "kind", origin, sp), origin, sp + ".kind");
            if (kind == "identity") {
                if (steps[s].contains("images"))
                    fail(origin, sp, "an identity step carries no images");
            } else if (kind == "images") {
                as_object(need(steps[s], "images", origin, sp), origin, sp + ".images");
            } else {
                fail(origin, sp + ".kind", "step kind is \"identity\" or \"images\", got \"" +
                                               kind + "\"");
            }
        }
    }
}

json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1, col = 1;
        size_t stop = e.byte == 0 ? 0 : std::min(text.size(), (size_t)e.byte - 1);
        for (size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') ++line, col = 1;
            else ++col;
        }
        std::string msg = e.what();
        size_t cut = msg.find("] ");
        if (cut != std::string::npos) msg = msg.substr(cut + 2);
        throw error(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                    ": syntax error: " + msg);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

// --- loading -----------------------------------------------------------------

LoadedSystem load_system_text(const std::string& text, const std::string& origin) {
    json root = parse_text(text, origin);
    check_keys(root,
               {"version", "field", "grading", "mode", "copies", "components", "generators",
                "differentials", "minima", "inclusions", "identification", "morphisms"},
               origin, "");
    std::string version = as_str(need(root, "version", origin, ""), origin, "version");
    if (version != kSystemFormatV1)
        fail(origin, "version",
             "unsupported format version \"" + version + "\" (this reader speaks " +
                 kSystemFormatV1 + ")");
    const Field* field = parse_field(root, origin);
    GradingMode grading = parse_grading(root, origin);
    std::string mode = as_str(need(root, "mode", origin, ""), origin, "mode");
    int M = as_int(need(root, "copies", origin, ""), origin, "copies");
    if (M < 1) fail(origin, "copies", "a system has at least one copy");
    std::map<int, int> ranks = parse_components(root, origin);

    DGASystem sys;
    if (mode == "consistent") {
        for (const char* k : {"inclusions", "identification"})
            if (root.contains(k))
                fail(origin, k, std::string("\"") + k + "\" is an explicit-mode key");
        sys = parse_consistent(root, field, grading, M, ranks, origin);
    } else if (mode == "explicit") {
        sys = parse_explicit(root, field, grading, M, ranks, origin);
    } else {
        fail(origin, "mode", "mode is \"consistent\" or \"explicit\", got \"" + mode + "\"");
    }

    if (root.contains("morphisms")) validate_morphisms_shape(root["morphisms"], M, origin);

    Report audit = check_system(sys);
    return {std::move(sys), std::move(audit)};
}

LoadedSystem load_system(const std::string& path) {
    return load_system_text(read_file(path), path);
}

DGASystem parse_system(const std::string& path) {
    LoadedSystem ls = load_system(path);
    if (!ls.audit.ok())
        throw error(path + ": the system fails validation:\n" + ls.audit.str());
    return std::move(ls.sys);
}

// --- serialization -----------------------------------------------------------

std::string serialize_system(const DGASystem& sys) {
    ordered_json root;
    root["version"] = kSystemFormatV1;

    const SemiFreeDGA* uni = nullptr;
    if (sys.mode == SystemMode::consistent) {
        if (!sys.base) throw error("cannot serialize a consistent system without a base");
        uni = &*sys.base;
    } else {
        if (sys.entries.empty()) throw error("cannot serialize a system with no entries");
        uni = &sys.entries.begin()->second;
    }
    root["field"] = {{"degree", uni->field()->degree()},
                     {"modulus", bits_to_string(uni->field()->modulus())}};
    root["grading"] = uni->grading() == GradingMode::Z ? "Z" : "Z2";
    root["mode"] = mode_str(sys.mode);
    root["copies"] = sys.M;

    ordered_json comps = ordered_json::array();
    ordered_json gens = ordered_json::array();
    ordered_json diffs;
    ordered_json minima = ordered_json::array();

    if (sys.mode == SystemMode::consistent) {
        for (const auto& c : uni->gspec()->components())
            comps.push_back({{"id", c.id}, {"pi1_rank", c.rank}});
        for (const ChordGen& g : uni->chords())
            gens.push_back({{"base", g.name}, {"pairs", "all"}, {"degree", g.degree}});
        gens.push_back({{"base", "x"}, {"pairs", "upper"}, {"degree", 0}});
        gens.push_back({{"base", "y"}, {"pairs", "upper"}, {"degree", -1}});
        diffs = ordered_json::object();
        for (size_t id = 0; id < uni->num_chords(); ++id)
            diffs[uni->chord((int)id).name] = poly_json(*uni, uni->d((int)id));
        for (const std::string& m : sys.pattern_minima) minima.push_back(m);
    } else {
        std::map<int, int> ranks;
        for (const auto& [P, dga] : sys.entries)
            for (const auto& c : dga.gspec()->components()) {
                auto [it, fresh] = ranks.emplace(c.id, c.rank);
                if (!fresh && it->second != c.rank)
                    throw error("explicit entries disagree on the rank of component " +
                                std::to_string(c.id));
            }
        for (const auto& [id, rank] : ranks) comps.push_back({{"id", id}, {"pi1_rank", rank}});
        diffs = ordered_json::array();
        for (const auto& [P, dga] : sys.entries) {
            ordered_json chords = ordered_json::array();
            for (const ChordGen& g : dga.chords())
                chords.push_back(
                    {{"name", g.name}, {"degree", g.degree}, {"c", g.c}, {"r", g.r}});
            gens.push_back({{"subset", P}, {"chords", chords}});
            ordered_json d = ordered_json::object();
            for (size_t id = 0; id < dga.num_chords(); ++id)
                d[dga.chord((int)id).name] = poly_json(dga, dga.d((int)id));
            diffs.push_back({{"subset", P}, {"d", d}});
        }
        for (const auto& [i, names] : sys.explicit_minima)
            minima.push_back({{"i", i}, {"chords", names}});
    }

    root["components"] = comps;
    root["generators"] = gens;
    root["differentials"] = diffs;
    root["minima"] = minima;

    if (sys.mode == SystemMode::explicit_subsets) {
        if (!sys.inclusions.empty()) {
            ordered_json incs = ordered_json::array();
            for (const auto& [pair, m] : sys.inclusions) {
                ordered_json mj = ordered_json::object();
                for (const auto& [a, b] : m) mj[a] = b;
                incs.push_back({{"from", pair.first}, {"to", pair.second}, {"map", mj}});
            }
            root["inclusions"] = incs;
        }
        if (!sys.identification.empty()) {
            ordered_json ids = ordered_json::array();
            for (const auto& [P, m] : sys.identification) {
                ordered_json tj = ordered_json::object();
                for (const auto& [a, b] : m) tj[a] = b;
                ids.push_back({{"subset", P}, {"tokens", tj}});
            }
            root["identification"] = ids;
        }
    }

    return root.dump(2) + "\n";
}

// --- families ----------------------------------------------------------------

MorphismFamily parse_family_text(const std::string& text, const DGASystem& srcSys,
                                 const DGASystem& tgtSys, const std::string& origin) {
    json root = parse_text(text, origin);
    std::string version =
        as_str(need(as_object(root, origin, ""), "version", origin, ""), origin, "version");
    if (version == kFamilyFormatV1) {
        check_keys(root, {"version", "morphisms"}, origin, "");
    } else if (version == kSystemFormatV1) {
        if (!root.contains("morphisms"))
            fail(origin, "morphisms", "this system file carries no morphisms");
    } else {
        fail(origin, "version",
             "unsupported format version \"" + version + "\" (this reader speaks " +
                 kFamilyFormatV1 + " and " + kSystemFormatV1 + ")");
    }
    const json& arr =
        as_array(need(root, "morphisms", origin, ""), origin, "morphisms");
    int M = std::min(srcSys.M, tgtSys.M);

    MorphismFamily fam;
    for (size_t i = 0; i < arr.size(); ++i) {
        std::string p = "morphisms[" + std::to_string(i) + "]";
        check_keys(arr[i], {"subset", "steps"}, origin, p);
        std::vector<int> P =
            parse_subset(need(arr[i], "subset", origin, p), M, origin, p + ".subset");
        if (fam.maps.count(P))
            fail(origin, p + ".subset", "duplicate subset {" + subset_key(P) + "}");
        SemiFreeDGA src = system_dga(srcSys, P);
        SemiFreeDGA tgt = system_dga(tgtSys, P);

        const json& steps = as_array(need(arr[i], "steps", origin, p), origin, p + ".steps");
        if (steps.empty()) fail(origin, p + ".steps", "a morphism needs at least one step");

        auto name_map = [&](const SemiFreeDGA& from, const std::string& sp) {
            std::map<int, Poly> images;
            for (const ChordGen& g : from.chords()) {
                auto id = tgt.find(g.name);
                if (!id)
                    fail(origin, sp,
                         "chord \"" + g.name + "\" has no namesake in the target algebra");
                images.emplace(from.id_of(g.name), tgt.gen(*id));
            }
            return images;
        };
        auto read_step = [&](const SemiFreeDGA& from, const json& step, const std::string& sp) {
            check_keys(step, {"kind", "images"}, origin, sp);
            std::string kind = as_str(need(step, "kind", origin, sp), origin, sp + ".kind");
            DGAMorphism f{from, tgt, {}, MorKind::tame, {}};
            if (kind == "identity") {
                if (step.contains("images")) fail(origin, sp, "an identity step carries no images");
                f.chord_images = name_map(from, sp);
            } else if (kind == "images") {
                f.chord_images = name_map(from, sp);
                const json& imgs =
                    as_object(need(step, "images", origin, sp), origin, sp + ".images");
                for (auto it = imgs.begin(); it != imgs.end(); ++it) {
                    auto id = from.find(it.key());
                    if (!id)
                        fail(origin, sp + ".images",
                             "chord \"" + it.key() + "\" is not a generator of the step's source");
                    f.chord_images.insert_or_assign(
                        *id, parse_poly(tgt, it.value(), origin, sp + ".images." + it.key()));
                }
            } else {
                fail(origin, sp + ".kind",
                     "step kind is \"identity\" or \"images\", got \"" + kind + "\"");
            }
            return f;
        };

        DGAMorphism f = read_step(src, steps[0], p + ".steps[0]");
        for (size_t s = 1; s < steps.size(); ++s)
            f = compose(f, read_step(tgt, steps[s], p + ".steps[" + std::to_string(s) + "]"));
        fam.maps.emplace(std::move(P), std::move(f));
    }
    return fam;
}

MorphismFamily parse_family(const std::string& path, const DGASystem& srcSys,
                            const DGASystem& tgtSys) {
    return parse_family_text(read_file(path), srcSys, tgtSys, path);
}

std::string serialize_family(const MorphismFamily& fam) {
    ordered_json root;
    root["version"] = kFamilyFormatV1;
    ordered_json maps = ordered_json::array();
    for (const auto& [P, f] : fam.maps) {
        bool identity = true;
        for (const ChordGen& g : f.source.chords()) {
            auto id = f.target.find(g.name);
            if (!id || f.chord_images.at(f.source.id_of(g.name)) != f.target.gen(*id)) {
                identity = false;
                break;
            }
        }
        ordered_json step;
        if (identity) {
            step = {{"kind", "identity"}};
        } else {
            ordered_json imgs = ordered_json::object();
            for (const ChordGen& g : f.source.chords())
                imgs[g.name] = poly_json(f.target, f.chord_images.at(f.source.id_of(g.name)));
            step = {{"kind", "images"}, {"images", imgs}};
        }
        maps.push_back({{"subset", P}, {"steps", ordered_json::array({step})}});
    }
    root["morphisms"] = maps;
    return root.dump(2) + "\n";
}

// --- reports -----------------------------------------------------------------

nlohmann::ordered_json report_doc(const std::string& command, const std::string& status,
                                  const Report& rep, nlohmann::ordered_json tables) {
    ordered_json doc;
    doc["command"] = command;
    doc["status"] = status;
    ordered_json findings = ordered_json::array();
    for (const Finding& f : rep.findings)
        findings.push_back({{"rule", f.rule}, {"where", f.where}, {"detail", f.detail}});
    doc["findings"] = findings;
    doc["tables"] = tables.is_null() ? ordered_json::object() : std::move(tables);
    return doc;
}

}  // namespace acat
