#include "acat/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace acat {

std::shared_ptr<const FreeProductSpec> FreeProductSpec::make(std::vector<Component> comps) {
    for (size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].rank < 0) throw error("free product component with negative rank");
        for (size_t j = i + 1; j < comps.size(); ++j)
            if (comps[i].id == comps[j].id)
                throw error("duplicate free product component id " + std::to_string(comps[i].id));
    }
    // Interned so that equal specs share one object.
    static std::mutex mx;
    static std::map<std::vector<std::pair<int, int>>, std::shared_ptr<const FreeProductSpec>> registry;
    std::vector<std::pair<int, int>> key;
    for (const auto& c : comps) key.emplace_back(c.id, c.rank);
    std::lock_guard<std::mutex> lk(mx);
    auto it = registry.find(key);
    if (it == registry.end()) {
        std::shared_ptr<const FreeProductSpec> sp(new FreeProductSpec(std::move(comps)));
        it = registry.emplace(std::move(key), std::move(sp)).first;
    }
    return it->second;
}

bool FreeProductSpec::has(int id) const {
    for (const auto& c : comps_)
        if (c.id == id) return true;
    return false;
}

int FreeProductSpec::rank_of(int id) const {
    for (const auto& c : comps_)
        if (c.id == id) return c.rank;
    throw error("unknown free product component id " + std::to_string(id));
}

namespace {

// Appends one letter to a syllable stack, cancelling inverse pairs and
// dropping emptied syllables as it goes.
void push_letter(std::vector<Syllable>& out, int comp, int letter) {
    if (!out.empty() && out.back().comp == comp) {
        auto& w = out.back().letters;
        if (!w.empty() && w.back() == -letter) {
            w.pop_back();
            if (w.empty()) out.pop_back();
            return;
        }
        w.push_back(letter);
        return;
    }
    out.push_back(Syllable{comp, {letter}});
}

void validate_syllables(const SpecPtr& spec, const std::vector<Syllable>& syls) {
    if (!spec) throw error("group element without a free product spec");
    for (const auto& s : syls) {
        int rank = spec->rank_of(s.comp);
        for (int l : s.letters) {
            if (l == 0 || std::abs(l) > rank)
                throw error("group letter " + std::to_string(l) + " out of range for component " +
                            std::to_string(s.comp));
        }
    }
}

}  // namespace

GroupElement GroupElement::generator(const SpecPtr& spec, int comp, int letter) {
    return from_syllables(spec, {Syllable{comp, {letter}}});
}

GroupElement GroupElement::from_syllables(const SpecPtr& spec, const std::vector<Syllable>& syls) {
    validate_syllables(spec, syls);
    GroupElement g;
    g.spec_ = spec;
    for (const auto& s : syls)
        for (int l : s.letters) push_letter(g.syls_, s.comp, l);
    return g;
}

GroupElement GroupElement::inverse() const {
    GroupElement g;
    g.spec_ = spec_;
    for (auto it = syls_.rbegin(); it != syls_.rend(); ++it) {
        Syllable s{it->comp, {}};
        for (auto lt = it->letters.rbegin(); lt != it->letters.rend(); ++lt) s.letters.push_back(-*lt);
        g.syls_.push_back(std::move(s));
    }
    return g;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (a.spec_ && b.spec_ && !(*a.spec_ == *b.spec_))
        throw error("group multiplication across distinct free product specs");
    GroupElement g;
    g.spec_ = a.spec_ ? a.spec_ : b.spec_;
    g.syls_ = a.syls_;
    for (const auto& s : b.syls_)
        for (int l : s.letters) push_letter(g.syls_, s.comp, l);
    return g;
}

std::string GroupElement::str() const {
    if (syls_.empty()) return "e";
    std::ostringstream os;
    bool first = true;
    for (const auto& s : syls_) {
        for (int l : s.letters) {
            if (!first) os << ".";
            first = false;
            os << "t" << s.comp;
            if (spec_ && spec_->rank_of(s.comp) > 1) os << "_" << std::abs(l);
            if (l < 0) os << "^-1";
            // rank-1 components always use letter 1, so the index is omitted
        }
    }
    return os.str();
}

}  // namespace acat
