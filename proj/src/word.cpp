#include "acat/word.hpp"

namespace acat {

bool Word::group_free() const {
    for (const auto& g : groups)
        if (!g.is_identity()) return false;
    return true;
}

Word operator*(const Word& a, const Word& b) {
    Word w;
    w.chords = a.chords;
    w.chords.insert(w.chords.end(), b.chords.begin(), b.chords.end());
    w.groups = a.groups;
    w.groups.back() = w.groups.back() * b.groups.front();
    w.groups.insert(w.groups.end(), b.groups.begin() + 1, b.groups.end());
    return w;
}

Poly Poly::term(const Field* f, const SpecPtr& spec, const Word& w, uint64_t coef) {
    Poly p(f, spec);
    p.add_term(w, coef);
    return p;
}

void Poly::add_term(const Word& w, uint64_t coef) {
    if (w.groups.size() != w.chords.size() + 1)
        throw error("malformed word: group slots must interleave the chords");
    if (coef == 0) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
        t_.emplace(w, coef);
        return;
    }
    it->second = f_->add(it->second, coef);
    if (it->second == 0) t_.erase(it);
}

uint64_t Poly::coeff_of_word(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? 0 : it->second;
}

void Poly::require_compatible(const Poly& o) const {
    if (f_ != o.f_ || !(spec_ == o.spec_ || (spec_ && o.spec_ && *spec_ == *o.spec_)))
        throw error("polynomial arithmetic across distinct universes");
}

Poly operator+(const Poly& a, const Poly& b) {
    a.require_compatible(b);
    Poly r = a;
    for (const auto& [w, c] : b.t_) r.add_term(w, c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.require_compatible(b);
    Poly r(a.f_, a.spec_);
    for (const auto& [wa, ca] : a.t_)
        for (const auto& [wb, cb] : b.t_) r.add_term(wa * wb, a.f_->mul(ca, cb));
    return r;
}

Poly Poly::scaled(uint64_t c) const {
    Poly r(f_, spec_);
    for (const auto& [w, k] : t_) r.add_term(w, f_->mul(k, c));
    return r;
}

Poly Poly::map_chords(const std::function<int(int)>& f) const {
    Poly r(f_, spec_);
    for (const auto& [w, c] : t_) {
        Word m = w;
        for (auto& q : m.chords) q = f(q);
        r.add_term(m, c);
    }
    return r;
}

}  // namespace acat
