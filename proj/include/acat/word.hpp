#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "acat/gf2e.hpp"
#include "acat/group.hpp"

namespace acat {

// A monomial of the semi-free algebra: g0 q1 g1 q2 ... qm gm, with chord
// generators qi (ids local to the owning DGA) separated by group elements.
// Identity group factors are stored explicitly so factor positions stay
// stable for the link grading checks; adjacent group factors never occur
// (multiplication merges them).
struct Word {
    std::vector<int> chords;           // size m
    std::vector<GroupElement> groups;  // size m+1

    Word() : groups(1) {}  // the unit word
    static Word unit() { return Word(); }
    static Word chord(int id) {
        Word w;
        w.chords.push_back(id);
        w.groups.emplace_back();
        return w;
    }
    static Word group(const GroupElement& g) {
        Word w;
        w.groups[0] = g;
        return w;
    }

    size_t length() const { return chords.size(); }
    bool is_unit() const { return chords.empty() && groups[0].is_identity(); }
    bool group_free() const;  // every group factor is the identity

    friend Word operator*(const Word& a, const Word& b);

    bool operator==(const Word& o) const { return chords == o.chords && groups == o.groups; }
    bool operator<(const Word& o) const {
        if (chords != o.chords) return chords < o.chords;
        return groups < o.groups;
    }
};

// Noncommutative polynomial: finite sum of words with GF(2^e) coefficients.
// Terms with zero coefficient are never stored.
class Poly {
 public:
    Poly(const Field* f, SpecPtr spec) : f_(f), spec_(std::move(spec)) {}

    static Poly zero(const Field* f, const SpecPtr& spec) { return Poly(f, spec); }
    static Poly unit(const Field* f, const SpecPtr& spec) { return term(f, spec, Word::unit(), 1); }
    static Poly term(const Field* f, const SpecPtr& spec, const Word& w, uint64_t coef);

    const Field* field() const { return f_; }
    const SpecPtr& spec() const { return spec_; }
    const std::map<Word, uint64_t>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    void add_term(const Word& w, uint64_t coef);  // accumulates, erases on zero
    uint64_t coeff_of_word(const Word& w) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(uint64_t c) const;

    bool operator==(const Poly& o) const { return f_ == o.f_ && t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Rebuilds the polynomial with every chord id passed through `f`;
    // used when moving between generator numberings.
    Poly map_chords(const std::function<int(int)>& f) const;

 private:
    void require_compatible(const Poly& o) const;
    const Field* f_;
    SpecPtr spec_;
    std::map<Word, uint64_t> t_;
};

}  // namespace acat
