#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "acat/error.hpp"

namespace acat {

// A free product of finitely generated free groups. Component ids are
// arbitrary distinct integers; each component has `rank` free generators,
// referred to by 1-based index (negative = inverse).
class FreeProductSpec {
 public:
    struct Component {
        int id;
        int rank;
        bool operator==(const Component& o) const { return id == o.id && rank == o.rank; }
    };

    static std::shared_ptr<const FreeProductSpec> make(std::vector<Component> comps);

    const std::vector<Component>& components() const { return comps_; }
    bool has(int id) const;
    int rank_of(int id) const;  // throws on unknown id
    bool operator==(const FreeProductSpec& o) const { return comps_ == o.comps_; }

 private:
    explicit FreeProductSpec(std::vector<Component> c) : comps_(std::move(c)) {}
    std::vector<Component> comps_;
};

using SpecPtr = std::shared_ptr<const FreeProductSpec>;

// One maximal run of letters from a single component inside a reduced word.
struct Syllable {
    int comp = 0;
    std::vector<int> letters;  // nonzero, sign encodes inversion, freely reduced

    bool operator==(const Syllable& o) const { return comp == o.comp && letters == o.letters; }
    bool operator<(const Syllable& o) const {
        if (comp != o.comp) return comp < o.comp;
        return letters < o.letters;
    }
};

// Element of the free product in reduced normal form: adjacent syllables have
// distinct components, no syllable is empty, no letter is followed by its
// inverse. The empty sequence is the identity.
class GroupElement {
 public:
    GroupElement() = default;  // identity
    static GroupElement identity() { return GroupElement(); }
    // Generator (or inverse) `letter` of component `comp`.
    static GroupElement generator(const SpecPtr& spec, int comp, int letter);
    // Reduces an arbitrary syllable sequence.
    static GroupElement from_syllables(const SpecPtr& spec, const std::vector<Syllable>& syls);

    const std::vector<Syllable>& syllables() const { return syls_; }
    bool is_identity() const { return syls_.empty(); }
    GroupElement inverse() const;

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

    bool operator==(const GroupElement& o) const { return syls_ == o.syls_; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool operator<(const GroupElement& o) const { return syls_ < o.syls_; }

    std::string str() const;  // e.g. "t1", "t1^-1.t2", "e"

    const SpecPtr& spec() const { return spec_; }  // null for the bare identity

 private:
    SpecPtr spec_;  // shared across elements; null only for identity
    std::vector<Syllable> syls_;
};

}  // namespace acat
