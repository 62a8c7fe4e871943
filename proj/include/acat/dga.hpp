#pragma once
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acat/report.hpp"
#include "acat/word.hpp"

namespace acat {

enum class GradingMode { Z, Z2 };

struct ChordGen {
    std::string name;
    int degree = 0;
    int c = 0;  // copy label of the upper endpoint sheet
    int r = 0;  // copy label of the lower endpoint sheet
};

struct Partition {
    std::vector<std::vector<int>> blocks;
};

// A semi-free DGA: chords generate freely over the group algebra of a free
// product, coefficients do not commute past chords. The differential is given
// per chord and extended by the Leibniz rule (characteristic 2, no signs).
class SemiFreeDGA {
 public:
    SemiFreeDGA(std::vector<int> labels, GradingMode mode, const Field* field, SpecPtr gspec,
                std::map<int, int> component_labels);

    int add_chord(const ChordGen& g);              // returns id; throws on duplicate names
    void set_differential(int id, Poly p);         // p over this universe
    void set_differential(const std::string& name, const Poly& p);

    const std::vector<int>& labels() const { return labels_; }
    GradingMode grading() const { return mode_; }
    const Field* field() const { return field_; }
    const SpecPtr& gspec() const { return gspec_; }
    const std::map<int, int>& component_labels() const { return comp_labels_; }

    size_t num_chords() const { return chords_.size(); }
    const ChordGen& chord(int id) const { return chords_.at(id); }
    const std::vector<ChordGen>& chords() const { return chords_; }
    int id_of(const std::string& name) const;                  // throws on miss
    std::optional<int> find(const std::string& name) const;
    const Poly& d(int id) const { return diff_.at(id); }

    Poly zero() const { return Poly::zero(field_, gspec_); }
    Poly unit() const { return Poly::unit(field_, gspec_); }
    Poly gen(int id) const { return Poly::term(field_, gspec_, Word::chord(id), 1); }
    Poly gen(const std::string& name) const { return gen(id_of(name)); }

    int degree_norm(int deg) const;  // reduces mod 2 in Z/2 mode
    int degree_of_word(const Word& w) const;
    bool degrees_equal(int a, int b) const { return degree_norm(a) == degree_norm(b); }

    // Link grading: a word is composable from `from` to `to` when its chord
    // labels chain c(x1)=from, c(x_{i+1})=r(x_i), r(xm)=to, and every group
    // factor's diagonal label equals the boundary label at its position.
    bool word_composable(const Word& w, int from, int to, std::string* why = nullptr) const;

    Poly leibniz_extend(const Poly& p) const;  // the differential of p

    std::string word_str(const Word& w) const;
    std::string poly_str(const Poly& p) const;

 private:
    std::vector<int> labels_;
    GradingMode mode_;
    const Field* field_;
    SpecPtr gspec_;
    std::map<int, int> comp_labels_;  // component id -> diagonal copy label
    std::vector<ChordGen> chords_;
    std::map<std::string, int> by_name_;
    std::vector<Poly> diff_;
};

using DgaPtr = std::shared_ptr<const SemiFreeDGA>;

Report dga_check(const SemiFreeDGA& dga);

// The quotient by the two-sided ideal generated by chords whose labels land
// in different blocks: those chords disappear and so does every differential
// word containing one.
SemiFreeDGA quotient_partition(const SemiFreeDGA& dga, const Partition& pi);

// The subalgebra on chords with both labels in I, with the differential
// inherited through the quotient by I vs complement.
SemiFreeDGA subalgebra(const SemiFreeDGA& dga, const std::vector<int>& I);

// Rebuilds the DGA with labels, component ids and chord names rewritten.
SemiFreeDGA relabel_dga(const SemiFreeDGA& dga, const std::map<int, int>& label_map,
                        const std::map<std::string, std::string>& name_map);

// Structural equality: same labels, chords (name, degree, labels), group
// spec, grading, field and differentials.
bool dga_equal(const SemiFreeDGA& a, const SemiFreeDGA& b, std::string* why = nullptr);

}  // namespace acat
