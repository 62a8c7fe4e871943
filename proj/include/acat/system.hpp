#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acat/augment.hpp"
#include "acat/copies.hpp"
#include "acat/dga.hpp"

namespace acat {

enum class SystemMode { consistent, explicit_subsets };
std::string mode_str(SystemMode m);

// A system of semi-free DGAs indexed by subsets of the copy labels {1..M}.
//
// consistent mode: one base DGA generates everything; 𝒜^(m) is the m-copy
// algebra and 𝒜^P the order-preserving relabel of 𝒜^(|P|). Minima are
// designated by pattern family names: pair (i, i+1) uses name[i,i+1].
//
// explicit mode: the file lists subsets with their DGAs, generator inclusion
// maps for covering pairs P ⊂ P' (|P'| = |P|+1), per-pair minima, and
// optionally the canonical identification of chords with stable tokens
// (without it, cross-copy identity checks degrade to isomorphism checks).
struct DGASystem {
    SystemMode mode = SystemMode::consistent;
    int M = 1;

    std::optional<SemiFreeDGA> base;
    std::vector<std::string> pattern_minima;

    std::map<std::vector<int>, SemiFreeDGA> entries;
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::map<std::string, std::string>>
        inclusions;
    std::map<int, std::vector<std::string>> explicit_minima;  // i -> minima of pair (i, i+1)
    std::map<std::vector<int>, std::map<std::string, std::string>> identification;

    const Field* field() const;
};

// The DGA of subset P (sorted, nonempty, inside 1..M).
SemiFreeDGA system_dga(const DGASystem& sys, const std::vector<int>& P);

// Where the generators of 𝒜^P live inside 𝒜^{P'} (P ⊆ P'): map on chord
// names. Explicit mode composes the covering-pair inclusions along the
// sorted chain; consistent mode is the identity on pattern names.
std::map<std::string, std::string> system_inclusion(const DGASystem& sys,
                                                    const std::vector<int>& P,
                                                    const std::vector<int>& Pp);

// Stable token of a chord of 𝒜^P under the canonical identification:
// consistent mode strips the pattern indices, explicit mode consults the
// supplied identification. nullopt when no identification is available.
std::optional<std::string> system_token(const DGASystem& sys, const std::vector<int>& P,
                                        const std::string& chord);

// Designated minima of the pair (i, i+1), as chord names of 𝒜^{{i,i+1}}.
std::vector<std::string> system_minima(const DGASystem& sys, int i);

// Augmentations of the object algebra 𝒜^{{1}}, deterministically ordered.
std::vector<Augmentation> base_augs(const DGASystem& sys);

// The diagonal augmentation on 𝒜^P built from one object augmentation per
// element of P: diagonal chords and group letters of copy P[l] take the
// values of parts[l], off-diagonal chords go to zero. Re-verified.
Augmentation diagonal_aug(const DGASystem& sys, const std::vector<int>& P,
                          const std::vector<Augmentation>& parts);

// Verifies every system invariant: each algebra passes dga_check, inclusion
// maps are functorial and label-compatible, 𝒜^P → 𝒜^{P'}_P is a DGA
// isomorphism for covering pairs (which generates all nested pairs), the
// consistent axioms reduce to subalgebra-vs-relabel agreement, and the
// designated minima sit in degree -1 (dual degree 0) with bigrade (i, i+1).
Report check_system(const DGASystem& sys);

}  // namespace acat
