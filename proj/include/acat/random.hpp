#pragma once
#include <random>

#include "acat/dga.hpp"

namespace acat {

// A small single-copy DGA with a valid differential, produced from a seed by
// random stabilisations and elementary pushforwards. d^2 = 0 holds by
// construction; the result is capped at `max_chords` generators with
// differential words of length <= max_word_len. Used by randomized
// self-tests and property tests.
SemiFreeDGA random_dga(std::mt19937& rng, const Field* f = Field::gf2(), size_t max_chords = 6,
                       size_t max_word_len = 3);

}  // namespace acat
