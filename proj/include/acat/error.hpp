#pragma once
#include <stdexcept>
#include <string>

namespace acat {

// Usage / precondition / input errors. Mathematical violations discovered by
// the checking passes are reported through Report, not thrown.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// loc_hom could not certify stabilization within the copies available.
struct insufficient_copies : error {
    int copies_available;
    int copies_needed;
    insufficient_copies(int have, int need)
        : error("insufficient copies: stabilization not certified with " +
                std::to_string(have) + " copies (need at least " + std::to_string(need) + ")"),
          copies_available(have),
          copies_needed(need) {}
    insufficient_copies(int have, int need, const std::string& what)
        : error(what), copies_available(have), copies_needed(need) {}
};

}  // namespace acat
