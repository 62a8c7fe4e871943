#pragma once
#include <optional>
#include <vector>

#include "acat/gf2e.hpp"

namespace acat {

// Dense matrix over an interned field; vectors act as columns (y = M x).
struct Mat {
    const Field* f = nullptr;
    size_t rows = 0, cols = 0;
    std::vector<uint64_t> a;

    Mat() = default;
    Mat(const Field* field, size_t r, size_t c) : f(field), rows(r), cols(c), a(r * c, 0) {}

    uint64_t& at(size_t r, size_t c) { return a[r * cols + c]; }
    uint64_t at(size_t r, size_t c) const { return a[r * cols + c]; }

    static Mat identity(const Field* f, size_t n);
    Mat beside(const Mat& right) const;  // [this | right]
    std::vector<uint64_t> apply(const std::vector<uint64_t>& x) const;
};

// Gauss-Jordan elimination in place; returns the pivot columns.
std::vector<size_t> rref(Mat& m);

size_t rank(Mat m);

// Basis of {x : M x = 0}.
std::vector<std::vector<uint64_t>> kernel_basis(const Mat& m);

// One solution of M x = b, if any.
std::optional<std::vector<uint64_t>> solve(const Mat& m, const std::vector<uint64_t>& b);

}  // namespace acat
