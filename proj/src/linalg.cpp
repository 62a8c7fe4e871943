#include "acat/linalg.hpp"

#include "acat/error.hpp"

namespace acat {

Mat Mat::identity(const Field* f, size_t n) {
    Mat m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::beside(const Mat& right) const {
    if (rows != right.rows || f != right.f) throw error("matrix concatenation shape mismatch");
    Mat m(f, rows, cols + right.cols);
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = at(r, c);
        for (size_t c = 0; c < right.cols; ++c) m.at(r, cols + c) = right.at(r, c);
    }
    return m;
}

std::vector<uint64_t> Mat::apply(const std::vector<uint64_t>& x) const {
    if (x.size() != cols) throw error("matrix application shape mismatch");
    std::vector<uint64_t> y(rows, 0);
    for (size_t r = 0; r < rows; ++r) {
        uint64_t acc = 0;
        for (size_t c = 0; c < cols; ++c) acc = f->add(acc, f->mul(at(r, c), x[c]));
        y[r] = acc;
    }
    return y;
}

std::vector<size_t> rref(Mat& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t sel = row;
        while (sel < m.rows && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows) continue;
        for (size_t c = 0; c < m.cols; ++c) std::swap(m.a[row * m.cols + c], m.a[sel * m.cols + c]);
        uint64_t inv = m.f->inv(m.at(row, col));
        for (size_t c = col; c < m.cols; ++c) m.at(row, c) = m.f->mul(m.at(row, c), inv);
        for (size_t r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            uint64_t factor = m.at(r, col);
            for (size_t c = col; c < m.cols; ++c)
                m.at(r, c) = m.f->add(m.at(r, c), m.f->mul(factor, m.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t rank(Mat m) { return rref(m).size(); }

std::vector<std::vector<uint64_t>> kernel_basis(const Mat& m) {
    Mat r = m;
    std::vector<size_t> pivots = rref(r);
    std::vector<int> pivot_row(m.cols, -1);
    for (size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = static_cast<int>(i);
    std::vector<std::vector<uint64_t>> basis;
    for (size_t c = 0; c < m.cols; ++c) {
        if (pivot_row[c] >= 0) continue;
        std::vector<uint64_t> v(m.cols, 0);
        v[c] = 1;
        for (size_t pc = 0; pc < m.cols; ++pc)
            if (pivot_row[pc] >= 0) v[pc] = r.at(static_cast<size_t>(pivot_row[pc]), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<uint64_t>> solve(const Mat& m, const std::vector<uint64_t>& b) {
    if (b.size() != m.rows) throw error("solve shape mismatch");
    Mat rhs(m.f, m.rows, 1);
    for (size_t r = 0; r < m.rows; ++r) rhs.at(r, 0) = b[r];
    Mat aug = m.beside(rhs);
    std::vector<size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;  // 0 = 1 row
    std::vector<uint64_t> x(m.cols, 0);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.cols);
    return x;
}

}  // namespace acat
