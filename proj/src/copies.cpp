#include "acat/copies.hpp"

#include <vector>

namespace acat {

std::string pattern_name(const std::string& base, int j, int k) {
    return base + "[" + std::to_string(j) + "," + std::to_string(k) + "]";
}

bool parse_pattern_name(const std::string& name, std::string* base, int* j, int* k) {
    auto lb = name.find('[');
    if (lb == std::string::npos || name.back() != ']') return false;
    auto comma = name.find(',', lb);
    if (comma == std::string::npos) return false;
    try {
        size_t used = 0;
        std::string js = name.substr(lb + 1, comma - lb - 1);
        std::string ks = name.substr(comma + 1, name.size() - comma - 2);
        int jj = std::stoi(js, &used);
        if (used != js.size()) return false;
        int kk = std::stoi(ks, &used);
        if (used != ks.size()) return false;
        if (base) *base = name.substr(0, lb);
        if (j) *j = jj;
        if (k) *k = kk;
        return true;
    } catch (...) {
        return false;
    }
}

namespace {

using Mat = std::vector<std::vector<Poly>>;

Mat zero_mat(const SemiFreeDGA& dga, int m) {
    return Mat(m, std::vector<Poly>(m, dga.zero()));
}

Mat mat_mul(const SemiFreeDGA& dga, const Mat& a, const Mat& b) {
    int m = static_cast<int>(a.size());
    Mat r = zero_mat(dga, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < m; ++j) r[i][j] = r[i][j] + a[i][k] * b[k][j];
        }
    return r;
}

Mat mat_add(const SemiFreeDGA& dga, const Mat& a, const Mat& b) {
    int m = static_cast<int>(a.size());
    Mat r = zero_mat(dga, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

}  // namespace

SemiFreeDGA multi_copy(const SemiFreeDGA& base, int m) {
    if (m < 1) throw error("multi_copy needs at least one copy");
    if (base.labels() != std::vector<int>{1}) throw error("multi_copy expects a single-copy base with label 1");
    if (base.gspec()->components().size() != 1 || base.gspec()->components()[0].rank > 1)
        throw error("multi_copy supports one group component of rank <= 1");
    for (const auto& g : base.chords())
        if (g.name == "x" || g.name == "y")
            throw error("base chord names 'x' and 'y' collide with the Morse chords of the copy construction");

    int rank = base.gspec()->components()[0].rank;
    std::vector<int> labels(m);
    std::vector<FreeProductSpec::Component> comps;
    std::map<int, int> clabels;
    for (int j = 1; j <= m; ++j) {
        labels[j - 1] = j;
        comps.push_back({j, rank});
        clabels[j] = j;
    }
    SemiFreeDGA out(labels, base.grading(), base.field(), FreeProductSpec::make(comps), clabels);

    // declare chords: base chords fan out over all pairs, Morse chords over j<k
    for (const auto& g : base.chords())
        for (int j = 1; j <= m; ++j)
            for (int k = 1; k <= m; ++k) out.add_chord({pattern_name(g.name, j, k), g.degree, j, k});
    for (int j = 1; j <= m; ++j)
        for (int k = j + 1; k <= m; ++k) {
            out.add_chord({pattern_name("x", j, k), 0, j, k});
            out.add_chord({pattern_name("y", j, k), -1, j, k});
        }

    auto Q = [&](const std::string& bname) {
        Mat r = zero_mat(out, m);
        for (int j = 1; j <= m; ++j)
            for (int k = 1; k <= m; ++k) r[j - 1][k - 1] = out.gen(pattern_name(bname, j, k));
        return r;
    };
    Mat Y = zero_mat(out, m);
    Mat X = zero_mat(out, m);
    for (int j = 1; j <= m; ++j)
        for (int k = j + 1; k <= m; ++k) {
            Y[j - 1][k - 1] = out.gen(pattern_name("y", j, k));
            X[j - 1][k - 1] = out.gen(pattern_name("x", j, k));
        }
    auto t_of = [&](int copy, int sign) {
        return Poly::term(out.field(), out.gspec(),
                          Word::group(GroupElement::generator(out.gspec(), copy, sign)), 1);
    };
    // T = (I + X) D and T^-1 = D^-1 (I + X + X^2 + ...)
    Mat T = zero_mat(out, m), Tinv = zero_mat(out, m);
    if (rank == 1) {
        Mat xpow = zero_mat(out, m);  // accumulates I + X + X^2 + ...
        for (int j = 0; j < m; ++j) xpow[j][j] = out.unit();
        Mat acc = xpow;  // current power, starts at I
        for (int p = 1; p < m; ++p) {
            acc = mat_mul(out, acc, X);
            xpow = mat_add(out, xpow, acc);
        }
        for (int j = 1; j <= m; ++j) {
            T[j - 1][j - 1] = t_of(j, 1);
            for (int k = j + 1; k <= m; ++k) T[j - 1][k - 1] = X[j - 1][k - 1] * t_of(k, 1);
            for (int k = j; k <= m; ++k) Tinv[j - 1][k - 1] = t_of(j, -1) * xpow[j - 1][k - 1];
        }
    }

    // Psi: evaluate a base polynomial into m x m matrices over the copy DGA
    auto psi = [&](const Poly& p) {
        Mat r = zero_mat(out, m);
        for (const auto& [w, coef] : p.terms()) {
            Mat term = zero_mat(out, m);
            for (int j = 0; j < m; ++j) term[j][j] = Poly::term(out.field(), out.gspec(), Word::unit(), coef);
            for (size_t i = 0; i <= w.chords.size(); ++i) {
                for (const auto& syl : w.groups[i].syllables())
                    for (int l : syl.letters) term = mat_mul(out, term, l > 0 ? T : Tinv);
                if (i < w.chords.size()) term = mat_mul(out, term, Q(base.chord(w.chords[i]).name));
            }
            r = mat_add(out, r, term);
        }
        return r;
    };

    for (const auto& g : base.chords()) {
        Mat dq = psi(base.d(base.id_of(g.name)));
        Mat qm = Q(g.name);
        dq = mat_add(out, dq, mat_add(out, mat_mul(out, Y, qm), mat_mul(out, qm, Y)));
        for (int j = 1; j <= m; ++j)
            for (int k = 1; k <= m; ++k)
                out.set_differential(pattern_name(g.name, j, k), dq[j - 1][k - 1]);
    }
    // d X: from d T = Y T + T Y when there is a group letter, otherwise the
    // group-free Morse shape d x_{jk} = y_{jk}(+conj) + chain terms.
    Mat dT = rank == 1 ? mat_add(out, mat_mul(out, Y, T), mat_mul(out, T, Y)) : Mat{};
    Mat y2 = mat_mul(out, Y, Y);
    for (int j = 1; j <= m; ++j)
        for (int k = j + 1; k <= m; ++k) {
            Poly dx = out.zero();
            if (rank == 1) {
                dx = dT[j - 1][k - 1] * t_of(k, -1);
            } else {
                // both boundary conjugates degenerate to y itself and cancel
                Poly chains = out.zero();
                for (int l = j + 1; l < k; ++l)
                    chains = chains + out.gen(pattern_name("y", j, l)) * out.gen(pattern_name("x", l, k)) +
                             out.gen(pattern_name("x", j, l)) * out.gen(pattern_name("y", l, k));
                dx = chains;
            }
            out.set_differential(pattern_name("x", j, k), dx);
            out.set_differential(pattern_name("y", j, k), y2[j - 1][k - 1]);
        }
    return out;
}

}  // namespace acat
