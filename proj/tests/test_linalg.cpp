#include <doctest.h>

#include <random>

#include "acat/linalg.hpp"

using namespace acat;

TEST_CASE("rank and kernel over GF(2)") {
    auto f = Field::gf2();
    Mat m(f, 2, 3);
    // rows: (1 1 0), (0 1 1)
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    m.at(1, 1) = 1;
    m.at(1, 2) = 1;
    CHECK(rank(m) == 2);
    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0] == std::vector<uint64_t>{1, 1, 1});
    CHECK(m.apply(ker[0]) == std::vector<uint64_t>{0, 0});
}

TEST_CASE("solve finds solutions and detects inconsistency") {
    auto f = Field::gf2();
    Mat m(f, 2, 2);
    m.at(0, 0) = 1;
    m.at(1, 0) = 1;  // columns: (1,1), (0,0)
    auto sol = solve(m, {1, 1});
    REQUIRE(sol.has_value());
    CHECK(m.apply(*sol) == std::vector<uint64_t>{1, 1});
    CHECK_FALSE(solve(m, {1, 0}).has_value());
}

TEST_CASE("rank-nullity and solve consistency on random matrices") {
    std::mt19937_64 rng(20240817);
    for (const Field* f : {Field::gf2(), Field::get(2), Field::get(3)}) {
        for (int iter = 0; iter < 40; ++iter) {
            size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
            Mat m(f, r, c);
            for (auto& x : m.a) x = rng() % f->order();
            CHECK(rank(m) + kernel_basis(m).size() == c);
            for (const auto& v : kernel_basis(m))
                CHECK(m.apply(v) == std::vector<uint64_t>(r, 0));
            // any target in the image must be solvable
            std::vector<uint64_t> x(c);
            for (auto& xi : x) xi = rng() % f->order();
            auto b = m.apply(x);
            auto sol = solve(m, b);
            REQUIRE(sol.has_value());
            CHECK(m.apply(*sol) == b);
        }
    }
}

TEST_CASE("identity and concatenation helpers") {
    auto f = Field::get(2);
    Mat i = Mat::identity(f, 3);
    CHECK(rank(i) == 3);
    Mat two = i.beside(i);
    CHECK(two.cols == 6);
    CHECK(rank(two) == 3);
}
