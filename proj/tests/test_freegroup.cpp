#include "doctest.h"
#include "oracles.hpp"

#include <random>

#include "hm/freegroup.hpp"

using hm::Word;

namespace {

const hm::RibbonRose& torus_rose() {
    static hm::RibbonRose R(2, {1, 2, -1, -2});
    return R;
}

const hm::RibbonRose& disk_rose() {
    static hm::RibbonRose R(4, {1, -1, 2, -2, 3, -3, 4, -4});
    return R;
}

// Substitute x -> img[x] in w.
Word substitute(const Word& w, const std::vector<Word>& img) {
    Word out;
    for (int l : w) {
        Word piece = img[std::abs(l) - 1];
        if (l < 0) piece = hm::inverse(piece);
        out = hm::concat(out, piece);
    }
    return out;
}

// A random automorphism of F2 built from elementary Nielsen moves, applied to the basis.
std::vector<Word> random_basis(std::mt19937_64& rng, int steps) {
    std::vector<Word> basis{{1}, {2}};
    std::uniform_int_distribution<int> pick(0, 7);
    for (int s = 0; s < steps; ++s) {
        int m = pick(rng);
        int i = m & 1, j = 1 - i;
        Word other = (m & 2) ? hm::inverse(basis[j]) : basis[j];
        basis[i] = (m & 4) ? hm::concat(basis[i], other) : hm::concat(other, basis[i]);
    }
    return basis;
}

hm::Slope slope_of(const Word& w) {
    auto e = hm::exponent_sums(w, 2);
    return hm::Slope(e[1], e[0]);
}

}  // namespace

TEST_CASE("word basics") {
    CHECK(hm::reduce({1, 2, -2, -1, 3}) == Word{3});
    CHECK(hm::cyclic_reduce({-1, 2, 3, 1}) == Word{2, 3});
    CHECK(hm::inverse({1, -2}) == Word{2, -1});
    CHECK(hm::power({1, 2}, -2) == Word{-2, -1, -2, -1});
    CHECK(hm::is_proper_power({1, 2, 1, 2}));
    CHECK_FALSE(hm::is_proper_power({1, 2, 1}));
    CHECK(hm::cyclic_equal({1, 2, 3}, {-2, -1, -3}));
    CHECK_FALSE(hm::cyclic_equal({1, 2, 3}, {1, 3, 2}));
    CHECK(hm::canonical_cyclic({3, 1, 2}) == hm::canonical_cyclic({2, 3, 1}));
}

TEST_CASE("ribbon faces") {
    auto f = torus_rose().faces();
    REQUIRE(f.size() == 1);
    CHECK(f[0].size() == 4);
    auto g = disk_rose().faces();
    REQUIRE(g.size() == 5);
    CHECK(hm::cyclic_equal(g[0], {1, 2, 3, 4}));
}

TEST_CASE("punctured torus intersections agree with straight-line count") {
    std::mt19937_64 rng(17);
    CHECK(hm::intersection(torus_rose(), {1}, {2}) == 1);
    for (int it = 0; it < 150; ++it) {
        auto B = random_basis(rng, 1 + it % 7);
        auto C = random_basis(rng, 1 + it % 5);
        for (const Word& u : {B[0], B[1], hm::concat(B[0], B[1])}) {
            CHECK(hm::is_simple(torus_rose(), u));
            for (const Word& v : {C[0], C[1]}) {
                int64_t expect = oracle::torus_crossings(slope_of(u), slope_of(v));
                CHECK(hm::intersection(torus_rose(), u, v) == expect);
            }
        }
        CHECK(hm::intersection(torus_rose(), B[0], B[1]) == 1);
    }
    CHECK_FALSE(hm::is_simple(torus_rose(), {1, 1, 2, 2}));
}

TEST_CASE("four-punctured disk curves") {
    const auto& R = disk_rose();
    CHECK(hm::intersection(R, {1, 2}, {2, 3}) == 2);
    CHECK(hm::intersection(R, {1, 2}, {3, 4}) == 0);
    CHECK(hm::intersection(R, {1, 2}, {1, 2, 3}) == 0);
    for (Word w : {Word{1, 2}, Word{1, 2, 3}, Word{2, 3, 4}, Word{1, 3}, Word{2, 4}})
        CHECK(hm::is_simple(R, w));
    CHECK_FALSE(hm::is_simple(R, {1, 1, 2}));
    CHECK_FALSE(hm::is_simple(R, {1, 2, 1, 2}));
}

TEST_CASE("braid action preserves the boundary word and intersections") {
    const auto& R = disk_rose();
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> gen(1, 3), sgn(0, 1), len(1, 6);
    const std::vector<Word> base{{1, 2}, {2, 3}, {1, 2, 3}, {3, 4}, {2, 4}};
    for (int it = 0; it < 200; ++it) {
        hm::BraidWord b;
        for (int k = len(rng); k > 0; --k) b.push_back(sgn(rng) ? gen(rng) : -gen(rng));
        CHECK(hm::apply_braid({1, 2, 3, 4}, b) == Word{1, 2, 3, 4});
        for (auto& w : base) {
            Word img = hm::cyclic_reduce(hm::apply_braid(w, b));
            CHECK(hm::is_simple(R, img));
            CHECK(hm::cyclic_equal(hm::apply_braid_inverse(img, b), w));
        }
        for (size_t i = 0; i < base.size(); ++i)
            for (size_t j = i + 1; j < base.size(); ++j)
                CHECK(hm::intersection(R, hm::apply_braid(base[i], b), hm::apply_braid(base[j], b)) ==
                      hm::intersection(R, base[i], base[j]));
        CHECK(hm::apply_braid(hm::apply_braid({2, 3}, b), hm::braid_inverse(b)) == Word{2, 3});
    }
}

TEST_CASE("crossing lifts count intersections and ends are totally ordered") {
    const auto& R = disk_rose();
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> gen(1, 3), sgn(0, 1), len(0, 5);
    for (int it = 0; it < 120; ++it) {
        hm::BraidWord b;
        for (int k = len(rng); k > 0; --k) b.push_back(sgn(rng) ? gen(rng) : -gen(rng));
        Word alpha = hm::cyclic_reduce(hm::apply_braid({2, 3}, b));
        auto axis = std::make_shared<hm::Axis>(hm::Axis{&R, alpha});
        for (Word beta0 : {Word{1, 2}, Word{3, 4}, Word{1, 2, 3}, Word{2, 3, 4}, Word{1, 3}}) {
            Word beta = hm::cyclic_reduce(beta0);
            auto lifts = hm::crossing_lifts(axis, beta);
            CHECK(int64_t(lifts.size()) == hm::intersection(R, alpha, beta));
            std::vector<hm::TreeEnd> ends;
            for (auto& l : lifts) {
                CHECK(l.left.side == 0);
                CHECK(l.right.side == 1);
                ends.push_back(l.left);
            }
            for (size_t i = 0; i < ends.size(); ++i) {
                CHECK(hm::compare_ends(ends[i], 0, ends[i], 0) == 0);
                CHECK(hm::compare_ends(ends[i], 0, ends[i], 1) < 0);
                for (size_t j = 0; j < ends.size(); ++j)
                    CHECK(hm::compare_ends(ends[i], 0, ends[j], 0) == -hm::compare_ends(ends[j], 0, ends[i], 0));
            }
        }
    }
}
