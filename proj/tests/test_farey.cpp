#include "doctest.h"
#include "oracles.hpp"

#include <random>

#include "hm/farey.hpp"

using hm::Slope;

TEST_CASE("slope normalization") {
    CHECK(Slope(2, 4) == Slope(1, 2));
    CHECK(Slope(-1, -2) == Slope(1, 2));
    CHECK(Slope(3, -6) == Slope(-1, 2));
    CHECK(Slope(-5, 0) == Slope(1, 0));
    CHECK(Slope(Slope(6, 4).p, Slope(6, 4).q) == Slope(6, 4));
    CHECK(Slope::parse("1/0") == Slope(1, 0));
    CHECK(Slope::parse("-3/5").str() == "-3/5");
    CHECK_THROWS(Slope(0, 0));
}

TEST_CASE("farey adjacency") {
    CHECK(hm::farey_adjacent(Slope(0, 1), Slope(1, 0)));
    CHECK(hm::farey_adjacent(Slope(0, 1), Slope(1, 2)));
    CHECK_FALSE(hm::farey_adjacent(Slope(0, 1), Slope(2, 5)));
}

TEST_CASE("to_infinity is unimodular and sends a to 1/0") {
    for (auto s : {Slope(3, 7), Slope(-2, 5), Slope(0, 1), Slope(1, 0), Slope(13, 1)}) {
        auto M = hm::to_infinity(s);
        CHECK(M.a * M.d - M.b * M.c == 1);
        CHECK(M.apply(s) == Slope(1, 0));
    }
}

TEST_CASE("farey distance small cases") {
    Slope a(2, 7);
    CHECK(hm::farey_distance(a, a) == 0);
    CHECK(hm::farey_distance(Slope(0, 1), Slope(1, 0)) == 1);
    CHECK(hm::farey_distance(Slope(1, 0), Slope(2, 5)) == 3);
    oracle::FareyGraph G(100, -1, 1);
    auto d = G.bfs(G.index.at(Slope(0, 1)));
    CHECK(hm::farey_distance(Slope(0, 1), Slope(3, 5)) == d[G.index.at(Slope(3, 5))]);
}

TEST_CASE("farey distance agrees with brute-force BFS, denominators <= 20") {
    oracle::FareyGraph G(20, -1, 1);
    int64_t mismatches = 0;
    for (size_t i = 0; i < G.verts.size(); ++i) {
        auto d = G.bfs(int(i));
        for (size_t j = 0; j < G.verts.size(); ++j) {
            if (hm::farey_distance(G.verts[i], G.verts[j]) != d[j]) ++mismatches;
            if (hm::farey_distance_cf(G.verts[i], G.verts[j]) != d[j]) ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("continued-fraction descent matches ladder BFS on large slopes") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int64_t> num(-5000, 5000), den(1, 900);
    for (int it = 0; it < 2000; ++it) {
        Slope a(num(rng), den(rng)), b(num(rng), den(rng));
        CHECK(hm::farey_distance_cf(a, b) == hm::farey_distance_ladder_bfs(a, b));
    }
    // denominators beyond the BFS threshold still yield a symmetric metric
    Slope a(123456789, 987654321), b(-22222223, 33333334);
    CHECK(hm::farey_distance(a, b) == hm::farey_distance(b, a));
    CHECK(hm::farey_distance(a, b) <= hm::farey_distance(a, Slope(1, 0)) + hm::farey_distance(Slope(1, 0), b));
}

TEST_CASE("farey geodesics") {
    Slope a(3, 8);
    auto g0 = hm::farey_geodesics(a, a, 5);
    REQUIRE(g0.size() == 1);
    CHECK(g0[0] == std::vector<Slope>{a});
    auto g1 = hm::farey_geodesics(Slope(0, 1), Slope(1, 2), 5);
    REQUIRE(g1.size() == 1);
    CHECK(g1[0].size() == 2);

    oracle::FareyGraph G(30, -1, 1);
    for (auto [x, y] : {std::pair{Slope(0, 1), Slope(2, 3)}, std::pair{Slope(1, 3), Slope(5, 7)},
                        std::pair{Slope(-3, 4), Slope(4, 9)}, std::pair{Slope(1, 0), Slope(7, 19)}}) {
        auto mine = hm::farey_geodesics(x, y, 100000);
        auto brute = G.all_geodesics(x, y);
        std::sort(brute.begin(), brute.end());
        CHECK(mine == brute);  // same set, lexicographic order
        for (auto& g : mine) {
            CHECK(int64_t(g.size()) - 1 == hm::farey_distance(x, y));
            for (size_t i = 0; i + 1 < g.size(); ++i) CHECK(hm::farey_adjacent(g[i], g[i + 1]));
        }
    }
    auto lim = hm::farey_geodesics(Slope(0, 1), Slope(7, 19), 1);
    CHECK(lim.size() == 1);
}

TEST_CASE("least geodesic under a custom order") {
    auto all = hm::farey_geodesics(Slope(1, 3), Slope(5, 7), 1000);
    auto rev = [](const Slope& x, const Slope& y) { return y < x; };
    auto g = hm::farey_geodesic_min(Slope(1, 3), Slope(5, 7), rev);
    auto expect = *std::max_element(all.begin(), all.end(), [](auto& u, auto& v) {
        for (size_t i = 0; i < u.size(); ++i) if (!(u[i] == v[i])) return u[i] < v[i];
        return false;
    });
    CHECK(g == expect);
}
