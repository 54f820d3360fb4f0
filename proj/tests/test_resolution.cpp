#include "doctest.h"

#include <random>
#include <set>

#include "hm/corpus.hpp"
#include "hm/errors.hpp"
#include "hm/resolution.hpp"

using namespace hm;

namespace {

const SurfaceSig S11(1, 1), S04(0, 4), S05(0, 5);

Curve sl(const SurfaceSig& s, Slope x) { return Curve::from_slope(s, x); }

std::vector<Hierarchy> sample_hierarchies(const SurfaceSig& S, int n, int steps, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Hierarchy> out;
    auto base = standard_marking(S);
    for (int i = 0; i < n; ++i) {
        auto mu = random_walk(base, steps, rng);
        auto nu = random_walk(mu, 1 + i % steps, rng);
        try {
            out.push_back(build_hierarchy(mu, nu));
        } catch (const CapExceeded&) {
        }
    }
    return out;
}

// Independent refill: drop the pairs the new simplex meets, then alternate pruning and
// saturation until nothing changes. Re-added pairs keep their old simplex unless dropped.
Slice refill_fixpoint(const Hierarchy& H, const Slice& s, int h) {
    const auto& g = H.geodesics[h];
    int jn = s.pairs.at(h) + 1;
    std::map<int, int> keep = s.pairs;
    keep[h] = jn;
    if (!g.annular()) {
        std::set<int> drop;
        for (auto& [k, w] : keep) {
            const auto& D = H.geodesics[k].domain;
            if (k == h || D == g.domain || !is_subsurface_of(D, g.domain)) continue;
            for (auto& c : g.simplices[jn])
                if (meets_essentially(c, D)) drop.insert(k);
        }
        for (int k : drop) keep.erase(k);
    }
    std::map<int, int> cur = keep;
    for (bool changed = true; changed;) {
        changed = false;
        std::map<int, int> add;
        for (auto& [k, w] : cur) {
            const auto& G = H.geodesics[k];
            if (G.annular()) continue;
            for (auto& Y : component_domains(G.domain, G.simplices[w])) {
                int m = H.find(Y);
                if (m >= 0 && !cur.count(m)) add[m] = keep.count(m) ? keep[m] : 0;
            }
        }
        if (!add.empty()) { cur.insert(add.begin(), add.end()); changed = true; }
        for (auto it = cur.begin(); it != cur.end();) {
            bool supported = it->first == 0;
            for (auto& [k, w] : cur) {
                if (supported) break;
                const auto& G = H.geodesics[k];
                if (G.annular() || k == it->first) continue;
                auto doms = component_domains(G.domain, G.simplices[w]);
                supported = std::find(doms.begin(), doms.end(), H.geodesics[it->first].domain) != doms.end();
            }
            if (!supported) { it = cur.erase(it); changed = true; }
            else ++it;
        }
    }
    return Slice{cur};
}

}  // namespace

TEST_CASE("trivial hierarchy resolves in zero moves") {
    auto m = standard_marking(S05);
    auto H = build_hierarchy(m, m);
    auto R = resolve(H);
    CHECK(R.moves.empty());
    CHECK(R.slices.size() == 1);
    CHECK(initial_slice(H) == terminal_slice(H));
}

TEST_CASE("one-holed torus example slices") {
    auto I = clean_marking(S11, {{sl(S11, Slope(0, 1)), sl(S11, Slope(1, 0))}});
    auto T = clean_marking(S11, {{sl(S11, Slope(1, 0)), sl(S11, Slope(0, 1))}});
    auto H = build_hierarchy(I, T);
    auto s = initial_slice(H);
    REQUIRE(s.pairs.size() == 2);
    CHECK(s.pairs.at(0) == 0);
    auto m = slice_marking(H, s);
    CHECK(m.base == I.base);
    REQUIRE(m.transversal(I.base[0]).size() == 1);
    CHECK(annulus_distance(m.transversal(I.base[0])[0], I.transversal(I.base[0])[0]) <= 2);
    for (auto& [k, w] : s.pairs) CHECK_FALSE(backward_movable(H, s, k));
    auto R = resolve(H);
    CHECK(R.moves.size() == 1);
    auto mt = slice_marking(H, R.slices.back());
    CHECK(mt.base == T.base);
    CHECK(annulus_distance(mt.transversal(T.base[0])[0], T.transversal(T.base[0])[0]) <= 2);
    CHECK(audit_resolution(H, R).ok());
}

TEST_CASE("movability") {
    auto Hs = sample_hierarchies(S05, 12, 6, 5);
    int blocked = 0;
    for (auto& H : Hs) {
        auto s = terminal_slice(H);
        for (auto& [k, w] : s.pairs) CHECK_FALSE(forward_movable(H, s, k));
        auto i0 = initial_slice(H);
        if (H.main().length() > 0 && !forward_movable(H, i0, 0)) ++blocked;
    }
    // a nested geodesic that has not finished blocks the main pair
    CHECK(blocked > 0);
}

TEST_CASE("elementary moves on slices") {
    for (auto S : {S11, S04, S05}) {
        auto Hs = sample_hierarchies(S, 10, 5, 7);
        for (auto& H : Hs) {
            auto R = resolve(H);
            for (size_t i = 0; i + 1 < R.slices.size(); ++i) {
                const auto& s = R.slices[i];
                int h = R.moves[i].geodesic;
                auto t = advance(H, s, h);
                CHECK(t == R.slices[i + 1]);
                CHECK(is_saturated(H, t));
                CHECK(retreat(H, t, h) == s);
                CHECK(refill_fixpoint(H, s, h) == t);
                const auto& g = H.geodesics[h];
                if (!g.annular() && g.domain.xi() == 4) {
                    auto b0 = slice_marking(H, s).base, b1 = slice_marking(H, t).base;
                    std::vector<Curve> gone, came;
                    std::set_difference(b0.begin(), b0.end(), b1.begin(), b1.end(), std::back_inserter(gone));
                    std::set_difference(b1.begin(), b1.end(), b0.begin(), b0.end(), std::back_inserter(came));
                    CHECK(gone == g.simplices[R.moves[i].from]);
                    CHECK(came == g.simplices[R.moves[i].from + 1]);
                }
                // other movable pairs stay movable
                for (auto& [k, w] : s.pairs) {
                    if (k == h || !forward_movable(H, s, k)) continue;
                    REQUIRE(t.pairs.count(k));
                    CHECK(t.pairs.at(k) == w);
                    CHECK(forward_movable(H, t, k));
                }
            }
            CHECK_THROWS_AS(advance(H, R.slices.back(), 0), NotMovable);
        }
    }
}

TEST_CASE("resolution sweep") {
    for (auto S : {S11, S04, S05}) {
        auto Hs = sample_hierarchies(S, 15, 8, 11);
        CHECK(Hs.size() >= 10);
        for (auto& H : Hs) {
            auto R = resolve(H);
            auto rep = audit_resolution(H, R);
            for (auto& f : rep.failures) MESSAGE(f);
            CHECK(rep.ok());
            CHECK(int64_t(R.moves.size()) == total_length(H));
            auto mt = slice_marking(H, R.slices.back());
            CHECK(mt.base == H.T.base);
        }
    }
}

TEST_CASE("clean marking moves") {
    auto m = standard_marking(S11);
    auto a = m.base[0];
    auto tw = clean_marking_moves(m, {MoveKind::Twist, a, 1});
    CHECK(same_marking(clean_marking_moves(tw, {MoveKind::Twist, a, -1}), m));
    CHECK_THROWS_AS(clean_marking_moves(m, {MoveKind::HalfTwist, a, 1}), InvalidMove);
    auto f = clean_marking_moves(m, {MoveKind::Flip, a, 1});
    CHECK(f.base == MultiCurve{sl(S11, Slope(1, 0))});
    CHECK(f.tbar.at(sl(S11, Slope(1, 0))) == sl(S11, Slope(0, 1)));

    auto m4 = standard_marking(S04);
    auto h = clean_marking_moves(m4, {MoveKind::HalfTwist, m4.base[0], 1});
    CHECK(intersection_number(h.tbar.at(m4.base[0]), m4.base[0]) == 2);
    auto full = clean_marking_moves(m4, {MoveKind::Twist, m4.base[0], 1});
    CHECK(same_marking(full, clean_marking_moves(h, {MoveKind::HalfTwist, m4.base[0], 1})));

    std::mt19937_64 rng(13);
    auto m5 = standard_marking(S05);
    for (int i = 0; i < 30; ++i) {
        auto mu = random_walk(m5, 1 + i % 6, rng);
        CHECK(is_clean(mu));
        CHECK(is_maximal(mu));
        for (auto& c : mu.base) {
            auto t = mu.tbar.at(c);
            auto back = clean_marking_moves(clean_marking_moves(mu, {MoveKind::Flip, c, 1}), {MoveKind::Flip, t, 1});
            CHECK(back.base == mu.base);
            for (auto& b : mu.base)
                CHECK(annulus_distance(back.transversal(b)[0], mu.transversal(b)[0]) <= 2);
            auto tw5 = clean_marking_moves(mu, {MoveKind::HalfTwist, c, 1});
            CHECK(same_marking(clean_marking_moves(tw5, {MoveKind::HalfTwist, c, -1}), mu));
        }
    }
}

TEST_CASE("elementary move distance estimate") {
    auto m = standard_marking(S11);
    CHECK(d_el_estimate(m, m, 4) == 0);
    auto a = m.base[0];
    for (int n = 4; n <= 20; ++n) {
        auto nu = clean_marking_moves(m, {MoveKind::Twist, a, n});
        int64_t e = d_el_estimate(m, nu, 4);
        CHECK(std::llabs(e - n) <= 1);
    }
}
