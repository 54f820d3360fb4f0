#include "doctest.h"
#include "oracles.hpp"

#include <random>

#include "hm/complexes.hpp"
#include "hm/errors.hpp"

using namespace hm;

namespace {

const SurfaceSig S11(1, 1), S04(0, 4), S05(0, 5);

Curve sl(const SurfaceSig& s, int64_t p, int64_t q) { return Curve::from_slope(s, Slope(p, q)); }
Curve wd(const Word& w) { return Curve::from_word(S05, s05::normalize(w)); }

Curve braided(const Word& w, const BraidWord& b) { return wd(apply_braid(w, b)); }

BraidWord random_braid(std::mt19937_64& rng, int len) {
    std::uniform_int_distribution<int> g(1, 3), sg(0, 1);
    BraidWord b;
    for (int i = 0; i < len; ++i) b.push_back(sg(rng) ? g(rng) : -g(rng));
    return b;
}

SubsurfaceId xside(const Curve& c) { return SubsurfaceId{S05, false, {c}, sides(c).second}; }

}  // namespace

TEST_CASE("projections") {
    auto a = wd({1, 2});
    CHECK(project(wd({3, 4}), annulus_of(a)).empty());
    CHECK(project(a, annulus_of(a)).empty());
    CHECK(project(a, xside(a)).empty());
    auto X = xside(wd({1, 2, 3}));
    // a curve inside X projects to itself
    auto p = project(a, X);
    REQUIRE(p.curves.size() == 1);
    CHECK(p.curves[0] == a);
    // pants curve against crossing curves: nonempty simplices of curves inside X
    std::mt19937_64 rng(3);
    for (int i = 0; i < 40; ++i) {
        auto x = braided({2, 3, 4}, random_braid(rng, 6));
        if (intersection_number(x, X.core()) == 0) continue;
        auto q = project(x, X);
        REQUIRE_FALSE(q.empty());
        for (auto& c : q.curves) CHECK(contained_in(c, X));
        for (size_t s = 0; s < q.curves.size(); ++s)
            for (size_t t = s + 1; t < q.curves.size(); ++t) CHECK(curve_distance(q.curves[s], q.curves[t], X) <= 1);
    }
    CHECK_THROWS_AS(project(wd({2, 3}), component_domains(whole_surface(S05), {a})[1]), CapabilityError);
}

TEST_CASE("marking projections follow the transversal rule") {
    auto m = clean_marking(S11, {{sl(S11, 0, 1), sl(S11, 1, 0)}});
    auto r = restrict_marking(m, annulus_of(sl(S11, 0, 1)));
    REQUIRE(r.arcs.size() == 1);
    CHECK(arcs_equal(r.arcs[0], annular_arc(sl(S11, 0, 1), sl(S11, 1, 0))));
    CHECK(same_marking(restrict_marking(m, whole_surface(S11)), m));
    CHECK(restrict_marking(m, annulus_of(sl(S11, 1, 0))).arcs.size() == 1);
    auto s = simplex_marking(S11, {sl(S11, 0, 1)});
    CHECK(restrict_marking(s, annulus_of(sl(S11, 0, 1))).empty());
}

TEST_CASE("projection distances") {
    auto c = wd({1, 2, 3});
    auto X = xside(c);
    CHECK(d_Y(wd({2, 3, 4}), wd({2, 3, 4}), X) == 0);
    std::mt19937_64 rng(7);
    int tested = 0;
    for (int i = 0; i < 200 && tested < 40; ++i) {
        auto b = random_braid(rng, 5);
        auto x = braided({3, 4}, b), y = braided({2, 3, 4}, b);
        if (!disjoint(x, y) || x == y) continue;
        if (intersection_number(x, c) == 0 || intersection_number(y, c) == 0) continue;
        ++tested;
        // projection is 1-Lipschitz
        CHECK(d_Y(x, y, X) <= 1);
    }
    CHECK(tested > 5);
    for (auto S : {S11, S04})
        for (int q = 1; q <= 12; ++q)
            for (int p = -12; p <= 12; ++p) {
                Slope a(p, q);
                for (auto nb : {Slope(1, 0), Slope(0, 1)}) {
                    if (!farey_adjacent(a, nb)) continue;
                    auto A = annulus_of(Curve::from_slope(S, Slope(1, 1)));
                    auto x = Curve::from_slope(S, a), y = Curve::from_slope(S, nb);
                    if (project(x, A).empty() || project(y, A).empty()) continue;
                    CHECK(d_Y(x, y, A) <= 3);
                }
            }
    CHECK_THROWS_AS(d_Y(wd({1, 2}), wd({2, 3}), annulus_of(wd({3, 4}))), EmptyProjection);
}

TEST_CASE("tight sequences") {
    auto W = whole_surface(S05);
    CHECK(validate_tight({{wd({1, 2})}}, W).ok());
    std::vector<MultiCurve> farey;
    for (auto s : farey_geodesic_min(Slope(0, 1), Slope(7, 3), std::less<Slope>())) farey.push_back({Curve::from_slope(S11, s)});
    CHECK(validate_tight(farey, whole_surface(S11)).ok());
    std::vector<MultiCurve> good{{wd({1, 2})}, {wd({3, 4})}, {wd({2, 3, 4})}};
    CHECK(validate_tight(good, W).ok());
    auto F = fill(good[0], good[2]);
    CHECK(relative_boundary(F, W) == good[1]);
    std::vector<MultiCurve> bad{{wd({1, 2})}, make_multicurve({wd({3, 4}), wd({1, 2})}), {wd({2, 3, 4})}};
    auto r = validate_tight(bad, W);
    CHECK_FALSE(r.clause2);
    CHECK(r.first_bad2 == 1);
    std::vector<MultiCurve> skip{{wd({1, 2})}, {wd({3, 4})}, {wd({1, 2, 3})}};
    CHECK_FALSE(validate_tight(skip, W).clause1);
}

TEST_CASE("tight geodesic search") {
    auto W = whole_surface(S05);
    auto u = wd({1, 2});
    CHECK(tight_geodesic_search({u}, {u}, W).length() == 0);
    CHECK(tight_geodesic_search({u}, {wd({3, 4})}, W).length() == 1);
    std::mt19937_64 rng(11);
    SearchCaps caps;
    int n = 0;
    for (int i = 0; i < 40; ++i) {
        auto w = braided({1, 2}, random_braid(rng, 1 + i % 7));
        int64_t d = s05::distance(u.word(), w.word(), caps);
        if (d > 4) continue;
        ++n;
        auto g = tight_geodesic_search({u}, {w}, W, caps);
        CHECK(g.length() == d);
        CHECK(validate_tight(g.simplices, W, caps).ok());
        // distance at least 2 iff they cross, at least 3 iff they fill
        bool cross = intersection_number(u, w) > 0;
        CHECK((d >= 2) == cross);
        if (cross) CHECK((d >= 3) == fill({u}, {w}).whole());
        for (size_t a = 0; a < g.simplices.size(); ++a)
            for (size_t b = a + 2; b < g.simplices.size(); ++b)
                CHECK(intersection_number(g.simplices[a][0], g.simplices[b][0]) > 0);
    }
    CHECK(n > 20);
    // complexity-4 domains use Farey geodesics in the chart
    auto X = xside(wd({1, 2, 3}));
    auto g = tight_geodesic_search({domain_curve(X, Slope(0, 1))}, {domain_curve(X, Slope(5, 2))}, X);
    CHECK(g.length() == farey_distance(Slope(0, 1), Slope(5, 2)));
    CHECK(validate_tight(g.simplices, X).ok());
}

TEST_CASE("bounded geodesic image audit") {
    auto g = tight_geodesic_search({sl(S11, 0, 1)}, {sl(S11, 0, 1)}, whole_surface(S11));
    CHECK(bgi_audit(g, whole_surface(S11)) == 0);
    auto h = tight_geodesic_search({sl(S11, 0, 1)}, {sl(S11, 7, 3)}, whole_surface(S11));
    CHECK(bgi_audit(h, whole_surface(S11)) == h.length());
    CHECK_THROWS_AS(bgi_audit(h, annulus_of(sl(S11, 0, 1))), EmptyProjection);
}
