#include "doctest.h"
#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "hm/curve.hpp"
#include "hm/errors.hpp"
#include "hm/s05.hpp"

using namespace hm;

namespace {

const SurfaceSig S11(1, 1), S04(0, 4), S05(0, 5);

Curve sl(const SurfaceSig& s, int64_t p, int64_t q) { return Curve::from_slope(s, Slope(p, q)); }
Curve wd(const Word& w) { return Curve::from_word(S05, w); }

}  // namespace

TEST_CASE("complexity and supported surfaces") {
    CHECK(S11.xi() == 4);
    CHECK(S04.xi() == 4);
    CHECK(S05.xi() == 5);
    CHECK(SurfaceSig(2, 0).xi() == 6);
    CHECK_THROWS_AS(SurfaceSig(0, 1), DomainError);
    CHECK_THROWS_AS(SurfaceSig(0, 0), DomainError);
    CHECK_NOTHROW(require_supported(S05));
    CHECK_THROWS_AS(require_supported(SurfaceSig(2, 0)), CapabilityError);
    CHECK_THROWS_AS(require_supported(SurfaceSig(0, 6)), CapabilityError);
    CHECK(parse_surface("1,1") == S11);
    CHECK(parse_surface("0,5") == S05);
}

TEST_CASE("curve normalization is idempotent") {
    CHECK(sl(S11, 2, -4) == sl(S11, -1, 2));
    auto c = wd({2, 1});
    CHECK(c == wd({1, 2}));
    CHECK(c == wd({-2, -1}));
    CHECK(Curve::from_word(S05, c.word()) == c);
    CHECK_THROWS_AS(wd({1}), DomainError);
    CHECK_THROWS_AS(wd({1, 2, 3, 4}), DomainError);
    CHECK_THROWS_AS(Curve::from_slope(S05, Slope(1, 0)), SurfaceMismatch);
    CHECK_THROWS_AS(intersection_number(sl(S11, 1, 0), sl(S04, 1, 0)), SurfaceMismatch);
}

TEST_CASE("xi=4 intersection numbers against straight-line crossings on the torus") {
    CHECK(intersection_number(sl(S11, 0, 1), sl(S11, 1, 0)) == 1);
    CHECK(intersection_number(sl(S04, 0, 1), sl(S04, 1, 0)) == 2);
    std::vector<Slope> slopes;
    for (int64_t q = 0; q <= 30; ++q)
        for (int64_t p = -30; p <= 30; ++p)
            if (std::gcd(std::llabs(p), q) == 1 && (q > 0 || p == 1)) slopes.push_back(Slope(p, q));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<size_t> pick(0, slopes.size() - 1);
    for (int i = 0; i < 3000; ++i) {
        Slope a = slopes[pick(rng)], b = slopes[pick(rng)];
        int64_t t = oracle::torus_crossings(a, b);
        CHECK(intersection_number(Curve::from_slope(S11, a), Curve::from_slope(S11, b)) == t);
        CHECK(intersection_number(Curve::from_slope(S04, a), Curve::from_slope(S04, b)) == 2 * t);
    }
}

TEST_CASE("S_{0,4} sides pair puncture 1 with the parity puncture") {
    CHECK(sides(sl(S04, 1, 0)).first == 0b0101);
    CHECK(sides(sl(S04, 0, 1)).first == 0b0011);
    CHECK(sides(sl(S04, 1, 1)).first == 0b1001);
    CHECK(sides(sl(S04, 3, 5)).first == 0b1001);
    // disjoint curves are equal, distinct slopes always cross
    for (auto s : {Slope(1, 2), Slope(-2, 3), Slope(5, 1)}) {
        auto [a, b] = sides(Curve::from_slope(S04, s));
        CHECK((a | b) == 0xFu);
        CHECK((a & b) == 0u);
    }
}

TEST_CASE("component domains") {
    auto d11 = component_domains(whole_surface(S11), {sl(S11, 1, 0)});
    REQUIRE(d11.size() == 2);
    CHECK(d11[0].annulus);
    CHECK(d11[1].xi() == 3);

    auto d04 = component_domains(whole_surface(S04), {sl(S04, 2, 3)});
    REQUIRE(d04.size() == 3);
    CHECK(d04[0].annulus);
    CHECK(d04[1].xi() == 3);
    CHECK(d04[2].xi() == 3);
    CHECK((d04[1].mask | d04[2].mask) == 0xFu);

    auto a = wd({1, 2});
    auto d1 = component_domains(whole_surface(S05), {a});
    REQUIRE(d1.size() == 3);
    int xis = 0;
    for (auto& y : d1) xis += y.xi();
    CHECK(xis == 2 + 3 + 4);
    auto X = std::find_if(d1.begin(), d1.end(), [](auto& y) { return y.xi() == 4; });
    REQUIRE(X != d1.end());
    CHECK(X->mask == 0b11100);

    auto b = wd({3, 4});
    auto d2 = component_domains(whole_surface(S05), make_multicurve({a, b}));
    REQUIRE(d2.size() == 5);
    int n3 = 0, n2 = 0;
    for (auto& y : d2) (y.xi() == 3 ? n3 : n2) += 1;
    CHECK(n3 == 3);
    CHECK(n2 == 2);

    // nested: X_a split along a curve inside it
    auto s = wd({3, 4});
    auto d3 = component_domains(*X, {s});
    REQUIRE(d3.size() == 3);
    for (auto& y : d3) CHECK((y.annulus || y.xi() == 3));
    CHECK_THROWS_AS(component_domains(*X, {wd({2, 3})}), DomainError);
}

TEST_CASE("containment and essential intersection") {
    auto a = wd({1, 2});
    auto X = SubsurfaceId{S05, false, {a}, s05::x_mask(a.word())};
    CHECK(contained_in(wd({3, 4}), X));
    CHECK(contained_in(wd({1, 2, 3}), X));
    CHECK_FALSE(contained_in(wd({2, 3}), X));
    CHECK_FALSE(contained_in(a, X));
    CHECK(meets_essentially(wd({2, 3}), X));
    CHECK(meets_essentially(wd({2, 3}), annulus_of(a)));
    CHECK_FALSE(meets_essentially(wd({3, 4}), annulus_of(a)));
    CHECK(is_subsurface_of(annulus_of(wd({3, 4})), X));
    CHECK_FALSE(is_subsurface_of(annulus_of(wd({2, 3})), X));
}

TEST_CASE("fill") {
    CHECK(fill({sl(S11, 0, 1)}, {sl(S11, 1, 0)}).whole());
    CHECK(fill({sl(S04, 0, 1)}, {sl(S04, 0, 1)}).annulus);
    // x2x3 and x3x4 both lie inside x2x3x4
    auto Y = fill({wd({2, 3})}, {wd({3, 4})});
    CHECK_FALSE(Y.whole());
    CHECK(Y.xi() == 4);
    CHECK(Y.core() == wd({2, 3, 4}));
    auto Z = fill({wd({1, 2})}, {wd({2, 3})});
    CHECK(Z.core() == wd({1, 2, 3}));
    CHECK_THROWS_AS(fill({wd({1, 2})}, {wd({3, 4})}), DomainError);
}

TEST_CASE("psi of arcs in xi=4 domains") {
    auto W = whole_surface(S04);
    CHECK(psi(ArcVertex{W, Slope(1, 0), 1, 3}) == sl(S04, 1, 0));
    CHECK(psi(ArcVertex{W, Slope(1, 0), 2, 4}) == sl(S04, 1, 0));
    CHECK_THROWS_AS(psi(ArcVertex{W, Slope(1, 0), 1, 2}), DomainError);
    CHECK(psi(ArcVertex{whole_surface(S11), Slope(2, 5), 1, 1}) == sl(S11, 2, 5));
    CHECK_THROWS_AS(psi(ArcVertex{annulus_of(sl(S11, 1, 0)), Slope(1, 0), 1, 1}), CapabilityError);
    auto a = wd({1, 2});
    auto X = SubsurfaceId{S05, false, {a}, s05::x_mask(a.word())};
    for (auto s : {Slope(1, 0), Slope(0, 1), Slope(3, 2)}) {
        Curve c = psi(ArcVertex{X, s, 0, 0});
        CHECK(contained_in(c, X));
        CHECK(domain_slope(X, c) == s);
    }
}

TEST_CASE("annular arcs") {
    auto a = sl(S11, 1, 0);
    auto arc = annular_arc(a, sl(S11, 3, 1));
    CHECK(std::get<Rational>(arc.y) == Rational(3));
    CHECK_THROWS_AS(annular_arc(a, a), EmptyProjection);
    auto b = sl(S04, 1, 0);
    CHECK(std::get<Rational>(annular_arc(b, sl(S04, 3, 1)).y) == Rational(3, 2));
    // S_{0,5}: one arc per crossing, twist under Dehn twist about the core
    auto c = wd({1, 2});
    auto x = wd({2, 3});
    CHECK(annular_arcs(c, x).size() == size_t(intersection_number(c, x)));
    // full twists about the core shift the projection by one per twist
    std::vector<int64_t> tws;
    for (int n = 1; n <= 6; ++n) {
        BraidWord b(2 * n, 1);
        auto y = Curve::from_word(S05, s05::normalize(apply_braid(x.word(), b)));
        tws.push_back(twist_number(annular_arc(c, x), annular_arc(c, y)).twice);
        CHECK(annulus_distance(annular_arc(c, x), annular_arc(c, y)) == n + 2);
    }
    for (size_t i = 1; i < tws.size(); ++i) CHECK(std::llabs(tws[i] - tws[i - 1]) == 2);
}
