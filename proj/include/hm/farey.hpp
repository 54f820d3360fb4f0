#pragma once
#include <cstdint>
#include <compare>
#include <functional>
#include <string>
#include <vector>

#include "hm/rational.hpp"

namespace hm {

struct Slope {
    int64_t p = 1;
    int64_t q = 0;

    Slope() = default;
    Slope(int64_t p_, int64_t q_);  // normalizes; throws on (0,0)

    bool infinite() const { return q == 0; }
    Rational value() const;  // throws for 1/0
    std::string str() const;
    static Slope parse(const std::string& s);

    friend bool operator==(const Slope&, const Slope&) = default;
    friend auto operator<=>(const Slope&, const Slope&) = default;
};

int64_t det(const Slope& a, const Slope& b);
bool farey_adjacent(const Slope& a, const Slope& b);

struct Mat2 {
    int64_t a = 1, b = 0, c = 0, d = 1;
    Slope apply(const Slope& s) const;
    Mat2 operator*(const Mat2& o) const;
    Mat2 inverse() const;
};

// Unimodular map sending a to 1/0.
Mat2 to_infinity(const Slope& a);

// Vertices of the ladder (triangles crossed by the hyperbolic geodesic) between a and b.
std::vector<Slope> farey_ladder(const Slope& a, const Slope& b);

int64_t farey_distance(const Slope& a, const Slope& b);
int64_t farey_distance_ladder_bfs(const Slope& a, const Slope& b);
int64_t farey_distance_cf(const Slope& a, const Slope& b);

using FareyGeodesic = std::vector<Slope>;

std::vector<FareyGeodesic> farey_geodesics(const Slope& a, const Slope& b, int64_t limit);

// Least geodesic under a caller-supplied strict order on vertices.
FareyGeodesic farey_geodesic_min(const Slope& a, const Slope& b,
                                 const std::function<bool(const Slope&, const Slope&)>& less);

}
