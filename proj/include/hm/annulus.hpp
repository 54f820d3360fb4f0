#pragma once
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hm/freegroup.hpp"
#include "hm/rational.hpp"

namespace hm {

// Exact half-integer stored doubled.
struct HalfInt {
    int64_t twice = 0;
    static HalfInt from_twice(int64_t t) { return HalfInt{t}; }
    double value() const { return double(twice) / 2.0; }
    HalfInt operator-() const { return {-twice}; }
    friend HalfInt operator+(HalfInt a, HalfInt b) { return {a.twice + b.twice}; }
    friend HalfInt operator-(HalfInt a, HalfInt b) { return {a.twice - b.twice}; }
    friend bool operator==(HalfInt, HalfInt) = default;
    friend auto operator<=>(HalfInt, HalfInt) = default;
    HalfInt abs() const { return {twice < 0 ? -twice : twice}; }
    std::string str() const;
};

double prime_round(double x);
HalfInt prime_round(const Rational& x);

using Endpoint = std::variant<Rational, TreeEnd>;

struct AnnulusArc {
    Endpoint x;  // bottom boundary
    Endpoint y;  // top boundary
};

// Lifted endpoint difference b - a lies in [n, n+1); exact iff b = a + n.
struct FloorDiff {
    int64_t n = 0;
    bool exact = false;
    HalfInt primed() const { return {exact ? 2 * n : 2 * n + 1}; }
};

FloorDiff floor_diff(const Endpoint& a, const Endpoint& b);
int compare_endpoints(const Endpoint& a, int64_t sa, const Endpoint& b, int64_t sb);

AnnulusArc translate(const AnnulusArc& a, int64_t n);
bool arcs_equal(const AnnulusArc& a, const AnnulusArc& b);
// Representative with bottom endpoint in the fundamental period [0,1).
AnnulusArc normalize_arc(const AnnulusArc& a);
bool arc_less(const AnnulusArc& a, const AnnulusArc& b);

HalfInt twist_number(const AnnulusArc& a, const AnnulusArc& b);
int64_t annulus_distance(const AnnulusArc& a, const AnnulusArc& b);
int64_t signed_length(HalfInt tw, int64_t distance, int64_t length);
int64_t signed_length(const std::vector<AnnulusArc>& h);

// Tight geodesic in the arc complex of an annulus; endpoints drawn from those of a and b.
std::vector<AnnulusArc> annulus_geodesic(const AnnulusArc& a, const AnnulusArc& b);

std::string endpoint_str(const Endpoint& e);

}
