#include "hm/annulus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>

namespace hm {

std::string HalfInt::str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

double prime_round(double x) {
    double f = std::floor(x);
    return f == x ? x : f + 0.5;
}

HalfInt prime_round(const Rational& x) {
    return x.is_integer() ? HalfInt{2 * x.num()} : HalfInt{2 * x.floor() + 1};
}

int compare_endpoints(const Endpoint& a, int64_t sa, const Endpoint& b, int64_t sb) {
    if (a.index() != b.index()) throw DomainError("mixed endpoint kinds");
    if (auto ra = std::get_if<Rational>(&a)) {
        Rational l = *ra + Rational(sa), r = std::get<Rational>(b) + Rational(sb);
        return l < r ? -1 : (r < l ? 1 : 0);
    }
    return compare_ends(std::get<TreeEnd>(a), sa, std::get<TreeEnd>(b), sb);
}

FloorDiff floor_diff(const Endpoint& a, const Endpoint& b) {
    if (auto ra = std::get_if<Rational>(&a)) {
        Rational d = std::get<Rational>(b) - *ra;
        return {d.floor(), d.is_integer()};
    }
    const TreeEnd& ea = std::get<TreeEnd>(a);
    const TreeEnd& eb = std::get<TreeEnd>(b);
    int64_t n = floor_div(eb.k - ea.k, ea.axis->period());
    while (compare_ends(ea, n, eb, 0) > 0) --n;
    while (compare_ends(ea, n + 1, eb, 0) <= 0) ++n;
    return {n, compare_ends(ea, n, eb, 0) == 0};
}

namespace {

Endpoint shifted(const Endpoint& e, int64_t n) {
    if (auto r = std::get_if<Rational>(&e)) return *r + Rational(n);
    TreeEnd t = std::get<TreeEnd>(e);
    t.k += n * t.axis->period();
    return t;
}

}  // namespace

AnnulusArc translate(const AnnulusArc& a, int64_t n) { return {shifted(a.x, n), shifted(a.y, n)}; }

bool arcs_equal(const AnnulusArc& a, const AnnulusArc& b) {
    FloorDiff dx = floor_diff(a.x, b.x), dy = floor_diff(a.y, b.y);
    return dx.exact && dy.exact && dx.n == dy.n;
}

AnnulusArc normalize_arc(const AnnulusArc& a) {
    int64_t n;
    if (auto r = std::get_if<Rational>(&a.x)) n = r->floor();
    else {
        const TreeEnd& t = std::get<TreeEnd>(a.x);
        n = floor_div(t.k, t.axis->period());
    }
    return translate(a, -n);
}

bool arc_less(const AnnulusArc& a0, const AnnulusArc& b0) {
    AnnulusArc a = normalize_arc(a0), b = normalize_arc(b0);
    int cx = compare_endpoints(a.x, 0, b.x, 0);
    if (cx != 0) return cx < 0;
    return compare_endpoints(a.y, 0, b.y, 0) < 0;
}

HalfInt twist_number(const AnnulusArc& a, const AnnulusArc& b) {
    return floor_diff(a.y, b.y).primed() - floor_diff(a.x, b.x).primed();
}

int64_t annulus_distance(const AnnulusArc& a, const AnnulusArc& b) {
    FloorDiff dx = floor_diff(a.x, b.x), dy = floor_diff(a.y, b.y);
    if (dx.exact && dy.exact && dx.n == dy.n) return 0;
    // integers strictly between the two differences
    auto lo_hi = [](const FloorDiff& lo, const FloorDiff& hi) {
        int64_t first = lo.n + 1;
        int64_t last = hi.exact ? hi.n - 1 : hi.n;
        return std::max<int64_t>(0, last - first + 1);
    };
    bool x_below = dx.n < dy.n || (dx.n == dy.n && dx.exact && !dy.exact);
    int64_t between = x_below ? lo_hi(dx, dy) : lo_hi(dy, dx);
    return 1 + between;
}

int64_t signed_length(HalfInt tw, int64_t distance, int64_t length) {
    if (tw.twice == 0 && distance == 1) return 1;
    return tw.twice >= 0 ? length : -length;
}

int64_t signed_length(const std::vector<AnnulusArc>& h) {
    if (h.size() <= 1) return 0;
    const AnnulusArc& a = h.front();
    const AnnulusArc& b = h.back();
    return signed_length(twist_number(a, b), annulus_distance(a, b), int64_t(h.size()) - 1);
}

namespace {

bool valid_geodesic(const std::vector<AnnulusArc>& g, int64_t d) {
    if (int64_t(g.size()) != d + 1) return false;
    for (size_t i = 0; i + 1 < g.size(); ++i)
        if (annulus_distance(g[i], g[i + 1]) != 1) return false;
    return true;
}

std::vector<AnnulusArc> bfs_geodesic(const AnnulusArc& a, const AnnulusArc& b, int64_t d) {
    FloorDiff dx = floor_diff(a.x, b.x);
    AnnulusArc bn = translate(b, -dx.n);
    std::vector<AnnulusArc> cand;
    const int64_t w = d + 3;
    for (const Endpoint* x : std::array<const Endpoint*, 2>{&a.x, &bn.x})
        for (const Endpoint* y : std::array<const Endpoint*, 2>{&a.y, &bn.y})
            for (int64_t m = -w; m <= w; ++m) cand.push_back({*x, shifted(*y, m)});
    std::vector<AnnulusArc> uniq;
    for (auto& c : cand) {
        bool dup = false;
        for (auto& u : uniq) if (arcs_equal(u, c)) { dup = true; break; }
        if (!dup) uniq.push_back(c);
    }
    int src = -1, dst = -1;
    for (size_t i = 0; i < uniq.size(); ++i) {
        if (src < 0 && arcs_equal(uniq[i], a)) src = int(i);
        if (dst < 0 && arcs_equal(uniq[i], b)) dst = int(i);
    }
    std::vector<int> par(uniq.size(), -2);
    std::deque<int> q{dst};
    par[dst] = -1;
    while (!q.empty()) {
        int u = q.front(); q.pop_front();
        for (size_t v = 0; v < uniq.size(); ++v)
            if (par[v] == -2 && annulus_distance(uniq[u], uniq[v]) == 1) { par[v] = u; q.push_back(int(v)); }
    }
    std::vector<AnnulusArc> g;
    if (par[src] == -2) throw StructureViolation("annulus geodesic search failed");
    for (int u = src; u != -1; u = par[u]) g.push_back(uniq[u]);
    g.back() = b;
    return g;
}

}  // namespace

std::vector<AnnulusArc> annulus_geodesic(const AnnulusArc& a, const AnnulusArc& b) {
    int64_t d = annulus_distance(a, b);
    if (d == 0) return {a};
    if (d == 1) return {a, b};
    FloorDiff dx = floor_diff(a.x, b.x);
    FloorDiff dy = floor_diff(a.y, b.y);
    // b's bottom endpoint sits at x_a + (fraction in [0,1)); walk the top endpoint of a
    bool up = dy.n > dx.n || (dy.n == dx.n && dx.exact && !dy.exact);
    int64_t s = up ? 1 : -1;
    std::vector<AnnulusArc> g{a};
    for (int64_t i = 1; i < d; ++i) g.push_back({a.x, shifted(a.y, s * i)});
    g.push_back(b);
    if (valid_geodesic(g, d)) return g;
    g = bfs_geodesic(a, b, d);
    if (!valid_geodesic(g, d)) throw StructureViolation("annulus geodesic construction failed");
    return g;
}

std::string endpoint_str(const Endpoint& e) {
    if (auto r = std::get_if<Rational>(&e)) return r->str();
    const TreeEnd& t = std::get<TreeEnd>(e);
    std::string s = (t.side == 0 ? "L" : "R") + std::to_string(t.k) + ":";
    for (int l : t.ray) s += std::to_string(l) + ",";
    return s;
}

}
