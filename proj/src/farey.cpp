#include "hm/farey.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace hm {

namespace {

int64_t iabs(int64_t v) { return v < 0 ? -v : v; }

// Extended gcd: returns (g, x, y) with a*x + b*y = g.
void egcd(int64_t a, int64_t b, int64_t& g, int64_t& x, int64_t& y) {
    int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        int64_t t = floor_div(a, b);
        int64_t r = a - t * b;
        a = b; b = r;
        int64_t nx = x0 - t * x1, ny = y0 - t * y1;
        x0 = x1; y0 = y1; x1 = nx; y1 = ny;
    }
    g = a; x = x0; y = y0;
    if (g < 0) { g = -g; x = -x; y = -y; }
}

struct Vec { int64_t p, q; };

}  // namespace

Slope::Slope(int64_t p_, int64_t q_) {
    if (p_ == 0 && q_ == 0) throw DomainError("slope 0/0");
    int64_t g = std::gcd(iabs(p_), iabs(q_));
    p_ /= g; q_ /= g;
    if (q_ < 0) { p_ = -p_; q_ = -q_; }
    if (q_ == 0) p_ = 1;
    p = p_; q = q_;
}

Rational Slope::value() const {
    if (q == 0) throw DomainError("slope 1/0 has no finite value");
    return Rational(p, q);
}

std::string Slope::str() const { return std::to_string(p) + "/" + std::to_string(q); }

Slope Slope::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Slope(std::stoll(s), 1);
    return Slope(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

int64_t det(const Slope& a, const Slope& b) { return narrow(i128(a.p) * b.q - i128(a.q) * b.p); }

bool farey_adjacent(const Slope& a, const Slope& b) { return iabs(det(a, b)) == 1; }

Slope Mat2::apply(const Slope& s) const {
    return Slope(narrow(i128(a) * s.p + i128(b) * s.q), narrow(i128(c) * s.p + i128(d) * s.q));
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return {narrow(i128(a) * o.a + i128(b) * o.c), narrow(i128(a) * o.b + i128(b) * o.d),
            narrow(i128(c) * o.a + i128(d) * o.c), narrow(i128(c) * o.b + i128(d) * o.d)};
}

Mat2 Mat2::inverse() const {
    int64_t dt = a * d - b * c;
    return {d * dt, -b * dt, -c * dt, a * dt};
}

Mat2 to_infinity(const Slope& s) {
    if (s.q == 0) return {};
    int64_t g, x, y;
    // s.p * x + s.q * y = 1, so with r = -y, col (x,?)...
    egcd(s.p, s.q, g, x, y);
    // want p*S - q*R = 1: S = x, R = -y
    int64_t S = x, R = -y;
    return {S, -R, -s.q, s.p};
}

namespace {

// Continued fraction of a finite positive-denominator fraction r/s.
std::vector<int64_t> continued_fraction(int64_t r, int64_t s) {
    std::vector<int64_t> out;
    while (s != 0) {
        int64_t a = floor_div(r, s);
        out.push_back(a);
        int64_t rem = r - a * s;
        r = s; s = rem;
    }
    return out;
}

int64_t distance_from_infinity(const Slope& x) {
    if (x.q == 0) return 0;
    if (x.q == 1) return 1;
    auto cf = continued_fraction(x.p, x.q);
    // D_{k} for convergents c_{-1}=inf, c_0, ...
    int64_t prev = 0, cur = 1;
    for (size_t k = 1; k < cf.size(); ++k) {
        int64_t nxt = std::min(cur + 1, prev + std::min<int64_t>(2, cf[k]));
        prev = cur; cur = nxt;
    }
    return cur;
}

// Ladder from 1/0 to x as vectors, with structural edges.
struct Ladder {
    std::vector<Vec> verts;
    std::vector<std::pair<int, int>> edges;
};

Ladder ladder_from_infinity(const Slope& x, size_t max_size) {
    Ladder L;
    L.verts.push_back({1, 0});
    if (x.q == 0) return L;
    auto cf = continued_fraction(x.p, x.q);
    L.verts.push_back({cf[0], 1});
    L.edges.push_back({0, 1});
    int im2 = 0, im1 = 1;  // indices of c_{k-2}, c_{k-1}
    Vec cm2{1, 0}, cm1{cf[0], 1};
    for (size_t k = 1; k < cf.size(); ++k) {
        int64_t ak = cf[k];
        if (L.verts.size() + size_t(ak) > max_size) throw CapabilityError("Farey ladder too large");
        int last = im2;
        for (int64_t j = 1; j <= ak; ++j) {
            Vec v{narrow(i128(cm2.p) + i128(j) * cm1.p), narrow(i128(cm2.q) + i128(j) * cm1.q)};
            L.verts.push_back(v);
            int id = int(L.verts.size()) - 1;
            L.edges.push_back({last, id});
            L.edges.push_back({im1, id});
            last = id;
        }
        Vec ck = L.verts.back();
        im2 = im1; im1 = int(L.verts.size()) - 1;
        cm2 = cm1; cm1 = ck;
    }
    return L;
}

struct LadderGraph {
    std::vector<Slope> verts;  // in the original coordinates
    std::vector<std::vector<int>> adj;
    int src = 0, dst = 0;
};

LadderGraph ladder_graph(const Slope& a, const Slope& b, size_t max_size) {
    Mat2 M = to_infinity(a);
    Mat2 Mi = M.inverse();
    Slope x = M.apply(b);
    Ladder L = ladder_from_infinity(x, max_size);
    LadderGraph G;
    std::map<Slope, int> index;
    std::vector<int> remap(L.verts.size());
    for (size_t i = 0; i < L.verts.size(); ++i) {
        Slope s = Mi.apply(Slope(L.verts[i].p, L.verts[i].q));
        auto it = index.find(s);
        if (it == index.end()) {
            it = index.emplace(s, int(G.verts.size())).first;
            G.verts.push_back(s);
        }
        remap[i] = it->second;
    }
    G.adj.assign(G.verts.size(), {});
    for (auto [u, v] : L.edges) {
        int a2 = remap[u], b2 = remap[v];
        if (a2 == b2) continue;
        G.adj[a2].push_back(b2);
        G.adj[b2].push_back(a2);
    }
    for (auto& nb : G.adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    G.src = index.at(a);
    G.dst = index.at(b);
    return G;
}

std::vector<int64_t> bfs(const LadderGraph& G, int from) {
    std::vector<int64_t> d(G.verts.size(), -1);
    std::deque<int> dq{from};
    d[from] = 0;
    while (!dq.empty()) {
        int u = dq.front(); dq.pop_front();
        for (int v : G.adj[u])
            if (d[v] < 0) { d[v] = d[u] + 1; dq.push_back(v); }
    }
    return d;
}

constexpr int64_t kBfsThreshold = 1000;
constexpr size_t kLadderLimit = 200000;

}  // namespace

std::vector<Slope> farey_ladder(const Slope& a, const Slope& b) {
    return ladder_graph(a, b, kLadderLimit).verts;
}

int64_t farey_distance_cf(const Slope& a, const Slope& b) {
    return distance_from_infinity(to_infinity(a).apply(b));
}

int64_t farey_distance_ladder_bfs(const Slope& a, const Slope& b) {
    LadderGraph G = ladder_graph(a, b, kLadderLimit);
    return bfs(G, G.src)[G.dst];
}

int64_t farey_distance(const Slope& a, const Slope& b) {
    if (a == b) return 0;
    int64_t dt = iabs(det(a, b));
    if (dt == 1) return 1;
    if (a.q <= kBfsThreshold && b.q <= kBfsThreshold && dt <= kBfsThreshold)
        return farey_distance_ladder_bfs(a, b);
    return farey_distance_cf(a, b);
}

std::vector<FareyGeodesic> farey_geodesics(const Slope& a, const Slope& b, int64_t limit) {
    if (limit < 1) throw DomainError("limit must be positive");
    if (a == b) return {{a}};
    LadderGraph G = ladder_graph(a, b, kLadderLimit);
    auto dist_to_b = bfs(G, G.dst);
    for (auto& nb : G.adj)
        std::sort(nb.begin(), nb.end(), [&](int u, int v) { return G.verts[u] < G.verts[v]; });
    std::vector<FareyGeodesic> out;
    std::vector<int> path{G.src};
    std::function<void(int)> dfs = [&](int u) {
        if (int64_t(out.size()) >= limit) return;
        if (u == G.dst) {
            FareyGeodesic g;
            for (int i : path) g.push_back(G.verts[i]);
            out.push_back(std::move(g));
            return;
        }
        for (int v : G.adj[u]) {
            if (dist_to_b[v] != dist_to_b[u] - 1) continue;
            path.push_back(v);
            dfs(v);
            path.pop_back();
        }
    };
    dfs(G.src);
    return out;
}

FareyGeodesic farey_geodesic_min(const Slope& a, const Slope& b,
                                 const std::function<bool(const Slope&, const Slope&)>& less) {
    if (a == b) return {a};
    LadderGraph G = ladder_graph(a, b, kLadderLimit);
    auto dist_to_b = bfs(G, G.dst);
    FareyGeodesic g{a};
    int u = G.src;
    while (u != G.dst) {
        int best = -1;
        for (int v : G.adj[u]) {
            if (dist_to_b[v] != dist_to_b[u] - 1) continue;
            if (best < 0 || less(G.verts[v], G.verts[best])) best = v;
        }
        u = best;
        g.push_back(G.verts[u]);
    }
    return g;
}

}
