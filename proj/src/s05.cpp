#include "hm/s05.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hm/errors.hpp"

namespace hm::s05 {

const RibbonRose& rose() {
    static const RibbonRose R(4, {1, -1, 2, -2, 3, -3, 4, -4});
    return R;
}

Word normalize(const Word& w) { return canonical_cyclic(cyclic_reduce(w)); }

bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

uint32_t inner_mask(const Word& w) {
    auto e = exponent_sums(w, 4);
    uint32_t m = 0;
    for (int i = 0; i < 4; ++i) if (e[i] != 0) m |= 1u << i;
    return m;
}

namespace {

int popcount(uint32_t m) { return __builtin_popcount(m); }

struct WordPairHash {
    size_t operator()(const std::pair<Word, Word>& p) const {
        size_t h = 1469598103934665603ull;
        for (int l : p.first) h = (h ^ size_t(l + 8)) * 1099511628211ull;
        h = (h ^ 0xff) * 1099511628211ull;
        for (int l : p.second) h = (h ^ size_t(l + 8)) * 1099511628211ull;
        return h;
    }
};

}  // namespace

bool is_curve(const Word& w0) {
    Word w = cyclic_reduce(w0);
    if (w.empty() || is_proper_power(w)) return false;
    auto e = exponent_sums(w, 4);
    int sign = 0, count = 0;
    for (auto x : e) {
        if (x == 0) continue;
        if (std::llabs(x) != 1) return false;
        if (sign != 0 && x != sign) return false;
        sign = int(x);
        ++count;
    }
    if (count != 2 && count != 3) return false;
    return is_simple(rose(), w);
}

uint32_t pants_mask(const Word& w) {
    uint32_t in = inner_mask(w);
    return popcount(in) == 2 ? in : ((~in) & 0xFu) | 0x10u;
}

uint32_t x_mask(const Word& w) { return (~pants_mask(w)) & 0x1Fu; }

int64_t intersection(const Word& a, const Word& b) {
    thread_local std::unordered_map<std::pair<Word, Word>, int64_t, WordPairHash> cache;
    auto key = word_less(b, a) ? std::make_pair(b, a) : std::make_pair(a, b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    int64_t v = hm::intersection(rose(), a, b);
    if (cache.size() > 400000) cache.clear();
    cache.emplace(std::move(key), v);
    return v;
}

namespace {

// Braid word taking `from` to `to` (as curves), by breadth-first search over half twists.
BraidWord braid_between(const Word& from, const Word& to, int max_len) {
    Word target = normalize(to);
    std::map<Word, BraidWord> seen;
    std::deque<Word> q;
    Word start = normalize(from);
    seen[start] = {};
    q.push_back(start);
    while (!q.empty()) {
        Word w = q.front();
        q.pop_front();
        const BraidWord path = seen[w];
        if (w == target) {
            return BraidWord(path.rbegin(), path.rend());
        }
        if (int(path.size()) >= max_len) continue;
        for (int g : {1, -1, 2, -2, 3, -3}) {
            Word n = normalize(apply_sigma(w, g));
            if (seen.count(n)) continue;
            BraidWord p = path;
            p.push_back(g);
            seen[n] = p;
            q.push_back(n);
        }
    }
    throw StructureViolation("no short braid between standard curves");
}

struct ChartType {
    Word std_c, ref10, ref01, ref11;
    int half = 0;
    BraidWord full;
    int eps = 1;
    BraidWord base10, base01;  // frames of ref10, ref01
};

Slope read_slope(const ChartType& T, const Word& x) {
    const RibbonRose& R = rose();
    int64_t i10 = hm::intersection(R, x, T.ref10), i01 = hm::intersection(R, x, T.ref01);
    int64_t i11 = hm::intersection(R, x, T.ref11);
    if (i10 % 2 || i01 % 2 || i11 % 2) throw StructureViolation("odd intersection in a four-holed sphere chart");
    int64_t q = i10 / 2, p = i01 / 2, d = i11 / 2;
    if (q == 0) {
        if (p != 1 && x != T.ref10) throw StructureViolation("chart reading failed");
        return Slope(1, 0);
    }
    if (std::llabs(p - q) == d) return Slope(p, q);
    if (std::llabs(-p - q) == d) return Slope(-p, q);
    throw StructureViolation("inconsistent chart intersections");
}

ChartType make_chart(int type) {
    ChartType T;
    if (type == 2) {
        T.std_c = {1, 2};
        T.ref10 = normalize({3, 4});
        T.ref01 = normalize({1, 2, 3});
        T.half = 3;
        T.full = {1, 2, 1, 2, 1, 2};
    } else {
        T.std_c = {1, 2, 3};
        T.ref10 = normalize({2, 3});
        T.ref01 = normalize({1, 2});
        T.half = 2;
        T.full = {1, 1};
    }
    T.std_c = normalize(T.std_c);
    T.ref11 = normalize(apply_sigma(T.ref01, T.half));
    T.base10 = braid_between({1, 2}, T.ref10, 8);
    T.base01 = popcount(inner_mask(T.ref01)) == 2 ? braid_between({1, 2}, T.ref01, 8)
                                                   : braid_between({1, 2, 3}, T.ref01, 8);
    Word probe = normalize(apply_braid(T.ref10, T.full));
    Slope s = read_slope(T, probe);
    if (s == Slope(1, 2)) T.eps = 1;
    else if (s == Slope(-1, 2)) T.eps = -1;
    else throw StructureViolation("full twist calibration failed");
    return T;
}

const ChartType& chart_type(const Word& c) {
    static const ChartType A = make_chart(2), B = make_chart(3);
    return popcount(inner_mask(c)) == 2 ? A : B;
}

// Frames depend on the order curves are first met, so each thread keeps its own and callers
// that need reproducible charts reset them per unit of work.
thread_local std::map<Word, BraidWord> t_frames;
thread_local std::map<std::pair<Word, Slope>, Word> t_chart_cache;

// Decompose s as M(base) with M a product of U = [[1,1],[0,1]] and L = [[1,0],[2,1]] powers.
struct Decomposition {
    std::vector<std::pair<int, int64_t>> ops;  // (0: U, 1: L, power), outermost first
    bool base_is_inf = true;
};

Decomposition decompose(const Slope& s) {
    Decomposition D;
    int64_t p = s.p, q = s.q;
    for (;;) {
        if (q == 0) { D.base_is_inf = true; break; }
        if (p == 0) { D.base_is_inf = false; break; }
        if (2 * std::llabs(p) > q) {
            int64_t k = floor_div(2 * p + q, 2 * q);
            p -= k * q;
            D.ops.push_back({0, k});
        } else {
            int64_t k = floor_div(q + std::llabs(p), 2 * p);
            if (p < 0) k = -floor_div(q + std::llabs(p), -2 * p);
            q -= 2 * k * p;
            if (q < 0) { q = -q; p = -p; }
            D.ops.push_back({1, k});
        }
    }
    return D;
}

BraidWord braid_power(const BraidWord& b, int64_t k) {
    BraidWord out;
    BraidWord base = k < 0 ? braid_inverse(b) : b;
    for (int64_t i = 0; i < std::llabs(k); ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
}

BraidWord concat_braid(const BraidWord& a, const BraidWord& b) {
    BraidWord r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// Greedy untangling key: intersections with the three interval curves, then word length.
std::pair<int64_t, int64_t> tangle_key(const Word& w) {
    const RibbonRose& R = rose();
    int64_t s = 0;
    for (Word seg : {Word{1, 2}, Word{2, 3}, Word{3, 4}}) s += hm::intersection(R, w, seg);
    return {s, int64_t(w.size())};
}

const std::map<Word, BraidWord>& round_frames() {
    static const std::map<Word, BraidWord> m = [] {
        std::map<Word, BraidWord> out;
        for (Word r : {Word{1, 2}, Word{2, 3}, Word{3, 4}}) out[normalize(r)] = braid_between({1, 2}, r, 8);
        for (Word r : {Word{1, 2, 3}, Word{2, 3, 4}}) out[normalize(r)] = braid_between({1, 2, 3}, r, 8);
        return out;
    }();
    return m;
}

}  // namespace

Word standard_curve(const Word& c) { return chart_type(c).std_c; }

void register_frame(const Word& c, const BraidWord& f) { t_frames.emplace(c, f); }

void reset_frames() {
    t_frames.clear();
    t_chart_cache.clear();
}

BraidWord find_frame(const Word& c0) {
    Word c = normalize(c0);
    if (!is_curve(c)) throw DomainError("not an essential simple curve on S_{0,5}");
    const auto& rounds = round_frames();
    BraidWord applied;  // generators in the order applied
    Word cur = c;
    auto key = tangle_key(cur);
    while (!rounds.count(cur)) {
        // best sequence of up to three half twists
        Word best_w;
        BraidWord best_seq;
        auto best_key = key;
        std::vector<std::pair<Word, BraidWord>> layer{{cur, {}}};
        for (int depth = 0; depth < 3 && best_seq.empty(); ++depth) {
            std::vector<std::pair<Word, BraidWord>> next;
            for (auto& [w, seq] : layer)
                for (int g : {1, -1, 2, -2, 3, -3}) {
                    if (!seq.empty() && seq.back() == -g) continue;
                    Word n = normalize(apply_sigma(w, g));
                    BraidWord s2 = seq;
                    s2.push_back(g);
                    auto k = tangle_key(n);
                    if (k < best_key) { best_key = k; best_w = n; best_seq = s2; }
                    next.push_back({n, s2});
                }
            layer = std::move(next);
        }
        if (best_seq.empty()) throw StructureViolation("frame search stalled");
        cur = best_w;
        key = best_key;
        applied.insert(applied.end(), best_seq.begin(), best_seq.end());
    }
    BraidWord f;
    for (int g : applied) f.push_back(-g);
    return concat_braid(f, rounds.at(cur));
}

BraidWord frame_of(const Word& c0) {
    Word c = normalize(c0);
    auto it = t_frames.find(c);
    if (it != t_frames.end()) return it->second;
    BraidWord f = find_frame(c);
    register_frame(c, f);
    return f;
}

Word chart_curve(const Word& c0, const Slope& s) {
    Word c = normalize(c0);
    auto& cache = t_chart_cache;
    auto ck = std::make_pair(c, s);
    if (auto it = cache.find(ck); it != cache.end()) return it->second;
    const ChartType& T = chart_type(c);
    BraidWord F = frame_of(c);
    Decomposition D = decompose(s);
    BraidWord B;
    for (auto [op, k] : D.ops) {
        if (op == 0) B = concat_braid(B, braid_power({T.half}, k));
        else B = concat_braid(B, braid_power(T.full, k * T.eps));
    }
    const Word& base = D.base_is_inf ? T.ref10 : T.ref01;
    const BraidWord& base_frame = D.base_is_inf ? T.base10 : T.base01;
    Word w = normalize(apply_braid(apply_braid(base, B), F));
    register_frame(w, concat_braid(concat_braid(F, B), base_frame));
    if (cache.size() > 200000) cache.clear();
    cache.emplace(ck, w);
    return w;
}

bool in_x_side(const Word& c, const Word& x) {
    Word a = normalize(c), b = normalize(x);
    return a != b && intersection(a, b) == 0;
}

Slope chart_slope(const Word& c0, const Word& x0) {
    Word c = normalize(c0), x = normalize(x0);
    if (!in_x_side(c, x)) throw DomainError("curve does not lie in the four-holed-sphere side");
    const ChartType& T = chart_type(c);
    Word xs = normalize(apply_braid_inverse(x, frame_of(c)));
    return read_slope(T, xs);
}

ArcSlopes arc_slopes(const Word& c0, const Word& w0) {
    Word c = normalize(c0), w = normalize(w0);
    const int64_t icw = intersection(c, w);
    if (icw == 0) throw DomainError("curve does not cross the chart curve");
    using Vec = std::pair<int64_t, int64_t>;
    std::map<Slope, int64_t> fcache;
    auto f = [&](const Vec& v) {
        Slope s(v.first, v.second);
        auto it = fcache.find(s);
        if (it != fcache.end()) return it->second;
        int64_t val = intersection(w, chart_curve(c, s));
        fcache[s] = val;
        return val;
    };
    auto add = [](const Vec& a, const Vec& b) { return Vec{a.first + b.first, a.second + b.second}; };
    std::vector<Vec> verts;
    auto explore = [&](auto&& self, const Vec& u, const Vec& v, int depth) -> void {
        if (depth > 4000) throw CapExceeded("arc slope subdivision too deep");
        Vec m = add(u, v);
        if (f(m) == f(u) + f(v)) return;
        self(self, u, m, depth + 1);
        verts.push_back(m);
        self(self, m, v, depth + 1);
    };
    const std::array<Vec, 5> init{Vec{1, 0}, Vec{1, 1}, Vec{0, 1}, Vec{-1, 1}, Vec{-1, 0}};
    verts.push_back(init[0]);
    for (int i = 0; i < 4; ++i) {
        explore(explore, init[i], init[i + 1], 0);
        verts.push_back(init[i + 1]);
    }
    verts.pop_back();  // (-1,0) is (1,0) again
    const size_t n = verts.size();
    ArcSlopes out;
    int64_t total = 0;
    for (size_t i = 0; i < n; ++i) {
        Vec prev = i == 0 ? Vec{-verts[n - 1].first, -verts[n - 1].second} : verts[i - 1];
        Vec next = i + 1 == n ? Vec{-verts[0].first, -verts[0].second} : verts[i + 1];
        const Vec& v = verts[i];
        int64_t k = prev.first * next.second - prev.second * next.first;
        int64_t jump = f(prev) + f(next) - k * f(v);
        if (jump == 0) continue;
        if (jump < 0 || jump % 4 != 0) throw StructureViolation("arc slope multiplicity not integral");
        out.slopes.push_back(Slope(v.first, v.second));
        out.multiplicity.push_back(jump / 4);
        total += jump / 4;
    }
    if (2 * total != icw) {
        std::ostringstream os;
        os << "arc count " << total << " does not match i(w,c)/2 = " << icw / 2;
        throw StructureViolation(os.str());
    }
    return out;
}

std::vector<Word> projection_curves(const Word& c, const Word& w) {
    std::vector<Word> out;
    for (auto& s : arc_slopes(c, w).slopes) out.push_back(chart_curve(c, s));
    std::sort(out.begin(), out.end(), word_less);
    return out;
}

namespace {

struct DistMemo {
    std::map<std::pair<Word, Word>, int64_t> exact;
    std::map<std::pair<Word, Word>, int64_t> lower;
};

DistMemo& memo() {
    thread_local DistMemo m;
    if (m.exact.size() + m.lower.size() > 300000) { m.exact.clear(); m.lower.clear(); }
    return m;
}

std::vector<Slope> widen(const std::vector<Slope>& C) {
    std::set<Slope> out(C.begin(), C.end());
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = i + 1; j < C.size(); ++j) {
            if (!farey_adjacent(C[i], C[j])) continue;
            const Slope& a = C[i];
            const Slope& b = C[j];
            out.insert(Slope(a.p + b.p, a.q + b.q));
            out.insert(Slope(a.p - b.p, a.q - b.q));
        }
    return {out.begin(), out.end()};
}

struct Searcher {
    const SearchCaps& caps;
    SearchStats* stats;

    // First-vertex candidates for a geodesic of length d from u to w (d >= 3), as sorted curves.
    std::vector<Word> candidates(const Word& u, const Word& w, const std::vector<Slope>& E, int64_t d) {
        std::vector<Slope> C = E;
        for (int64_t i = 0; i < d - 2; ++i) C = widen(C);
        std::vector<Word> out;
        for (auto& s : C) {
            Word x = chart_curve(u, s);
            if (caps.max_intersection > 0 && intersection(x, w) > caps.max_intersection) {
                if (stats) stats->pruned = true;
                continue;
            }
            out.push_back(x);
        }
        if (stats) stats->candidates += int64_t(out.size());
        std::sort(out.begin(), out.end(), word_less);
        return out;
    }

    // d(u,w) if at most L, else L+1.
    int64_t bounded(const Word& u, const Word& w, int64_t L) {
        if (u == w) return 0;
        if (L <= 0) return 1;
        auto key = std::make_pair(u, w);
        DistMemo& M = memo();
        if (auto it = M.exact.find(key); it != M.exact.end()) return std::min(it->second, L + 1);
        int64_t lb = 1;
        if (auto it = M.lower.find(key); it != M.lower.end()) lb = it->second;
        if (lb > L) return L + 1;
        if (intersection(u, w) == 0) { M.exact[key] = 1; return 1; }
        if (L == 1) { M.lower[key] = 2; return 2; }
        std::vector<Slope> E = arc_slopes(u, w).slopes;
        if (E.size() == 1) { M.exact[key] = 2; return 2; }
        lb = std::max<int64_t>(lb, 3);
        for (int64_t d = lb; d <= L; ++d) {
            for (const Word& x : candidates(u, w, E, d)) {
                if (bounded(x, w, d - 1) <= d - 1) {
                    memo().exact[key] = d;
                    return d;
                }
            }
            memo().lower[key] = d + 1;
        }
        return L + 1;
    }
};

}  // namespace

int64_t distance(const Word& u0, const Word& w0, const SearchCaps& caps, SearchStats* stats) {
    Word u = normalize(u0), w = normalize(w0);
    Searcher S{caps, stats};
    int64_t d = S.bounded(u, w, caps.max_distance);
    if (d > caps.max_distance) {
        std::ostringstream os;
        os << "distance exceeds cap " << caps.max_distance;
        throw CapExceeded("curve complex distance beyond cap", os.str());
    }
    return d;
}

std::vector<Word> geodesic(const Word& u0, const Word& w0, const SearchCaps& caps, SearchStats* stats) {
    Word u = normalize(u0), w = normalize(w0);
    Searcher S{caps, stats};
    int64_t d = distance(u, w, caps, stats);
    std::vector<Word> path{u};
    Word cur = u;
    while (d > 0) {
        if (d == 1) { path.push_back(w); break; }
        std::vector<Slope> E = arc_slopes(cur, w).slopes;
        Word next;
        if (d == 2) {
            next = chart_curve(cur, E.at(0));
        } else {
            bool found = false;
            for (const Word& x : S.candidates(cur, w, E, d)) {
                if (S.bounded(x, w, d - 1) == d - 1) { next = x; found = true; break; }
            }
            if (!found) throw StructureViolation("geodesic reconstruction failed");
        }
        path.push_back(next);
        cur = next;
        --d;
    }
    return path;
}

}
