#include "hm/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "hm/errors.hpp"

namespace hm {

namespace {

bool meets(const MultiCurve& v, const SubsurfaceId& Y) {
    return std::any_of(v.begin(), v.end(), [&](const Curve& c) { return meets_essentially(c, Y); });
}

bool properly_inside(const SubsurfaceId& a, const SubsurfaceId& b) { return a != b && is_subsurface_of(a, b); }

int last_index(const TightGeodesic& g) { return int(g.size()) - 1; }

// Saturates from the bottom pair, keeping old pairs that are still reachable and not erased.
Slice rebuild(const Hierarchy& H, const Slice& old, int h, int vnew, const std::set<int>& erased, bool fresh_first) {
    Slice out;
    auto choose = [&](int k) {
        if (k == h) return vnew;
        auto it = old.pairs.find(k);
        if (it != old.pairs.end() && !erased.count(k)) return it->second;
        return fresh_first ? 0 : last_index(H.geodesics[k]);
    };
    out.pairs[0] = choose(0);
    std::deque<int> q{0};
    while (!q.empty()) {
        int g = q.front();
        q.pop_front();
        const auto& geo = H.geodesics[g];
        if (geo.annular()) continue;
        for (auto& Y : component_domains(geo.domain, geo.simplices[out.pairs[g]])) {
            int k = H.find(Y);
            if (k < 0 || out.pairs.count(k)) continue;
            out.pairs[k] = choose(k);
            q.push_back(k);
        }
    }
    return out;
}

const MultiCurve* simplex_at(const TightGeodesic& g, int j) {
    if (g.annular() || j < 0 || j >= int(g.simplices.size())) return nullptr;
    return &g.simplices[j];
}

Slice move(const Hierarchy& H, const Slice& s, int h, bool forward) {
    if (forward ? !forward_movable(H, s, h) : !backward_movable(H, s, h))
        throw NotMovable("pair on " + H.geodesics.at(h).domain.str() + " is not movable");
    const auto& g = H.geodesics[h];
    int j = s.pairs.at(h);
    int jn = forward ? j + 1 : j - 1;
    std::set<int> erased;
    if (const MultiCurve* vn = simplex_at(g, jn)) {
        for (auto& [k, w] : s.pairs)
            if (k != h && properly_inside(H.geodesics[k].domain, g.domain) && meets(*vn, H.geodesics[k].domain))
                erased.insert(k);
    }
    Slice out = rebuild(H, s, h, jn, erased, forward);
    // the refilled pairs sit at the start (end) of their geodesics wherever the old simplex meets them
    if (const MultiCurve* vo = simplex_at(g, j)) {
        for (auto& [k, w] : out.pairs) {
            if (k == h || !properly_inside(H.geodesics[k].domain, g.domain) || !meets(*vo, H.geodesics[k].domain)) continue;
            if (w != (forward ? 0 : last_index(H.geodesics[k])))
                throw StructureViolation("elementary move leaves a pair in " + H.geodesics[k].domain.str() + " mid-way");
        }
    }
    return out;
}

}  // namespace

Slice initial_slice(const Hierarchy& H) { return rebuild(H, Slice{}, -1, 0, {}, true); }
Slice terminal_slice(const Hierarchy& H) { return rebuild(H, Slice{}, -1, 0, {}, false); }

bool is_saturated(const Hierarchy& H, const Slice& s) {
    for (auto& [g, j] : s.pairs) {
        const auto& geo = H.geodesics.at(g);
        if (geo.annular()) continue;
        for (auto& Y : component_domains(geo.domain, geo.simplices.at(j))) {
            int k = H.find(Y);
            if (k >= 0 && !s.pairs.count(k)) return false;
        }
    }
    return true;
}

bool forward_movable(const Hierarchy& H, const Slice& s, int h) {
    const auto& g = H.geodesics.at(h);
    int j = s.pairs.at(h);
    if (j >= last_index(g)) return false;
    const MultiCurve* vn = simplex_at(g, j + 1);
    if (!vn) return true;
    for (auto& [k, w] : s.pairs) {
        if (k == h) continue;
        const auto& D = H.geodesics[k].domain;
        if (properly_inside(D, g.domain) && meets(*vn, D) && w != last_index(H.geodesics[k])) return false;
    }
    return true;
}

bool backward_movable(const Hierarchy& H, const Slice& s, int h) {
    const auto& g = H.geodesics.at(h);
    int j = s.pairs.at(h);
    if (j <= 0) return false;
    const MultiCurve* vp = simplex_at(g, j - 1);
    if (!vp) return true;
    for (auto& [k, w] : s.pairs) {
        if (k == h) continue;
        const auto& D = H.geodesics[k].domain;
        if (properly_inside(D, g.domain) && meets(*vp, D) && w != 0) return false;
    }
    return true;
}

Slice advance(const Hierarchy& H, const Slice& s, int h) { return move(H, s, h, true); }
Slice retreat(const Hierarchy& H, const Slice& s, int h) { return move(H, s, h, false); }

Resolution resolve(const Hierarchy& H) {
    Resolution R;
    R.slices.push_back(initial_slice(H));
    const int64_t limit = total_length(H);
    for (;;) {
        const Slice& cur = R.slices.back();
        int best = -1;
        for (auto& [k, w] : cur.pairs) {
            if (!forward_movable(H, cur, k)) continue;
            if (best < 0 || H.geodesics[k].domain < H.geodesics[best].domain) best = k;
        }
        if (best < 0) break;
        if (int64_t(R.moves.size()) >= limit) throw StructureViolation("resolution does not terminate within the hierarchy length");
        R.moves.push_back(Move{best, cur.pairs.at(best)});
        Slice next = advance(H, cur, best);
        R.slices.push_back(std::move(next));
    }
    return R;
}

Marking slice_marking(const Hierarchy& H, const Slice& s) {
    Marking m;
    m.surface = H.surface;
    std::vector<Curve> base;
    for (auto& [k, w] : s.pairs) {
        const auto& g = H.geodesics[k];
        if (!g.annular()) base.insert(base.end(), g.simplices[w].begin(), g.simplices[w].end());
    }
    m.base = make_multicurve(base);
    for (auto& [k, w] : s.pairs) {
        const auto& g = H.geodesics[k];
        if (g.annular()) m.tarc.emplace(g.domain.core(), g.arcs[w]);
    }
    return m;
}

ResolutionReport audit_resolution(const Hierarchy& H, const Resolution& R) {
    ResolutionReport r;
    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        if (r.failures.size() < 50) r.failures.push_back(msg);
    };
    if (int64_t(R.moves.size()) != total_length(H) || R.slices.size() != R.moves.size() + 1)
        fail(r.move_count, "resolution length " + std::to_string(R.moves.size()) + " differs from the hierarchy length " +
                               std::to_string(total_length(H)));
    if (R.slices.empty() || !(R.slices.back() == terminal_slice(H))) fail(r.terminal, "resolution does not end at the terminal slice");

    std::set<std::pair<int, int>> seen;
    for (auto& s : R.slices)
        for (auto& [k, w] : s.pairs) seen.insert({k, w});
    for (int k = 0; k < int(H.geodesics.size()); ++k)
        for (int j = 0; j < int(H.geodesics[k].size()); ++j)
            if (!seen.count({k, j})) fail(r.sweep, "pair (" + H.geodesics[k].domain.str() + ", " + std::to_string(j) + ") never appears");

    std::map<Edge4, int> count;
    for (auto& mv : R.moves) {
        const auto& g = H.geodesics[mv.geodesic];
        if (!g.annular() && g.domain.xi() == 4) count[Edge4{mv.geodesic, mv.from}]++;
    }
    for (auto& e : four_edges(H))
        if (count[e] != 1) fail(r.edges_once, "4-edge " + std::to_string(e.index) + " of " + H.geodesics[e.geodesic].domain.str() +
                                                  " advanced " + std::to_string(count[e]) + " times");

    std::vector<MultiCurve> bases;
    for (auto& s : R.slices) {
        bases.push_back(slice_marking(H, s).base);
        if (!is_pants_decomposition(H.surface, bases.back())) fail(r.pants, "slice marking base is not a pants decomposition");
    }
    for (auto& v : vertices(H)) {
        std::vector<int> J;
        for (int i = 0; i < int(bases.size()); ++i)
            if (std::find(bases[i].begin(), bases[i].end(), v) != bases[i].end()) J.push_back(i);
        for (size_t i = 1; i < J.size(); ++i)
            if (J[i] != J[i - 1] + 1) { fail(r.intervals, "J(" + v.str() + ") is not an interval"); break; }
        if (J.empty()) fail(r.intervals, "J(" + v.str() + ") is empty");
    }
    return r;
}

namespace {

Slope shear(const Slope& a, const Slope& t, int64_t k) {
    int64_t d = det(a, t);
    return Slope(t.p + k * d * a.p, t.q + k * d * a.q);
}

const Curve* other_base(const Marking& m, const Curve& a) {
    for (auto& b : m.base)
        if (b != a) return &b;
    return nullptr;
}

}  // namespace

Marking clean_marking_moves(const Marking& m, const MarkingMove& mv) {
    if (!is_maximal(m) || !is_clean(m)) throw InvalidMove("moves act on maximal clean markings");
    auto it = m.tbar.find(mv.base);
    if (it == m.tbar.end()) throw InvalidMove(mv.base.str() + " is not a base curve");
    const Curve& a = mv.base;
    const Curve& t = it->second;
    SubsurfaceId Y = fill({a}, {t});
    bool torus_type = Y.surface.is_s11();
    Marking out = m;
    if (mv.kind != MoveKind::Flip) {
        if (mv.power == 0) throw InvalidMove("zero twist");
        if (mv.kind == MoveKind::HalfTwist && torus_type) throw InvalidMove("half twists need a four-holed sphere");
        int64_t k = mv.power * ((mv.kind == MoveKind::Twist && !torus_type) ? 2 : 1);
        out.tbar[a] = domain_curve(Y, shear(domain_slope(Y, a), domain_slope(Y, t), k));
        return out;
    }
    out.tbar.clear();
    out.base = make_multicurve([&] {
        std::vector<Curve> b;
        for (auto& c : m.base) b.push_back(c == a ? t : c);
        return b;
    }());
    out.tbar[t] = a;
    const Curve* beta = other_base(m, a);
    if (!beta) return out;
    // surgery: the other transversal moves into the side of the new curve, twisting as little as possible
    const Curve& tb = m.tbar.at(*beta);
    SubsurfaceId X{m.surface, false, {t}, sides(t).second};
    Slope b = domain_slope(X, *beta);
    Mat2 back = to_infinity(b).inverse();
    AnnulusArc ref = annular_arc(*beta, tb);
    auto candidate = [&](int64_t n) { return domain_curve(X, back.apply(Slope(n, 1))); };
    auto tw = [&](int64_t n) { return twist_number(annular_arc(*beta, candidate(n)), ref).value(); };
    double t0 = tw(0), t1 = tw(1);
    int64_t centre = 0;
    if (t1 != t0) centre = int64_t(std::llround(-t0 / (t1 - t0)));
    std::optional<Curve> best;
    double best_tw = 0;
    for (int64_t n = centre - 3; n <= centre + 3; ++n) {
        Curve c = candidate(n);
        double x = std::abs(tw(n));
        if (!best || x < best_tw || (x == best_tw && c < *best)) { best = c; best_tw = x; }
    }
    out.tbar[*beta] = *best;
    return out;
}

std::vector<MarkingMove> elementary_moves(const Marking& m) {
    std::vector<MarkingMove> out;
    for (auto& [a, t] : m.tbar) {
        bool torus_type = m.surface.is_s11();
        MoveKind k = torus_type ? MoveKind::Twist : MoveKind::HalfTwist;
        out.push_back(MarkingMove{k, a, 1});
        out.push_back(MarkingMove{k, a, -1});
        out.push_back(MarkingMove{MoveKind::Flip, a, 1});
    }
    return out;
}

int64_t d_el_estimate(const Marking& mu, const Marking& nu, double K, const SearchCaps& caps) {
    if (same_marking(mu, nu)) return 0;
    Hierarchy H = build_hierarchy(mu, nu, caps);
    std::set<SubsurfaceId> Ws{whole_surface(mu.surface)};
    for (auto& g : H.geodesics) Ws.insert(g.domain);
    for (auto* m : {&mu, &nu})
        for (auto& c : m->base) Ws.insert(annulus_of(c));
    double sum = 0;
    for (auto& W : Ws) {
        if (!W.annulus && W.xi() == 3) continue;
        try {
            sum += threshold(double(d_Y(mu, nu, W, caps)), K);
        } catch (const EmptyProjection&) {
        }
    }
    return int64_t(sum);
}

}
