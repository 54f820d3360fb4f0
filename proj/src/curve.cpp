#include "hm/curve.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "hm/errors.hpp"
#include "hm/s05.hpp"

namespace hm {

Curve Curve::from_slope(const SurfaceSig& s, const Slope& sl) {
    if (!s.farey()) throw SurfaceMismatch("slope coordinates need a surface with xi = 4");
    return Curve{s, {sl.p, sl.q}};
}

Curve Curve::from_word(const SurfaceSig& s, const Word& w) {
    if (!s.is_s05()) throw SurfaceMismatch("word coordinates are used on S_{0,5} only");
    Word n = s05::normalize(w);
    if (!s05::is_curve(n)) throw DomainError("word is not an essential simple closed curve");
    return Curve{s, std::vector<int64_t>(n.begin(), n.end())};
}

Slope Curve::slope() const {
    if (coords.size() != 2 || !surface.farey()) throw SurfaceMismatch("curve has no slope coordinates");
    return Slope(coords[0], coords[1]);
}

Word Curve::word() const {
    if (!surface.is_s05()) throw SurfaceMismatch("curve has no word coordinates");
    return Word(coords.begin(), coords.end());
}

std::string Curve::str() const {
    if (surface.farey()) return slope().str();
    std::ostringstream os;
    os << "w";
    for (size_t i = 0; i < coords.size(); ++i) os << (i ? "," : ":") << coords[i];
    return os.str();
}

bool operator<(const Curve& a, const Curve& b) {
    if (a.surface != b.surface) return a.surface < b.surface;
    if (a.coords.size() != b.coords.size()) return a.coords.size() < b.coords.size();
    return a.coords < b.coords;
}

int64_t intersection_number(const Curve& a, const Curve& b) {
    if (a.surface != b.surface) throw SurfaceMismatch("curves live on different surfaces");
    if (a.surface.is_s11()) return std::llabs(det(a.slope(), b.slope()));
    if (a.surface.is_s04()) return 2 * std::llabs(det(a.slope(), b.slope()));
    if (a.surface.is_s05()) return s05::intersection(a.word(), b.word());
    throw CapabilityError("intersection numbers are provided on S_{1,1}, S_{0,4}, S_{0,5}");
}

bool disjoint(const Curve& a, const Curve& b) { return intersection_number(a, b) == 0; }

MultiCurve make_multicurve(std::vector<Curve> cs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    for (size_t i = 0; i < cs.size(); ++i)
        for (size_t j = i + 1; j < cs.size(); ++j)
            if (!disjoint(cs[i], cs[j])) throw DomainError("multicurve components intersect");
    return cs;
}

std::string str(const MultiCurve& m) {
    std::string s = "{";
    for (size_t i = 0; i < m.size(); ++i) s += (i ? " " : "") + m[i].str();
    return s + "}";
}

uint32_t all_punctures(const SurfaceSig& s) {
    if (s.is_s11()) return 0x1u;
    if (s.is_s04()) return 0xFu;
    if (s.is_s05()) return 0x1Fu;
    return (1u << std::min(s.boundary, 31)) - 1;
}

namespace {

int s04_partner(const Slope& s) {
    int qo = int(std::llabs(s.q) % 2), po = int(std::llabs(s.p) % 2);
    if (qo == 1 && po == 0) return 2;
    if (qo == 0 && po == 1) return 3;
    return 4;
}

}  // namespace

std::pair<uint32_t, uint32_t> sides(const Curve& c) {
    if (c.surface.is_s04()) {
        uint32_t m = 0x1u | (1u << (s04_partner(c.slope()) - 1));
        return {m, 0xFu & ~m};
    }
    if (c.surface.is_s05()) return {s05::pants_mask(c.word()), s05::x_mask(c.word())};
    if (c.surface.is_s11()) return {0x1u, 0x1u};
    throw CapabilityError("sides are provided on S_{1,1}, S_{0,4}, S_{0,5}");
}

int SubsurfaceId::xi() const {
    if (annulus) return 2;
    if (whole()) return surface.xi();
    if (surface.is_s11()) return 3;
    // planar pieces: every boundary curve and puncture is a boundary component
    return int(boundary.size()) + __builtin_popcount(mask);
}

bool operator<(const SubsurfaceId& a, const SubsurfaceId& b) {
    if (a.surface != b.surface) return a.surface < b.surface;
    if (a.annulus != b.annulus) return a.annulus;
    if (a.boundary.size() != b.boundary.size()) return a.boundary.size() < b.boundary.size();
    if (a.boundary != b.boundary) return std::lexicographical_compare(a.boundary.begin(), a.boundary.end(),
                                                                      b.boundary.begin(), b.boundary.end());
    return a.mask < b.mask;
}

int SubsurfaceId::component_index() const {
    if (annulus || whole()) return 0;
    // pieces of S minus the boundary multicurve, ordered by puncture mask
    auto pieces = component_domains(whole_surface(surface), boundary);
    std::vector<uint32_t> masks;
    for (auto& p : pieces)
        if (!p.annulus && p.boundary.size() >= 1) masks.push_back(p.mask);
    std::sort(masks.begin(), masks.end());
    for (size_t i = 0; i < masks.size(); ++i) if (masks[i] == mask) return int(i);
    return 0;
}

std::string SubsurfaceId::str() const {
    std::ostringstream os;
    if (annulus) { os << "A(" << core().str() << ")"; return os.str(); }
    if (whole()) { os << surface.name(); return os.str(); }
    os << "Y[" << hm::str(boundary) << ";";
    for (int k = 0; k < 5; ++k) if (mask & (1u << k)) os << (k + 1);
    os << "]";
    return os.str();
}

SubsurfaceId whole_surface(const SurfaceSig& s) { return SubsurfaceId{s, false, {}, all_punctures(s)}; }

SubsurfaceId annulus_of(const Curve& c) { return SubsurfaceId{c.surface, true, {c}, 0}; }

bool contained_in(const Curve& c, const SubsurfaceId& Y) {
    if (c.surface != Y.surface) throw SurfaceMismatch("curve and subsurface on different surfaces");
    if (Y.annulus) return false;
    if (Y.whole()) return true;
    if (Y.xi() != 4) return false;  // pieces of complexity 3 carry no essential curves
    // the only ξ=4 proper pieces are the four-holed-sphere sides of single curves on S_{0,5}
    return s05::in_x_side(Y.core().word(), c.word());
}

bool meets_essentially(const Curve& c, const SubsurfaceId& Y) {
    if (Y.annulus) return intersection_number(c, Y.core()) > 0;
    if (contained_in(c, Y)) return true;
    for (auto& b : Y.boundary) if (intersection_number(c, b) > 0) return true;
    return false;
}

bool is_subsurface_of(const SubsurfaceId& Y, const SubsurfaceId& W) {
    if (W.whole()) return true;
    if (Y == W) return true;
    if (W.annulus) return false;
    if (Y.whole()) return false;
    for (auto& b : Y.boundary) {
        bool inside = contained_in(b, W) || std::find(W.boundary.begin(), W.boundary.end(), b) != W.boundary.end();
        if (!inside) return false;
    }
    if (Y.annulus) return contained_in(Y.core(), W);
    return (Y.mask & ~W.mask) == 0;
}

std::vector<SubsurfaceId> component_domains(const SubsurfaceId& W, const MultiCurve& v) {
    const SurfaceSig& S = W.surface;
    require_supported(S);
    if (W.xi() < 4) throw DomainError("component domains need a domain of complexity at least 4");
    for (auto& c : v)
        if (!contained_in(c, W)) throw DomainError("simplex is not essential in the domain");
    std::vector<SubsurfaceId> out;
    for (auto& c : v) out.push_back(annulus_of(c));
    if (S.is_s11()) {
        out.push_back(SubsurfaceId{S, false, v, 0x1u});
    } else if (S.is_s04()) {
        auto [a, b] = sides(v.at(0));
        out.push_back(SubsurfaceId{S, false, v, a});
        out.push_back(SubsurfaceId{S, false, v, b});
    } else if (W.whole()) {
        if (v.size() == 1) {
            auto [p, x] = sides(v[0]);
            out.push_back(SubsurfaceId{S, false, v, p});
            out.push_back(SubsurfaceId{S, false, v, x});
        } else if (v.size() == 2) {
            uint32_t pa = sides(v[0]).first, pb = sides(v[1]).first;
            out.push_back(SubsurfaceId{S, false, {v[0]}, pa});
            out.push_back(SubsurfaceId{S, false, {v[1]}, pb});
            out.push_back(SubsurfaceId{S, false, v, 0x1Fu & ~(pa | pb)});
        } else {
            throw DomainError("simplex too large");
        }
    } else {
        // W is the four-holed-sphere side of its boundary curve c; v = {s}
        const Curve& c = W.core();
        const Curve& s = v.at(0);
        uint32_t ps = sides(s).first;
        out.push_back(SubsurfaceId{S, false, {s}, ps});
        out.push_back(SubsurfaceId{S, false, make_multicurve({c, s}), W.mask & ~ps});
    }
    std::sort(out.begin(), out.end());
    return out;
}

SubsurfaceId fill(const MultiCurve& a, const MultiCurve& b) {
    std::vector<Curve> all = a;
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all.empty()) throw DomainError("nothing to fill");
    const SurfaceSig& S = all[0].surface;
    // connectivity of the union
    std::vector<int> comp(all.size());
    for (size_t i = 0; i < all.size(); ++i) comp[i] = int(i);
    auto find = [&](int x) { while (comp[x] != x) x = comp[x] = comp[comp[x]]; return x; };
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j)
            if (!disjoint(all[i], all[j])) comp[find(int(i))] = find(int(j));
    for (size_t i = 1; i < all.size(); ++i)
        if (find(int(i)) != find(0)) throw DomainError("union is disconnected; fill each component separately");
    if (all.size() == 1) return annulus_of(all[0]);
    if (!S.is_s05()) return whole_surface(S);
    // a curve disjoint from all of them bounds the four-holed sphere they fill
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) {
            auto E = s05::projection_curves(all[i].word(), all[j].word());
            if (E.size() != 1) continue;
            Curve c = Curve::from_word(S, E[0]);
            bool ok = true;
            for (auto& x : all) if (!disjoint(x, c) || x == c) ok = false;
            if (ok) return SubsurfaceId{S, false, {c}, sides(c).second};
        }
    return whole_surface(S);
}

MultiCurve relative_boundary(const SubsurfaceId& F, const SubsurfaceId& Y) {
    MultiCurve out;
    if (F.whole()) return out;
    if (F.annulus) { if (!Y.annulus) out.push_back(F.core()); return out; }
    for (auto& b : F.boundary)
        if (std::find(Y.boundary.begin(), Y.boundary.end(), b) == Y.boundary.end()) out.push_back(b);
    return out;
}

Slope domain_slope(const SubsurfaceId& Y, const Curve& c) {
    if (Y.xi() != 4 || Y.annulus) throw DomainError("Farey chart needs a domain of complexity 4");
    if (Y.whole()) return c.slope();
    return s05::chart_slope(Y.core().word(), c.word());
}

Curve domain_curve(const SubsurfaceId& Y, const Slope& s) {
    if (Y.xi() != 4 || Y.annulus) throw DomainError("Farey chart needs a domain of complexity 4");
    if (Y.whole()) return Curve::from_slope(Y.surface, s);
    return Curve{Y.surface, [&] {
                     Word w = s05::chart_curve(Y.core().word(), s);
                     return std::vector<int64_t>(w.begin(), w.end());
                 }()};
}

Curve psi(const ArcVertex& a) {
    const SubsurfaceId& Y = a.domain;
    if (Y.annulus || Y.xi() != 4) throw CapabilityError("psi is provided on domains of complexity 4");
    Curve c = domain_curve(Y, a.slope);
    if (!Y.surface.is_s11()) {
        // both ends must lie on one side of the curve (label 0 is the boundary of a proper piece)
        uint32_t m = sides(c).first;
        if (!Y.whole()) {
            // in X_c the pants side of the curve holds two punctures; the other side holds the boundary
            uint32_t other = Y.mask & ~m;
            bool a_small = a.end_a != 0 && (m & (1u << (a.end_a - 1)));
            bool b_small = a.end_b != 0 && (m & (1u << (a.end_b - 1)));
            bool a_big = a.end_a == 0 || (other & (1u << (a.end_a - 1)));
            bool b_big = a.end_b == 0 || (other & (1u << (a.end_b - 1)));
            if (!((a_small && b_small) || (a_big && b_big))) throw DomainError("arc ends on both sides of its psi-curve");
        } else {
            if (a.end_a < 1 || a.end_b < 1) throw DomainError("arc ends must be punctures");
            bool sa = m & (1u << (a.end_a - 1)), sb = m & (1u << (a.end_b - 1));
            if (sa != sb) throw DomainError("arc ends on both sides of its psi-curve");
        }
    }
    return c;
}

namespace {

std::shared_ptr<const Axis> axis_for(const Word& alpha) {
    thread_local std::map<Word, std::shared_ptr<const Axis>> cache;
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
    auto ax = std::make_shared<const Axis>(Axis{&s05::rose(), alpha});
    if (cache.size() > 50000) cache.clear();
    cache[alpha] = ax;
    return ax;
}

}  // namespace

std::shared_ptr<const Axis> core_axis(const Curve& core) {
    if (!core.surface.is_s05()) throw DomainError("tree ends live on S_{0,5} annuli");
    return axis_for(core.word());
}

std::vector<AnnulusArc> annular_arcs(const Curve& core, const Curve& x) {
    if (core.surface != x.surface) throw SurfaceMismatch("curves live on different surfaces");
    const SurfaceSig& S = core.surface;
    if (intersection_number(core, x) == 0) return {};
    if (S.farey()) {
        Mat2 M = to_infinity(core.slope());
        Slope b = M.apply(x.slope());
        Rational y(b.p, b.q);
        if (S.is_s04()) y = y / Rational(2);
        return {AnnulusArc{Rational(0), y}};
    }
    auto axis = axis_for(core.word());
    std::vector<AnnulusArc> out;
    for (auto& l : crossing_lifts(axis, x.word())) out.push_back(AnnulusArc{l.left, l.right});
    std::sort(out.begin(), out.end(), arc_less);
    return out;
}

AnnulusArc annular_arc(const Curve& core, const Curve& x) {
    auto arcs = annular_arcs(core, x);
    if (arcs.empty()) throw EmptyProjection("curve misses the annulus");
    return arcs.front();
}

}
