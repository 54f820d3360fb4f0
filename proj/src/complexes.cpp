#include "hm/complexes.hpp"

#include <algorithm>
#include <sstream>

#include "hm/errors.hpp"

namespace hm {

namespace {

std::vector<AnnulusArc> sorted_arcs(std::vector<AnnulusArc> arcs) {
    std::sort(arcs.begin(), arcs.end(), arc_less);
    std::vector<AnnulusArc> out;
    for (auto& a : arcs)
        if (out.empty() || !arcs_equal(out.back(), a)) out.push_back(a);
    return out;
}

void sort_curves(std::vector<Curve>& cs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
}

}  // namespace

Projection project(const Curve& x, const SubsurfaceId& Y) {
    if (x.surface != Y.surface) throw SurfaceMismatch("curve and subsurface live on different surfaces");
    Projection out;
    if (Y.annulus) {
        out.arcs = annular_arcs(Y.core(), x);
        return out;
    }
    if (Y.whole()) {
        out.curves = {x};
        return out;
    }
    if (Y.xi() == 3) {
        if (meets_essentially(x, Y)) throw CapabilityError("arc projections to three-holed spheres are not provided");
        return out;
    }
    if (contained_in(x, Y)) {
        out.curves = {x};
        return out;
    }
    const Curve& c = Y.core();
    if (intersection_number(c, x) == 0) return out;
    for (auto& w : s05::projection_curves(c.word(), x.word())) out.curves.push_back(Curve::from_word(Y.surface, w));
    sort_curves(out.curves);
    return out;
}

Projection project(const MultiCurve& x, const SubsurfaceId& Y) {
    Projection out;
    for (auto& c : x) {
        auto p = project(c, Y);
        out.curves.insert(out.curves.end(), p.curves.begin(), p.curves.end());
        out.arcs.insert(out.arcs.end(), p.arcs.begin(), p.arcs.end());
    }
    sort_curves(out.curves);
    out.arcs = sorted_arcs(std::move(out.arcs));
    return out;
}

Projection project(const Marking& m, const SubsurfaceId& Y) {
    if (m.annular()) {
        Projection out;
        if (Y.annulus && Y.core() == *m.core) out.arcs = m.arcs;
        return out;
    }
    if (Y.annulus) {
        Projection out;
        out.arcs = restrict_marking(m, Y).arcs;
        return out;
    }
    return project(m.base, Y);
}

int64_t curve_distance(const Curve& a, const Curve& b, const SubsurfaceId& Y, const SearchCaps& caps) {
    if (Y.annulus || Y.xi() == 3) throw CapabilityError("curve distance needs a domain of complexity at least 4");
    if (a == b) return 0;
    if (Y.xi() == 4) return farey_distance(domain_slope(Y, a), domain_slope(Y, b));
    if (Y.surface.is_s05() && Y.whole()) return s05::distance(a.word(), b.word(), caps);
    throw CapabilityError("curve distances are certified only up to complexity 5");
}

int64_t projection_distance(const Projection& a, const Projection& b, const SubsurfaceId& Y,
                            const SearchCaps& caps) {
    if (a.empty() || b.empty()) throw EmptyProjection("projection to " + Y.str() + " is empty");
    if (Y.annulus) return annulus_distance(a.arcs.front(), b.arcs.front());
    return curve_distance(a.curves.front(), b.curves.front(), Y, caps);
}

TightReport validate_tight(const std::vector<MultiCurve>& seq, const SubsurfaceId& Y, const SearchCaps& caps) {
    TightReport r;
    auto fail1 = [&](int i, std::string msg) {
        if (r.clause1) { r.clause1 = false; r.first_bad1 = i; r.message = std::move(msg); }
    };
    auto fail2 = [&](int i, std::string msg) {
        if (r.clause2) { r.clause2 = false; r.first_bad2 = i; if (r.message.empty()) r.message = std::move(msg); }
    };
    if (Y.annulus) throw DomainError("use validate_tight_arcs for annular domains");
    if (seq.empty()) { fail1(0, "empty sequence"); return r; }
    const int n = int(seq.size());
    for (int i = 0; i < n; ++i) {
        if (seq[i].empty()) { fail1(i, "empty simplex"); return r; }
        for (auto& c : seq[i])
            if (!contained_in(c, Y)) { fail1(i, "simplex not supported in " + Y.str()); return r; }
        if (Y.xi() == 4 && seq[i].size() != 1) { fail1(i, "complexity-4 simplices are single vertices"); return r; }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (auto& a : seq[i])
                for (auto& b : seq[j]) {
                    int64_t d = curve_distance(a, b, Y, caps);
                    if (d != j - i) {
                        std::ostringstream os;
                        os << "d(v" << i << ",v" << j << ") = " << d;
                        fail1(i, os.str());
                    }
                }
    if (Y.xi() == 4) return r;
    for (int i = 1; i + 1 < n; ++i) {
        MultiCurve bd;
        try {
            bd = relative_boundary(fill(seq[i - 1], seq[i + 1]), Y);
        } catch (const DomainError&) {
            fail2(i, "neighbours do not fill a connected surface");
            continue;
        }
        if (make_multicurve(bd) != seq[i]) fail2(i, "v" + std::to_string(i) + " is not the relative boundary of its neighbours' fill");
    }
    return r;
}

TightReport validate_tight_arcs(const std::vector<AnnulusArc>& seq) {
    TightReport r;
    if (seq.empty()) {
        r.clause1 = false;
        r.first_bad1 = 0;
        r.message = "empty sequence";
        return r;
    }
    const int n = int(seq.size());
    for (int i = 0; i < n && r.clause1; ++i)
        for (int j = i + 1; j < n; ++j)
            if (annulus_distance(seq[i], seq[j]) != j - i) {
                r.clause1 = false;
                r.first_bad1 = i;
                r.message = "arc distances do not match positions";
                break;
            }
    return r;
}

TightGeodesic tight_geodesic_search(const MultiCurve& u, const MultiCurve& w, const SubsurfaceId& Y,
                                    const SearchCaps& caps) {
    if (Y.annulus || Y.xi() < 4) throw DomainError("tight geodesic search needs a domain of complexity at least 4");
    std::vector<Curve> us, ws;
    for (auto& c : u) if (contained_in(c, Y)) us.push_back(c);
    for (auto& c : w) if (contained_in(c, Y)) ws.push_back(c);
    if (us.empty() || ws.empty()) throw DomainError("endpoints have no vertex in " + Y.str());
    sort_curves(us);
    sort_curves(ws);

    TightGeodesic g;
    g.domain = Y;
    std::vector<Curve> common;
    std::set_intersection(us.begin(), us.end(), ws.begin(), ws.end(), std::back_inserter(common));
    if (!common.empty()) {
        g.simplices = {make_multicurve(common)};
        return g;
    }

    if (Y.xi() == 4) {
        std::optional<std::vector<Slope>> best;
        int64_t bestd = 0;
        for (auto& a : us)
            for (auto& b : ws) {
                Slope sa = domain_slope(Y, a), sb = domain_slope(Y, b);
                int64_t d = farey_distance(sa, sb);
                if (best && d > bestd) continue;
                auto path = farey_geodesic_min(sa, sb, std::less<Slope>());
                if (!best || d < bestd || path < *best) { best = path; bestd = d; }
            }
        for (auto& s : *best) g.simplices.push_back({domain_curve(Y, s)});
        return g;
    }

    if (!(Y.surface.is_s05() && Y.whole())) throw CapabilityError("geodesic search is certified only up to complexity 5");
    int64_t bestd = -1;
    std::vector<Word> best;
    auto seq_less = [](const std::vector<Word>& a, const std::vector<Word>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), s05::word_less);
    };
    for (auto& a : us)
        for (auto& b : ws) {
            int64_t d = s05::distance(a.word(), b.word(), caps);
            if (bestd >= 0 && d > bestd) continue;
            auto path = s05::geodesic(a.word(), b.word(), caps);
            if (bestd < 0 || d < bestd || seq_less(path, best)) { best = path; bestd = d; }
        }
    for (auto& x : best) g.simplices.push_back({Curve::from_word(Y.surface, x)});
    // tighten interior simplices
    for (size_t i = 1; i + 1 < g.simplices.size(); ++i) {
        auto bd = make_multicurve(relative_boundary(fill(g.simplices[i - 1], g.simplices[i + 1]), Y));
        if (bd.empty()) throw StructureViolation("tightening produced an empty simplex");
        g.simplices[i] = bd;
    }
    auto rep = validate_tight(g.simplices, Y, caps);
    if (!rep.ok()) throw StructureViolation("tightened path is not a tight geodesic: " + rep.message);
    return g;
}

int64_t bgi_audit(const TightGeodesic& g, const SubsurfaceId& W, const SearchCaps& caps) {
    if (g.annular()) throw DomainError("annular geodesics have no proper subdomains");
    std::vector<Projection> ps;
    for (auto& v : g.simplices)
        for (auto& c : v) {
            auto p = project(c, W);
            if (p.empty()) throw EmptyProjection(c.str() + " misses " + W.str());
            ps.push_back(std::move(p));
        }
    int64_t diam = 0;
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = i + 1; j < ps.size(); ++j) diam = std::max(diam, projection_distance(ps[i], ps[j], W, caps));
    return diam;
}

}
