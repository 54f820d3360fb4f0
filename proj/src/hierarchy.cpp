#include "hm/hierarchy.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hm/errors.hpp"

namespace hm {

namespace {

Marking pred_marking(const TightGeodesic& g, int j) {
    if (j == 0) return g.I;
    return simplex_marking(g.domain.surface, g.simplices[j - 1]);
}

Marking succ_marking(const TightGeodesic& g, int j) {
    if (j + 1 == int(g.simplices.size())) return g.T;
    return simplex_marking(g.domain.surface, g.simplices[j + 1]);
}

int site_index(const TightGeodesic& g, const SubsurfaceId& Y) {
    if (g.annular()) return -1;
    for (int j = 0; j < int(g.simplices.size()); ++j) {
        auto doms = component_domains(g.domain, g.simplices[j]);
        if (std::find(doms.begin(), doms.end(), Y) != doms.end()) return j;
    }
    return -1;
}

struct PendingOrder {
    bool operator()(const SubsurfaceId& a, const SubsurfaceId& b) const {
        if (a.xi() != b.xi()) return a.xi() > b.xi();
        return a < b;
    }
};

bool contains_arc(const std::vector<AnnulusArc>& arcs, const AnnulusArc& a) {
    return std::any_of(arcs.begin(), arcs.end(), [&](const AnnulusArc& b) { return arcs_equal(a, b); });
}

bool crosses_any(const Curve& v, const MultiCurve& m) {
    return std::any_of(m.begin(), m.end(), [&](const Curve& c) { return intersection_number(c, v) > 0; });
}

}  // namespace

void reindex(Hierarchy& H) {
    H.by_domain.clear();
    H.sites.clear();
    for (int i = 0; i < int(H.geodesics.size()); ++i) {
        const auto& g = H.geodesics[i];
        H.by_domain.emplace(g.domain, i);
        if (g.annular()) continue;
        for (int j = 0; j < int(g.simplices.size()); ++j)
            for (auto& Y : component_domains(g.domain, g.simplices[j])) H.sites[Y].push_back(Site{i, j});
    }
}

Marking site_initial(const Hierarchy& H, const SubsurfaceId& Y, const Site& s) {
    return restrict_marking(pred_marking(H.geodesics.at(s.geodesic), s.simplex), Y);
}

Marking site_terminal(const Hierarchy& H, const SubsurfaceId& Y, const Site& s) {
    return restrict_marking(succ_marking(H.geodesics.at(s.geodesic), s.simplex), Y);
}

std::pair<Marking, Marking> boundary_markings(const SubsurfaceId& Y, const TightGeodesic& g) {
    int j = site_index(g, Y);
    if (j < 0) throw DomainError(Y.str() + " is not a component domain of the geodesic in " + g.domain.str());
    return {restrict_marking(pred_marking(g, j), Y), restrict_marking(succ_marking(g, j), Y)};
}

bool directly_forward(const Hierarchy& H, int k, int f) {
    const auto& Y = H.geodesics.at(k).domain;
    auto it = H.sites.find(Y);
    if (it == H.sites.end()) return false;
    for (auto& s : it->second) {
        if (s.geodesic != f) continue;
        auto T = site_terminal(H, Y, s);
        if (!T.empty() && same_marking(T, H.geodesics[k].T)) return true;
    }
    return false;
}

bool directly_backward(const Hierarchy& H, int b, int k) {
    const auto& Y = H.geodesics.at(k).domain;
    auto it = H.sites.find(Y);
    if (it == H.sites.end()) return false;
    for (auto& s : it->second) {
        if (s.geodesic != b) continue;
        auto I = site_initial(H, Y, s);
        if (!I.empty() && same_marking(I, H.geodesics[k].I)) return true;
    }
    return false;
}

Hierarchy build_hierarchy(const Marking& I, const Marking& T, const SearchCaps& caps) {
    if (I.surface != T.surface) throw SurfaceMismatch("markings live on different surfaces");
    require_supported(I.surface);
    if (I.annular() || T.annular() || I.base.empty() || T.base.empty())
        throw DomainError("hierarchies need markings with nonempty base on the whole surface");
    Hierarchy H;
    H.surface = I.surface;
    H.I = I;
    H.T = T;

    struct SiteData {
        Site site;
        Marking I, T;
    };
    std::map<SubsurfaceId, std::vector<SiteData>> data;
    std::set<SubsurfaceId, PendingOrder> pending;

    auto install = [&](TightGeodesic g) {
        int idx = int(H.geodesics.size());
        H.by_domain.emplace(g.domain, idx);
        H.geodesics.push_back(std::move(g));
        const auto& h = H.geodesics.back();
        if (h.annular()) return;
        for (int j = 0; j < int(h.simplices.size()); ++j)
            for (auto& Y : component_domains(h.domain, h.simplices[j])) {
                Site s{idx, j};
                H.sites[Y].push_back(s);
                if (Y.xi() == 3) continue;
                data[Y].push_back(SiteData{s, restrict_marking(pred_marking(h, j), Y),
                                           restrict_marking(succ_marking(h, j), Y)});
                if (!H.by_domain.count(Y)) pending.insert(Y);
            }
    };

    TightGeodesic main = tight_geodesic_search(I.base, T.base, whole_surface(H.surface), caps);
    main.I = I;
    main.T = T;
    install(std::move(main));

    for (;;) {
        std::optional<SubsurfaceId> ready;
        const Marking *Ib = nullptr, *Tf = nullptr;
        for (auto& Y : pending) {
            Ib = Tf = nullptr;
            for (auto& d : data[Y]) {
                if (!Ib && !d.I.empty()) Ib = &d.I;
                if (!Tf && !d.T.empty()) Tf = &d.T;
            }
            if (Ib && Tf) { ready = Y; break; }
        }
        if (!ready) break;
        SubsurfaceId Y = *ready;
        TightGeodesic g;
        if (Y.annulus) {
            g.domain = Y;
            g.arcs = annulus_geodesic(Ib->arcs.front(), Tf->arcs.front());
        } else {
            g = tight_geodesic_search(Ib->base, Tf->base, Y, caps);
        }
        g.I = *Ib;
        g.T = *Tf;
        pending.erase(Y);
        install(std::move(g));
    }
    return H;
}

std::vector<int> footprint_set(const TightGeodesic& h, const SubsurfaceId& Y) {
    std::vector<int> out;
    if (h.annular() || Y == h.domain) return out;
    for (int j = 0; j < int(h.simplices.size()); ++j) {
        bool misses = std::none_of(h.simplices[j].begin(), h.simplices[j].end(),
                                   [&](const Curve& c) { return meets_essentially(c, Y); });
        if (misses) out.push_back(j);
    }
    return out;
}

std::optional<std::pair<int, int>> footprint(const TightGeodesic& h, const SubsurfaceId& Y) {
    auto f = footprint_set(h, Y);
    if (f.empty()) return std::nullopt;
    for (size_t i = 1; i < f.size(); ++i)
        if (f[i] != f[i - 1] + 1) throw StructureViolation("footprint of " + Y.str() + " is not an interval");
    return std::make_pair(f.front(), f.back());
}

SigmaSets sigma_sets(const Hierarchy& H, const SubsurfaceId& Y) {
    SigmaSets out;
    for (int i = 0; i < int(H.geodesics.size()); ++i) {
        const auto& g = H.geodesics[i];
        if (!is_subsurface_of(Y, g.domain)) continue;
        if (!restrict_marking(g.T, Y).empty()) out.plus.push_back(i);
        if (!restrict_marking(g.I, Y).empty()) out.minus.push_back(i);
    }
    auto order = [&](int a, int b) {
        int xa = H.geodesics[a].domain.xi(), xb = H.geodesics[b].domain.xi();
        return xa != xb ? xa < xb : a < b;
    };
    std::sort(out.plus.begin(), out.plus.end(), order);
    std::sort(out.minus.begin(), out.minus.end(), order);
    auto check = [&](const std::vector<int>& chain, bool forward) {
        if (chain.empty()) return;
        const char* side = forward ? "Sigma+" : "Sigma-";
        if (chain.back() != 0) throw StructureViolation(std::string(side) + "(" + Y.str() + ") does not end at the main geodesic");
        for (size_t i = 0; i + 1 < chain.size(); ++i) {
            int a = chain[i], b = chain[i + 1];
            if (H.geodesics[a].domain.xi() >= H.geodesics[b].domain.xi())
                throw StructureViolation(std::string(side) + "(" + Y.str() + ") has two geodesics of equal complexity");
            bool link = forward ? directly_forward(H, a, b) : directly_backward(H, b, a);
            if (!link) throw StructureViolation(std::string(side) + "(" + Y.str() + ") is not a directly subordinate chain");
        }
    };
    check(out.plus, true);
    check(out.minus, false);
    return out;
}

std::vector<Edge4> four_edges(const Hierarchy& H) {
    std::vector<Edge4> out;
    for (int i = 0; i < int(H.geodesics.size()); ++i) {
        const auto& g = H.geodesics[i];
        if (g.annular() || g.domain.xi() != 4) continue;
        for (int j = 0; j + 1 < int(g.simplices.size()); ++j) out.push_back(Edge4{i, j});
    }
    return out;
}

const Curve& edge_minus(const Hierarchy& H, const Edge4& e) { return H.geodesics.at(e.geodesic).simplices.at(e.index).at(0); }
const Curve& edge_plus(const Hierarchy& H, const Edge4& e) { return H.geodesics.at(e.geodesic).simplices.at(e.index + 1).at(0); }

std::vector<Curve> vertices(const Hierarchy& H) {
    std::vector<Curve> out;
    for (auto& g : H.geodesics) {
        if (g.annular()) continue;
        for (auto& v : g.simplices) out.insert(out.end(), v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::pair<std::optional<Edge4>, std::optional<Edge4>> vertex_edges(const Hierarchy& H, const Curve& v) {
    std::optional<Edge4> e1, e2;
    for (auto& e : four_edges(H)) {
        if (edge_plus(H, e) == v) {
            if (e1) throw StructureViolation("two 4-edges end at " + v.str());
            e1 = e;
        }
        if (edge_minus(H, e) == v) {
            if (e2) throw StructureViolation("two 4-edges start at " + v.str());
            e2 = e;
        }
    }
    return {e1, e2};
}

GluingConfig gluing_configuration(const Hierarchy& H, const SubsurfaceId& Y) {
    if (Y.annulus || Y.xi() != 3) throw DomainError("gluing configurations are defined for three-holed spheres");
    GluingConfig out;
    auto it = H.sites.find(Y);
    if (it == H.sites.end()) throw DomainError(Y.str() + " is not a component domain in the hierarchy");
    for (auto& s : it->second) {
        if (H.geodesics[s.geodesic].domain.xi() != 4) continue;
        if (!site_initial(H, Y, s).empty()) {
            if (out.b && *out.b != s.geodesic) throw StructureViolation("two backward 4-geodesics at " + Y.str());
            out.b = s.geodesic;
        }
        if (!site_terminal(H, Y, s).empty()) {
            if (out.f && *out.f != s.geodesic) throw StructureViolation("two forward 4-geodesics at " + Y.str());
            out.f = s.geodesic;
        }
    }
    return out;
}

HierarchyReport validate_hierarchy(const Hierarchy& H, const SearchCaps& caps) {
    HierarchyReport r;
    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        if (r.failures.size() < 50) r.failures.push_back(msg);
    };
    if (H.geodesics.empty() || !H.main().domain.whole()) {
        fail(r.main_domain, "hierarchy clause (1): main geodesic is not supported on the surface");
        return r;
    }
    if (H.by_domain.size() != H.geodesics.size()) fail(r.unique_support, "two geodesics share a domain");

    for (int i = 0; i < int(H.geodesics.size()); ++i) {
        const auto& g = H.geodesics[i];
        std::string at = " (geodesic in " + g.domain.str() + ")";
        if (g.annular()) {
            auto rep = validate_tight_arcs(g.arcs);
            if (!rep.ok()) fail(r.tight, "tightness: " + rep.message + at);
            if (!g.I.annular() || !g.T.annular() || !contains_arc(g.I.arcs, g.arcs.front()) ||
                !contains_arc(g.T.arcs, g.arcs.back()))
                fail(r.endpoints, "endpoint arcs not drawn from I and T" + at);
            continue;
        }
        auto rep = validate_tight(g.simplices, g.domain, caps);
        if (!rep.ok()) fail(r.tight, "tightness: " + rep.message + at);
        auto inside = [](const MultiCurve& v, const MultiCurve& base) {
            return std::all_of(v.begin(), v.end(), [&](const Curve& c) {
                return std::find(base.begin(), base.end(), c) != base.end();
            });
        };
        if (!inside(g.simplices.front(), g.I.base) || !inside(g.simplices.back(), g.T.base))
            fail(r.endpoints, "first or last simplex not in the base of I or T" + at);
    }

    std::set<SubsurfaceId> domains;
    for (auto& g : H.geodesics) domains.insert(g.domain);
    for (auto& [Y, _] : H.sites) domains.insert(Y);

    for (auto& [Y, sites] : H.sites) {
        int k = H.find(Y);
        if (Y.xi() != 3 && k < 0) {
            if (Y.xi() >= 4) fail(r.four_complete, "component domain " + Y.str() + " supports no geodesic");
            r.complete = false;
        }
        if (Y.xi() == 3) continue;
        std::vector<Marking> Is, Ts;
        for (auto& s : sites) {
            auto I = site_initial(H, Y, s);
            auto T = site_terminal(H, Y, s);
            if (!I.empty()) Is.push_back(std::move(I));
            if (!T.empty()) Ts.push_back(std::move(T));
        }
        if (Is.empty() || Ts.empty()) continue;
        if (k < 0) {
            fail(r.unique_geodesic, "hierarchy clause (2): no geodesic for the configuration at " + Y.str());
            continue;
        }
        for (auto& I : Is)
            if (!same_marking(I, H.geodesics[k].I)) fail(r.unique_geodesic, "hierarchy clause (2): initial marking mismatch at " + Y.str());
        for (auto& T : Ts)
            if (!same_marking(T, H.geodesics[k].T)) fail(r.unique_geodesic, "hierarchy clause (2): terminal marking mismatch at " + Y.str());
    }

    for (int k = 1; k < int(H.geodesics.size()); ++k) {
        bool back = false, fwd = false;
        for (int g = 0; g < int(H.geodesics.size()); ++g) {
            if (g == k) continue;
            back = back || directly_backward(H, g, k);
            fwd = fwd || directly_forward(H, k, g);
        }
        if (!back || !fwd) fail(r.has_links, "hierarchy clause (3): geodesic in " + H.geodesics[k].domain.str() + " lacks a subordinacy link");
    }

    for (auto& h : H.geodesics) {
        if (h.annular()) continue;
        for (auto& Y : domains) {
            if (Y == h.domain || !is_subsurface_of(Y, h.domain)) continue;
            auto f = footprint_set(h, Y);
            if (f.empty()) continue;
            bool interval = true;
            for (size_t i = 1; i < f.size(); ++i) interval = interval && f[i] == f[i - 1] + 1;
            if (!interval || f.back() - f.front() > 2)
                fail(r.footprints, "footprint of " + Y.str() + " on " + h.domain.str() + " is not an interval of diameter at most 2");
        }
    }

    for (auto& Y : domains) {
        try {
            auto s = sigma_sets(H, Y);
            if (!s.plus.empty() && !s.minus.empty() && Y.xi() != 3) {
                int k = H.find(Y);
                if (k < 0 || s.plus.front() != k || s.minus.front() != k)
                    fail(r.descent, "descent sequences: " + Y.str() + " is not the support of b0 = f0");
            }
        } catch (const StructureViolation& e) {
            fail(r.descent, std::string("descent sequences: ") + e.what());
        }
    }

    // forward and backward chains and the footprint alignment along them
    auto chain = [&](int k, bool forward) {
        std::vector<int> c{k};
        while (c.back() != 0 && c.size() <= H.geodesics.size()) {
            int next = -1;
            for (int g = 0; g < int(H.geodesics.size()) && next < 0; ++g) {
                if (g == c.back()) continue;
                if (forward ? directly_forward(H, c.back(), g) : directly_backward(H, g, c.back())) next = g;
            }
            if (next < 0) break;
            c.push_back(next);
        }
        return c;
    };
    for (int k = 1; k < int(H.geodesics.size()); ++k)
        for (bool forward : {true, false}) {
            auto c = chain(k, forward);
            for (size_t a = 0; a < c.size(); ++a)
                for (size_t b = a + 2; b < c.size(); ++b)
                    for (size_t m = a + 1; m < b; ++m) {
                        auto fa = footprint_set(H.geodesics[c[b]], H.geodesics[c[a]].domain);
                        auto fm = footprint_set(H.geodesics[c[b]], H.geodesics[c[m]].domain);
                        bool ok = !fa.empty() && !fm.empty() &&
                                  (forward ? fa.back() == fm.back() : fa.front() == fm.front());
                        if (!ok) fail(r.max_footprint, "footprint alignment fails along the chain of " + H.geodesics[k].domain.str());
                    }
        }

    for (auto& v : vertices(H)) {
        try {
            auto [e1, e2] = vertex_edges(H, v);
            if (e1.has_value() != crosses_any(v, H.I.base) || e2.has_value() != crosses_any(v, H.T.base))
                fail(r.vertex_config, "vertex configuration fails at " + v.str());
        } catch (const StructureViolation& e) {
            fail(r.vertex_config, e.what());
        }
    }

    for (auto& [Y, sites] : H.sites) {
        if (Y.xi() != 3) continue;
        try {
            auto gc = gluing_configuration(H, Y);
            if (gc.b.has_value() != !restrict_marking(H.I, Y).empty() ||
                gc.f.has_value() != !restrict_marking(H.T, Y).empty())
                fail(r.gluing_config, "three-holed sphere configuration fails at " + Y.str());
        } catch (const StructureViolation& e) {
            fail(r.gluing_config, e.what());
        }
    }
    return r;
}

LargeLinkReport large_link_audit(const Hierarchy& H, const SearchCaps& caps) {
    LargeLinkReport r;
    for (auto& h : H.geodesics) {
        const auto& D = h.domain;
        try {
            auto pI = project(H.I, D), pT = project(H.T, D);
            int64_t d = projection_distance(pI, pT, D, caps);
            r.length_error = std::max(r.length_error, int64_t(std::llabs(h.length() - d)));
            int64_t eI = projection_distance(project(h.I, D), pI, D, caps);
            int64_t eT = projection_distance(project(h.T, D), pT, D, caps);
            r.endpoint_error = std::max({r.endpoint_error, eI, eT});
            if (h.annular()) {
                double tw = twist_number(pI.arcs.front(), pT.arcs.front()).value();
                r.annulus_error = std::max(r.annulus_error, std::abs(tw - double(signed_length(h.arcs))));
            }
        } catch (const EmptyProjection&) {
            ++r.skipped;
        } catch (const CapExceeded&) {
            ++r.skipped;
        }
    }
    for (auto& g : H.geodesics) {
        if (g.annular()) continue;
        for (auto& k : H.geodesics) {
            const auto& W = k.domain;
            if (W == g.domain || !is_subsurface_of(W, g.domain)) continue;
            bool all_meet = true;
            for (auto& v : g.simplices)
                for (auto& c : v) all_meet = all_meet && meets_essentially(c, W);
            if (!all_meet) continue;
            try {
                r.bgi = std::max(r.bgi, bgi_audit(g, W, caps));
            } catch (const Error&) {
                ++r.skipped;
            }
        }
    }
    return r;
}

int64_t total_length(const Hierarchy& H) {
    int64_t s = 0;
    for (auto& g : H.geodesics) s += g.length();
    return s;
}

}
