#pragma once
#include <optional>
#include <string>
#include <vector>

#include "hm/curve.hpp"
#include "hm/marking.hpp"
#include "hm/s05.hpp"

namespace hm {

using SearchCaps = s05::SearchCaps;

// π_Y as a simplex of A(Y): curves for non-annular Y, arcs for annuli. Empty means EMPTY.
struct Projection {
    std::vector<Curve> curves;
    std::vector<AnnulusArc> arcs;
    bool empty() const { return curves.empty() && arcs.empty(); }
    size_t size() const { return curves.size() + arcs.size(); }
};

Projection project(const Curve& x, const SubsurfaceId& Y);
Projection project(const MultiCurve& x, const SubsurfaceId& Y);
Projection project(const Marking& m, const SubsurfaceId& Y);

// Distance between the canonical (least) vertices of two nonempty projections.
int64_t projection_distance(const Projection& a, const Projection& b, const SubsurfaceId& Y,
                            const SearchCaps& caps = {});
int64_t curve_distance(const Curve& a, const Curve& b, const SubsurfaceId& Y, const SearchCaps& caps = {});

template <class X, class Z>
int64_t d_Y(const X& x, const Z& y, const SubsurfaceId& Y, const SearchCaps& caps = {}) {
    return projection_distance(project(x, Y), project(y, Y), Y, caps);
}

struct TightReport {
    bool clause1 = true;
    bool clause2 = true;
    int first_bad1 = -1;
    int first_bad2 = -1;
    std::string message;
    bool ok() const { return clause1 && clause2; }
};

TightReport validate_tight(const std::vector<MultiCurve>& seq, const SubsurfaceId& Y,
                           const SearchCaps& caps = {});
TightReport validate_tight_arcs(const std::vector<AnnulusArc>& seq);

struct TightGeodesic {
    SubsurfaceId domain;
    std::vector<MultiCurve> simplices;  // ξ(domain) ≥ 4
    std::vector<AnnulusArc> arcs;       // annular domain
    Marking I, T;

    bool annular() const { return domain.annulus; }
    size_t size() const { return annular() ? arcs.size() : simplices.size(); }
    int64_t length() const { return int64_t(size()) - 1; }
};

// Least tight geodesic from a vertex of u to a vertex of w.
TightGeodesic tight_geodesic_search(const MultiCurve& u, const MultiCurve& w, const SubsurfaceId& Y,
                                    const SearchCaps& caps = {});

int64_t bgi_audit(const TightGeodesic& g, const SubsurfaceId& W, const SearchCaps& caps = {});

}
