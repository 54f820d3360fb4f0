#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hm/annulus.hpp"
#include "hm/farey.hpp"
#include "hm/freegroup.hpp"
#include "hm/surface.hpp"

namespace hm {

// ξ=4 surfaces store [p,q]; S_{0,5} stores the normalized cyclic word.
struct Curve {
    SurfaceSig surface;
    std::vector<int64_t> coords;

    static Curve from_slope(const SurfaceSig& s, const Slope& sl);
    static Curve from_word(const SurfaceSig& s, const Word& w);

    Slope slope() const;
    Word word() const;
    std::string str() const;

    friend bool operator==(const Curve& a, const Curve& b) { return a.surface == b.surface && a.coords == b.coords; }
    friend bool operator<(const Curve& a, const Curve& b);
};

using MultiCurve = std::vector<Curve>;  // sorted, pairwise disjoint, distinct

int64_t intersection_number(const Curve& a, const Curve& b);
bool disjoint(const Curve& a, const Curve& b);
MultiCurve make_multicurve(std::vector<Curve> cs);
std::string str(const MultiCurve& m);

struct SubsurfaceId {
    SurfaceSig surface;
    bool annulus = false;
    std::vector<Curve> boundary;  // annulus: the core
    uint32_t mask = 0;            // punctures of a non-annular piece (bit k = puncture k+1)

    int xi() const;
    bool whole() const { return !annulus && boundary.empty(); }
    const Curve& core() const { return boundary.at(0); }
    int component_index() const;
    std::string str() const;

    friend bool operator==(const SubsurfaceId& a, const SubsurfaceId& b) {
        return a.surface == b.surface && a.annulus == b.annulus && a.boundary == b.boundary && a.mask == b.mask;
    }
    friend bool operator<(const SubsurfaceId& a, const SubsurfaceId& b);
};

SubsurfaceId whole_surface(const SurfaceSig& s);
SubsurfaceId annulus_of(const Curve& c);
uint32_t all_punctures(const SurfaceSig& s);

// Punctures on each side of a curve of a ξ=4 surface or S_{0,5} (the side without the
// four-holed sphere first for S_{0,5}).
std::pair<uint32_t, uint32_t> sides(const Curve& c);

std::vector<SubsurfaceId> component_domains(const SubsurfaceId& W, const MultiCurve& v);
// Non-peripheral curve of S lying inside Y.
bool contained_in(const Curve& c, const SubsurfaceId& Y);
bool meets_essentially(const Curve& c, const SubsurfaceId& Y);
bool is_subsurface_of(const SubsurfaceId& Y, const SubsurfaceId& W);

SubsurfaceId fill(const MultiCurve& a, const MultiCurve& b);
// Boundary components of F non-peripheral in Y.
MultiCurve relative_boundary(const SubsurfaceId& F, const SubsurfaceId& Y);

// Essential arc of a ξ=4 domain, recorded by the slope of its straight representative and the
// punctures (or boundary, label 0) it joins.
struct ArcVertex {
    SubsurfaceId domain;
    Slope slope;
    int end_a = 0, end_b = 0;
};
Curve psi(const ArcVertex& a);

// Curves of a ξ=4 domain Y, identified with Farey slopes through a fixed chart.
Slope domain_slope(const SubsurfaceId& Y, const Curve& c);
Curve domain_curve(const SubsurfaceId& Y, const Slope& s);

// Annulus arcs of a curve crossing the core, one per crossing orbit.
std::vector<AnnulusArc> annular_arcs(const Curve& core, const Curve& x);
AnnulusArc annular_arc(const Curve& core, const Curve& x);  // canonical (least) one
// Axis in the universal cover carrying the tree ends of arcs around an S_{0,5} curve.
std::shared_ptr<const Axis> core_axis(const Curve& core);

}
