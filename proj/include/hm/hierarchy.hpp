#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hm/complexes.hpp"
#include "hm/marking.hpp"

namespace hm {

// Y is the component domain of (D(h), v_j) at site {h, j}.
struct Site {
    int geodesic = 0;
    int simplex = 0;
    friend bool operator==(const Site&, const Site&) = default;
    friend auto operator<=>(const Site&, const Site&) = default;
};

struct Hierarchy {
    SurfaceSig surface;
    Marking I, T;
    std::vector<TightGeodesic> geodesics;  // geodesics[0] is the main geodesic
    std::map<SubsurfaceId, int> by_domain;
    std::map<SubsurfaceId, std::vector<Site>> sites;

    const TightGeodesic& main() const { return geodesics.at(0); }
    int find(const SubsurfaceId& Y) const {
        auto it = by_domain.find(Y);
        return it == by_domain.end() ? -1 : it->second;
    }
};

// Rebuilds by_domain and sites from the geodesic list.
void reindex(Hierarchy& H);

Marking site_initial(const Hierarchy& H, const SubsurfaceId& Y, const Site& s);
Marking site_terminal(const Hierarchy& H, const SubsurfaceId& Y, const Site& s);
std::pair<Marking, Marking> boundary_markings(const SubsurfaceId& Y, const TightGeodesic& g);

bool directly_forward(const Hierarchy& H, int k, int f);   // k ↘d f
bool directly_backward(const Hierarchy& H, int b, int k);  // b ↙d k

Hierarchy build_hierarchy(const Marking& I, const Marking& T, const SearchCaps& caps = {});

// Indices of simplices of h missing Y, as [first, last]; nullopt when empty.
std::optional<std::pair<int, int>> footprint(const TightGeodesic& h, const SubsurfaceId& Y);
std::vector<int> footprint_set(const TightGeodesic& h, const SubsurfaceId& Y);

struct SigmaSets {
    std::vector<int> minus;  // b_0 ↙d ... ; last is the main geodesic
    std::vector<int> plus;   // f_0 ↘d ... ; last is the main geodesic
};
SigmaSets sigma_sets(const Hierarchy& H, const SubsurfaceId& Y);

struct Edge4 {
    int geodesic = 0;
    int index = 0;  // from simplices[index] to simplices[index + 1]
    friend bool operator==(const Edge4&, const Edge4&) = default;
    friend auto operator<=>(const Edge4&, const Edge4&) = default;
};
std::vector<Edge4> four_edges(const Hierarchy& H);
const Curve& edge_minus(const Hierarchy& H, const Edge4& e);
const Curve& edge_plus(const Hierarchy& H, const Edge4& e);

std::vector<Curve> vertices(const Hierarchy& H);
// (e1 with v = e1⁺, e2 with v = e2⁻)
std::pair<std::optional<Edge4>, std::optional<Edge4>> vertex_edges(const Hierarchy& H, const Curve& v);

// The ξ=4 geodesics b ↙d Y ↘d f of a three-holed sphere Y; nullopt marks a boundary face.
struct GluingConfig {
    std::optional<int> b, f;
};
GluingConfig gluing_configuration(const Hierarchy& H, const SubsurfaceId& Y);

struct HierarchyReport {
    bool main_domain = true;     // clause (1)
    bool unique_geodesic = true; // clause (2)
    bool has_links = true;       // clause (3)
    bool tight = true;
    bool endpoints = true;
    bool unique_support = true;
    bool footprints = true;
    bool descent = true;
    bool max_footprint = true;
    bool four_complete = true;
    bool complete = true;
    bool vertex_config = true;
    bool gluing_config = true;
    std::vector<std::string> failures;
    bool ok() const {
        return main_domain && unique_geodesic && has_links && tight && endpoints && unique_support && footprints &&
               descent && max_footprint && four_complete && vertex_config && gluing_config;
    }
};
HierarchyReport validate_hierarchy(const Hierarchy& H, const SearchCaps& caps = {});

struct LargeLinkReport {
    int64_t length_error = 0;     // max ||h| - d_{D(h)}(I(H), T(H))|
    int64_t endpoint_error = 0;   // max d_{D(h)}(I(h), I(H)), d_{D(h)}(T(h), T(H))
    double annulus_error = 0;     // max |tw_Y(I(H), T(H)) - [h]| over annular h
    int64_t bgi = 0;              // max diam_{D(k)}(g) over nested pairs whose vertices all meet D(k)
    int64_t skipped = 0;
};
LargeLinkReport large_link_audit(const Hierarchy& H, const SearchCaps& caps = {});

int64_t total_length(const Hierarchy& H);

}
