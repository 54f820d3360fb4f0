#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hm/curve.hpp"

namespace hm {

// A finite marking. Transversals are recorded by a curve t̄ (clean markings); their annular
// projections are the transversal arcs. A marking restricted to an annulus keeps only arcs.
struct Marking {
    SurfaceSig surface;
    MultiCurve base;
    std::map<Curve, Curve> tbar;
    std::map<Curve, AnnulusArc> tarc;  // transversal arcs without a curve (slice markings)

    std::optional<Curve> core;
    std::vector<AnnulusArc> arcs;  // sorted by arc_less

    bool empty() const { return base.empty() && arcs.empty(); }
    bool annular() const { return core.has_value(); }
    bool has_transversal(const Curve& a) const { return tbar.count(a) > 0 || tarc.count(a) > 0; }
    std::vector<AnnulusArc> transversal(const Curve& a) const;
    std::string str() const;
};

Marking simplex_marking(const SurfaceSig& s, const MultiCurve& v);
Marking clean_marking(const SurfaceSig& s, const std::vector<std::pair<Curve, Curve>>& pairs);

bool same_marking(const Marking& a, const Marking& b);
bool is_pants_decomposition(const SurfaceSig& s, const MultiCurve& v);
bool is_maximal(const Marking& m);
bool is_clean(const Marking& m);

// The restriction μ|_W; empty when μ misses W.
Marking restrict_marking(const Marking& m, const SubsurfaceId& W);

}
