#include "hm/marking.hpp"

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

}  // namespace

std::vector<AnnulusArc> Marking::transversal(const Curve& a) const {
    auto it = tbar.find(a);
    if (it != tbar.end()) return annular_arcs(a, it->second);
    auto jt = tarc.find(a);
    if (jt != tarc.end()) return {jt->second};
    return {};
}

std::string Marking::str() const {
    std::ostringstream os;
    if (annular()) {
        os << "arcs@" << core->str() << "[";
        for (size_t i = 0; i < arcs.size(); ++i)
            os << (i ? " " : "") << "(" << endpoint_str(arcs[i].x) << "," << endpoint_str(arcs[i].y) << ")";
        os << "]";
        return os.str();
    }
    os << "{";
    for (size_t i = 0; i < base.size(); ++i) {
        os << (i ? " " : "") << base[i].str();
        auto it = tbar.find(base[i]);
        if (it != tbar.end()) os << "|" << it->second.str();
        auto jt = tarc.find(base[i]);
        if (jt != tarc.end()) os << "|(" << endpoint_str(jt->second.x) << "," << endpoint_str(jt->second.y) << ")";
    }
    os << "}";
    return os.str();
}

Marking simplex_marking(const SurfaceSig& s, const MultiCurve& v) {
    Marking m;
    m.surface = s;
    m.base = make_multicurve(v);
    return m;
}

Marking clean_marking(const SurfaceSig& s, const std::vector<std::pair<Curve, Curve>>& pairs) {
    Marking m;
    m.surface = s;
    std::vector<Curve> base;
    for (auto& [a, t] : pairs) {
        base.push_back(a);
        m.tbar.emplace(a, t);
    }
    m.base = make_multicurve(base);
    return m;
}

bool same_marking(const Marking& a, const Marking& b) {
    if (a.surface != b.surface || a.base != b.base || a.tbar != b.tbar || a.core != b.core) return false;
    if (a.arcs.size() != b.arcs.size() || a.tarc.size() != b.tarc.size()) return false;
    for (auto it = a.tarc.begin(), jt = b.tarc.begin(); it != a.tarc.end(); ++it, ++jt)
        if (it->first != jt->first || !arcs_equal(it->second, jt->second)) return false;
    for (size_t i = 0; i < a.arcs.size(); ++i)
        if (!arcs_equal(a.arcs[i], b.arcs[i])) return false;
    return true;
}

bool is_pants_decomposition(const SurfaceSig& s, const MultiCurve& v) {
    if (int(v.size()) != s.xi() - 3) return false;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            if (v[i] == v[j] || !disjoint(v[i], v[j])) return false;
    return true;
}

bool is_maximal(const Marking& m) {
    if (m.annular() || !is_pants_decomposition(m.surface, m.base)) return false;
    for (auto& a : m.base)
        if (!m.has_transversal(a)) return false;
    return true;
}

bool is_clean(const Marking& m) {
    if (!m.tarc.empty()) return false;
    for (auto& [a, t] : m.tbar) {
        if (intersection_number(a, t) == 0) return false;
        for (auto& b : m.base)
            if (b != a && !disjoint(b, t)) return false;
        SubsurfaceId Y = fill({a}, {t});
        if (Y.annulus || Y.xi() != 4) return false;
        if (!farey_adjacent(domain_slope(Y, a), domain_slope(Y, t))) return false;
    }
    return true;
}

Marking restrict_marking(const Marking& m, const SubsurfaceId& W) {
    if (m.surface != W.surface) throw SurfaceMismatch("marking and subsurface live on different surfaces");
    Marking out;
    out.surface = m.surface;
    if (m.annular()) {
        if (W.annulus && W.core() == *m.core) return m;
        if (W.whole()) return m;
        return out;
    }
    if (W.whole()) return m;
    if (W.annulus) {
        const Curve& c = W.core();
        std::vector<AnnulusArc> arcs;
        for (auto& b : m.base) {
            auto a = annular_arcs(c, b);
            arcs.insert(arcs.end(), a.begin(), a.end());
        }
        if (arcs.empty() && m.has_transversal(c)) arcs = m.transversal(c);
        if (arcs.empty()) return out;
        out.core = c;
        out.arcs = sorted_arcs(std::move(arcs));
        return out;
    }
    for (auto& b : m.base) {
        if (!meets_essentially(b, W)) continue;
        out.base.push_back(b);
        auto it = m.tbar.find(b);
        if (it != m.tbar.end()) out.tbar.emplace(b, it->second);
        auto jt = m.tarc.find(b);
        if (jt != m.tarc.end()) out.tarc.emplace(b, jt->second);
    }
    return out;
}

}
