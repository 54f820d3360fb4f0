#include "hm/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hm/errors.hpp"

namespace hm::io {

namespace {

json number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double number_from(const json& j) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw DomainError("bad number " + s);
    }
    return j.get<double>();
}

json endpoint_json(const Endpoint& e) {
    if (auto r = std::get_if<Rational>(&e)) return r->str();
    const TreeEnd& t = std::get<TreeEnd>(e);
    return json{{"k", t.k}, {"ray", t.ray}, {"side", t.side}};
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

Endpoint endpoint_from(const Curve& core, const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    TreeEnd t;
    t.axis = core_axis(core);
    t.k = j.at("k").get<int64_t>();
    t.ray = j.at("ray").get<Word>();
    t.side = j.at("side").get<int>();
    return t;
}

const char* kind_name(BlockKind k) {
    switch (k) {
        case BlockKind::Internal: return "internal";
        case BlockKind::Bottom: return "bottom_boundary";
        case BlockKind::Top: return "top_boundary";
    }
    return "?";
}

BlockKind kind_from(const std::string& s) {
    if (s == "internal") return BlockKind::Internal;
    if (s == "bottom_boundary") return BlockKind::Bottom;
    if (s == "top_boundary") return BlockKind::Top;
    throw DomainError("unknown block kind " + s);
}

json tube_json(const Tube& t) {
    json j;
    if (t.boundary_component) {
        j["puncture"] = t.puncture;
    } else {
        j["vertex"] = to_json(t.vertex);
    }
    j["interval"] = {number(t.lo), number(t.hi)};
    j["parabolic"] = t.parabolic;
    j["omega_M"] = to_json(t.omega_M);
    j["omega_H"] = to_json(t.omega_H);
    j["omega_nu"] = to_json(t.omega_nu);
    if (t.twist_flag) j["twist_flag"] = true;
    json annuli = json::array();
    for (auto& a : t.annuli)
        annuli.push_back({{"block", a.block}, {"side", a.side}, {"lo", number(a.lo)}, {"hi", number(a.hi)},
                          {"outer", a.outer}});
    j["annuli"] = annuli;
    return j;
}

Omega omega_from(const json& j) {
    if (j.is_string()) return Omega::i_infinity();
    return Omega::finite({j.at("re").get<double>(), j.at("im").get<double>()});
}

Tube tube_from(const SurfaceSig& s, const json& j) {
    Tube t;
    if (j.contains("puncture")) {
        t.boundary_component = true;
        t.puncture = j.at("puncture").get<int>();
    } else {
        t.vertex = curve_from_json(s, j.at("vertex"));
    }
    t.lo = number_from(j.at("interval").at(0));
    t.hi = number_from(j.at("interval").at(1));
    t.parabolic = j.at("parabolic").get<bool>();
    t.omega_M = omega_from(j.at("omega_M"));
    t.omega_H = omega_from(j.at("omega_H"));
    t.omega_nu = omega_from(j.at("omega_nu"));
    t.twist_flag = j.value("twist_flag", false);
    for (auto& a : j.at("annuli"))
        t.annuli.push_back({a.at("block").get<int>(), a.at("side").get<int>(), number_from(a.at("lo")),
                            number_from(a.at("hi")), a.at("outer").get<bool>()});
    return t;
}

json geodesic_json(const TightGeodesic& g) {
    json j;
    j["domain"] = to_json(g.domain);
    j["length"] = g.length();
    if (g.annular()) {
        json arcs = json::array();
        for (auto& a : g.arcs) arcs.push_back(to_json(a));
        j["arcs"] = arcs;
    } else {
        json simp = json::array();
        for (auto& v : g.simplices) {
            json s = json::array();
            for (auto& c : v) s.push_back(to_json(c));
            simp.push_back(s);
        }
        j["simplices"] = simp;
    }
    j["I"] = to_json(g.I);
    j["T"] = to_json(g.T);
    return j;
}

}  // namespace

std::string surface_str(const SurfaceSig& s) { return std::to_string(s.genus) + "," + std::to_string(s.boundary); }

json to_json(const Curve& c) { return c.str(); }

Curve curve_from_json(const SurfaceSig& s, const json& j) {
    auto text = j.get<std::string>();
    if (s.farey()) return Curve::from_slope(s, Slope::parse(text));
    if (text.rfind("w:", 0) != 0) throw DomainError("S_{0,5} curves are written w:<letters>, got " + text);
    Word w;
    std::stringstream in(text.substr(2));
    for (std::string tok; std::getline(in, tok, ',');) w.push_back(std::stoi(tok));
    return Curve::from_word(s, w);
}

json to_json(const SubsurfaceId& Y) {
    json b = json::array();
    for (auto& c : Y.boundary) b.push_back(to_json(c));
    return json{{"annulus", Y.annulus}, {"boundary", b}, {"mask", Y.mask}};
}

SubsurfaceId subsurface_from_json(const SurfaceSig& s, const json& j) {
    SubsurfaceId Y;
    Y.surface = s;
    Y.annulus = j.at("annulus").get<bool>();
    for (auto& c : j.at("boundary")) Y.boundary.push_back(curve_from_json(s, c));
    Y.mask = j.at("mask").get<uint32_t>();
    return Y;
}

json to_json(const AnnulusArc& a) { return json{{"x", endpoint_json(a.x)}, {"y", endpoint_json(a.y)}}; }

AnnulusArc arc_from_json(const Curve& core, const json& j) {
    return AnnulusArc{endpoint_from(core, j.at("x")), endpoint_from(core, j.at("y"))};
}

json to_json(const Marking& m) {
    json j;
    json base = json::array();
    for (auto& c : m.base) base.push_back(to_json(c));
    j["base"] = base;
    json tbar = json::array();
    for (auto& [a, t] : m.tbar) tbar.push_back({to_json(a), to_json(t)});
    j["tbar"] = tbar;
    if (!m.tarc.empty()) {
        json tarc = json::array();
        for (auto& [a, x] : m.tarc) tarc.push_back({to_json(a), to_json(x)});
        j["tarc"] = tarc;
    }
    if (m.core) {
        j["core"] = to_json(*m.core);
        json arcs = json::array();
        for (auto& a : m.arcs) arcs.push_back(to_json(a));
        j["arcs"] = arcs;
    }
    return j;
}

Marking marking_from_json(const SurfaceSig& s, const json& j) {
    Marking m;
    m.surface = s;
    std::vector<Curve> base;
    for (auto& c : j.at("base")) base.push_back(curve_from_json(s, c));
    m.base = make_multicurve(base);
    for (auto& p : j.at("tbar")) m.tbar.emplace(curve_from_json(s, p.at(0)), curve_from_json(s, p.at(1)));
    if (j.contains("tarc"))
        for (auto& p : j.at("tarc")) {
            Curve a = curve_from_json(s, p.at(0));
            m.tarc.emplace(a, arc_from_json(a, p.at(1)));
        }
    if (j.contains("core")) {
        m.core = curve_from_json(s, j.at("core"));
        for (auto& a : j.at("arcs")) m.arcs.push_back(arc_from_json(*m.core, a));
    }
    return m;
}

json to_json(const Hierarchy& H) {
    json geos = json::array();
    for (auto& g : H.geodesics) geos.push_back(geodesic_json(g));
    return json{{"format", kFormat},
                {"surface", surface_str(H.surface)},
                {"I", to_json(H.I)},
                {"T", to_json(H.T)},
                {"geodesics", geos}};
}

Hierarchy hierarchy_from_json(const json& j) {
    Hierarchy H;
    H.surface = parse_surface(j.at("surface").get<std::string>());
    H.I = marking_from_json(H.surface, j.at("I"));
    H.T = marking_from_json(H.surface, j.at("T"));
    for (auto& gj : j.at("geodesics")) {
        TightGeodesic g;
        g.domain = subsurface_from_json(H.surface, gj.at("domain"));
        if (g.domain.annulus) {
            for (auto& a : gj.at("arcs")) g.arcs.push_back(arc_from_json(g.domain.core(), a));
        } else {
            for (auto& v : gj.at("simplices")) {
                std::vector<Curve> s;
                for (auto& c : v) s.push_back(curve_from_json(H.surface, c));
                g.simplices.push_back(make_multicurve(s));
            }
        }
        g.I = marking_from_json(H.surface, gj.at("I"));
        g.T = marking_from_json(H.surface, gj.at("T"));
        H.geodesics.push_back(std::move(g));
    }
    reindex(H);
    return H;
}

json to_json(const Resolution& R, bool slices) {
    json moves = json::array();
    for (auto& m : R.moves) moves.push_back({m.geodesic, m.from});
    json j{{"moves", moves}, {"slice_count", R.slices.size()}};
    if (slices) {
        json sl = json::array();
        for (auto& s : R.slices) {
            json pairs = json::array();
            for (auto& [g, w] : s.pairs) pairs.push_back({g, w});
            sl.push_back(pairs);
        }
        j["slices"] = sl;
    }
    return j;
}

Resolution resolution_from_json(const json& j) {
    Resolution R;
    for (auto& m : j.at("moves")) R.moves.push_back(Move{m.at(0).get<int>(), m.at(1).get<int>()});
    if (j.contains("slices"))
        for (auto& s : j.at("slices")) {
            Slice sl;
            for (auto& p : s) sl.pairs[p.at(0).get<int>()] = p.at(1).get<int>();
            R.slices.push_back(std::move(sl));
        }
    return R;
}

json to_json(const Omega& w) {
    if (w.infinite) return "i_infinity";
    return json{{"re", w.value.real()}, {"im", w.value.imag()}};
}

json to_json(const ModelComplex& M) {
    json blocks = json::array();
    for (auto& b : M.blocks) {
        json bj;
        bj["kind"] = kind_name(b.kind);
        if (b.kind == BlockKind::Internal) {
            bj["edge"] = {b.edge.geodesic, b.edge.index};
        } else {
            bj["R"] = to_json(b.R);
            json tr = json::array();
            for (auto& c : b.T_R) tr.push_back(to_json(c));
            bj["T_R"] = tr;
            json rh = json::array();
            for (auto& [c, h] : b.r_heights) rh.push_back({to_json(c), h});
            bj["r_heights"] = rh;
        }
        json faces = json::array();
        for (auto& f : b.faces) faces.push_back({{"Y", to_json(f.Y)}, {"side", f.side}});
        bj["faces"] = faces;
        blocks.push_back(bj);
    }
    json gluings = json::array();
    for (auto& g : M.gluings) gluings.push_back({{"Y", to_json(g.Y)}, {"lower", g.lower}, {"upper", g.upper}});
    json heights = json::array();
    for (auto& h : M.heights) {
        json legs = json::array();
        for (auto& [Y, x] : h.legs) legs.push_back({to_json(Y), number(x)});
        heights.push_back({{"legs", legs}, {"mid", number(h.mid)}, {"top", number(h.top)}});
    }
    json tubes = json::array();
    for (auto& [v, t] : M.tubes) tubes.push_back(tube_json(t));
    json btubes = json::array();
    for (auto& t : M.boundary_tubes) btubes.push_back(tube_json(t));
    json cfg{{"K", M.config.K},
             {"boundary_blocks", M.config.boundary_blocks},
             {"r_minus", M.config.r_minus},
             {"r_plus", M.config.r_plus}};
    return json{{"format", kFormat},
                {"surface", surface_str(M.surface)},
                {"config", cfg},
                {"blocks", blocks},
                {"gluings", gluings},
                {"heights", heights},
                {"tubes", tubes},
                {"boundary_tubes", btubes}};
}

ModelComplex model_from_json(const SurfaceSig& s, const json& j) {
    ModelComplex M;
    M.surface = s;
    if (j.contains("config")) {
        const auto& c = j.at("config");
        M.config.K = c.value("K", 4.0);
        M.config.boundary_blocks = c.value("boundary_blocks", true);
        M.config.r_minus = c.value("r_minus", 0.0);
        M.config.r_plus = c.value("r_plus", 0.0);
    }
    for (auto& bj : j.at("blocks")) {
        Block b;
        b.kind = kind_from(bj.at("kind").get<std::string>());
        if (b.kind == BlockKind::Internal) {
            b.edge = Edge4{bj.at("edge").at(0).get<int>(), bj.at("edge").at(1).get<int>()};
        } else {
            b.R = subsurface_from_json(s, bj.at("R"));
            for (auto& c : bj.at("T_R")) b.T_R.push_back(curve_from_json(s, c));
            for (auto& p : bj.at("r_heights")) b.r_heights[curve_from_json(s, p.at(0))] = p.at(1).get<double>();
        }
        for (auto& f : bj.at("faces")) b.faces.push_back({subsurface_from_json(s, f.at("Y")), f.at("side").get<int>()});
        M.blocks.push_back(std::move(b));
    }
    for (auto& g : j.at("gluings"))
        M.gluings.push_back({subsurface_from_json(s, g.at("Y")), g.at("lower").get<int>(), g.at("upper").get<int>()});
    for (auto& h : j.at("heights")) {
        BlockHeights bh;
        for (auto& l : h.at("legs")) bh.legs[subsurface_from_json(s, l.at(0))] = number_from(l.at(1));
        bh.mid = number_from(h.at("mid"));
        bh.top = number_from(h.at("top"));
        M.heights.push_back(std::move(bh));
    }
    for (auto& t : j.at("tubes")) {
        Tube tube = tube_from(s, t);
        M.tubes.emplace(tube.vertex, std::move(tube));
    }
    for (auto& t : j.at("boundary_tubes")) M.boundary_tubes.push_back(tube_from(s, t));
    return M;
}

json corpus_json(const SurfaceSig& s, int walk, uint64_t seed, const std::vector<MarkingPair>& pairs) {
    json ps = json::array();
    for (auto& p : pairs) ps.push_back({{"id", p.id}, {"mu", to_json(p.mu)}, {"nu", to_json(p.nu)}});
    return json{{"format", kFormat}, {"surface", surface_str(s)}, {"walk", walk}, {"seed", seed}, {"pairs", ps}};
}

std::vector<MarkingPair> corpus_from_json(const json& j, SurfaceSig* sp) {
    SurfaceSig s = parse_surface(j.at("surface").get<std::string>());
    if (sp) *sp = s;
    std::vector<MarkingPair> out;
    for (auto& p : j.at("pairs"))
        out.push_back({p.at("id").get<int>(), marking_from_json(s, p.at("mu")), marking_from_json(s, p.at("nu"))});
    return out;
}

json to_json(const HierarchyReport& r) {
    return json{{"main_domain", r.main_domain}, {"unique_geodesic", r.unique_geodesic}, {"has_links", r.has_links},
                {"tight", r.tight},             {"endpoints", r.endpoints},             {"unique_support", r.unique_support},
                {"footprints", r.footprints},   {"descent", r.descent},                 {"max_footprint", r.max_footprint},
                {"four_complete", r.four_complete}, {"complete", r.complete},           {"vertex_config", r.vertex_config},
                {"gluing_config", r.gluing_config}, {"failures", r.failures},           {"ok", r.ok()}};
}

json to_json(const ResolutionReport& r) {
    return json{{"move_count", r.move_count}, {"sweep", r.sweep},       {"edges_once", r.edges_once},
                {"intervals", r.intervals},   {"terminal", r.terminal}, {"pants", r.pants},
                {"failures", r.failures},     {"ok", r.ok()}};
}

json to_json(const ModelReport& r) {
    return json{{"faces_twice", r.faces_twice},
                {"connected", r.connected},
                {"tubes_biject", r.tubes_biject},
                {"tori", r.tori},
                {"imaginary_identity", r.imaginary_identity},
                {"order", r.order},
                {"block_count", r.block_count},
                {"failures", r.failures},
                {"ok", r.ok()}};
}

json to_json(const Constants& c) {
    return json{{"A", c.A}, {"M1", c.M1}, {"M2", c.M2}, {"M3", c.M3}, {"c", c.c}, {"D", number(c.D)}, {"M", c.M}};
}

std::string to_dot(const ModelComplex& M) {
    std::ostringstream os;
    os << "graph model {\n";
    for (size_t i = 0; i < M.blocks.size(); ++i) {
        const auto& b = M.blocks[i];
        os << "  b" << i << " [label=\"" << kind_name(b.kind);
        if (b.kind == BlockKind::Internal) os << " " << b.edge.geodesic << ":" << b.edge.index;
        os << "\"];\n";
    }
    for (auto& g : M.gluings) os << "  b" << g.lower << " -- b" << g.upper << " [label=\"" << g.Y.str() << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void write_file(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}
