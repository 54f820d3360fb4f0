#include "hm/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "hm/errors.hpp"

namespace hm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool contains(const MultiCurve& m, const Curve& c) { return std::find(m.begin(), m.end(), c) != m.end(); }

bool on_boundary(const SubsurfaceId& Y, const Curve& v) {
    return !Y.annulus && std::find(Y.boundary.begin(), Y.boundary.end(), v) != Y.boundary.end();
}

// Bit 0: Y lies on the first side of v, bit 1: on the second. The one-holed torus has a single
// pants touching both sides of every curve.
int side_bits(const Curve& v, const SubsurfaceId& Y) {
    if (v.surface.is_s11()) return 3;
    auto first = sides(v).first;
    return (Y.mask & ~first) == 0 ? 1 : 2;
}

bool all_transversal(const Marking& m) {
    for (auto& a : m.base)
        if (!m.has_transversal(a)) return false;
    return !m.base.empty();
}

bool has_bottom(const Hierarchy& H, const ModelConfig& cfg) { return cfg.boundary_blocks && all_transversal(H.I); }
bool has_top(const Hierarchy& H, const ModelConfig& cfg) { return cfg.boundary_blocks && all_transversal(H.T); }

double r_value(const std::map<Curve, double>& at, double dflt, const Curve& v) {
    auto it = at.find(v);
    return it == at.end() ? dflt : it->second;
}

double r_terms(const Curve& v, const Marking& lo, const Marking& hi, bool bottom, bool top, const ModelConfig& cfg) {
    double r = 0;
    if (bottom && contains(lo.base, v)) r += r_value(cfg.r_minus_at, cfg.r_minus, v);
    if (top && contains(hi.base, v)) r += r_value(cfg.r_plus_at, cfg.r_plus, v);
    return r;
}

std::vector<SubsurfaceId> pants_faces(const SubsurfaceId& D, const Curve& c) {
    std::vector<SubsurfaceId> out;
    for (auto& Y : component_domains(D, {c}))
        if (!Y.annulus && Y.xi() == 3) out.push_back(Y);
    return out;
}

int find_block(const std::vector<Block>& blocks, BlockKind kind, const Edge4* e = nullptr) {
    for (int i = 0; i < int(blocks.size()); ++i)
        if (blocks[i].kind == kind && (!e || blocks[i].edge == *e)) return i;
    return -1;
}

bool has_face(const Block& b, const SubsurfaceId& Y, int side) {
    for (auto& f : b.faces)
        if (f.side == side && f.Y == Y) return true;
    return false;
}

// Checks that the annuli on each side stack from lo to hi without gaps or overlaps.
bool tiles(const Tube& t, std::string* why) {
    for (int side = 0; side < 2; ++side) {
        std::vector<TubeAnnulus> walls;
        for (auto& a : t.annuli)
            if (a.side == side) walls.push_back(a);
        if (walls.empty()) {
            if (why) *why = "no annuli on side " + std::to_string(side);
            return false;
        }
        std::sort(walls.begin(), walls.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
        double at = std::isfinite(t.lo) ? t.lo : walls.front().lo;
        for (auto& w : walls) {
            if (w.lo != at || !(w.hi > w.lo)) {
                if (why) *why = "gap or overlap at height " + std::to_string(at) + " on side " + std::to_string(side);
                return false;
            }
            at = w.hi;
        }
        if (std::isfinite(t.hi) && at != t.hi) {
            if (why) *why = "side " + std::to_string(side) + " stops at " + std::to_string(at);
            return false;
        }
    }
    return true;
}

Tube puncture_tube(int k) {
    Tube t;
    t.boundary_component = true;
    t.puncture = k;
    t.parabolic = true;
    t.lo = -kInf;
    t.hi = kInf;
    t.omega_M = t.omega_H = t.omega_nu = Omega::i_infinity();
    return t;
}

}  // namespace

std::vector<SubsurfaceId> Block::faces_on(int side) const {
    std::vector<SubsurfaceId> out;
    for (auto& f : faces)
        if (f.side == side) out.push_back(f.Y);
    return out;
}

int ModelComplex::internal_block(const Edge4& e) const { return find_block(blocks, BlockKind::Internal, &e); }
int ModelComplex::bottom_block() const { return find_block(blocks, BlockKind::Bottom); }
int ModelComplex::top_block() const { return find_block(blocks, BlockKind::Top); }

std::vector<SubsurfaceId> pants_of(const SurfaceSig& s, const MultiCurve& base) {
    std::vector<SubsurfaceId> out;
    for (auto& Y : component_domains(whole_surface(s), base))
        if (!Y.annulus && Y.xi() == 3) out.push_back(Y);
    return out;
}

std::vector<Block> build_blocks(const Hierarchy& H, const ModelConfig& cfg) {
    std::vector<Block> out;
    auto boundary = [&](BlockKind kind, const Marking& m, int side, const std::map<Curve, double>& at, double r) {
        Block b;
        b.kind = kind;
        b.R = whole_surface(H.surface);
        b.T_R = m.base;
        for (auto& c : m.base) b.r_heights[c] = r_value(at, r, c);
        for (auto& Y : pants_of(H.surface, m.base)) b.faces.push_back({Y, side});
        return b;
    };
    if (has_bottom(H, cfg)) out.push_back(boundary(BlockKind::Bottom, H.I, +1, cfg.r_minus_at, cfg.r_minus));
    for (auto& e : four_edges(H)) {
        Block b;
        b.kind = BlockKind::Internal;
        b.edge = e;
        const auto& D = H.geodesics[e.geodesic].domain;
        for (auto& Y : pants_faces(D, edge_minus(H, e))) b.faces.push_back({Y, -1});
        for (auto& Y : pants_faces(D, edge_plus(H, e))) b.faces.push_back({Y, +1});
        out.push_back(std::move(b));
    }
    if (has_top(H, cfg)) out.push_back(boundary(BlockKind::Top, H.T, -1, cfg.r_plus_at, cfg.r_plus));
    return out;
}

std::vector<Gluing> glue(const std::vector<Block>& blocks, const Hierarchy& H) {
    std::set<SubsurfaceId> faces;
    for (auto& b : blocks)
        for (auto& f : b.faces) faces.insert(f.Y);
    int bottom = find_block(blocks, BlockKind::Bottom), top = find_block(blocks, BlockKind::Top);

    std::vector<Gluing> out;
    for (auto& Y : faces) {
        auto gc = gluing_configuration(H, Y);
        const auto& sites = H.sites.at(Y);
        Gluing g;
        g.Y = Y;
        if (gc.b) {
            for (auto& s : sites)
                if (s.geodesic == *gc.b && !site_initial(H, Y, s).empty()) {
                    Edge4 e{*gc.b, s.simplex - 1};
                    g.lower = find_block(blocks, BlockKind::Internal, &e);
                }
        } else {
            g.lower = bottom;
        }
        if (gc.f) {
            for (auto& s : sites)
                if (s.geodesic == *gc.f && !site_terminal(H, Y, s).empty()) {
                    Edge4 e{*gc.f, s.simplex};
                    g.upper = find_block(blocks, BlockKind::Internal, &e);
                }
        } else {
            g.upper = top;
        }
        bool lower_ok = g.lower >= 0 && has_face(blocks[g.lower], Y, +1);
        bool upper_ok = g.upper >= 0 && has_face(blocks[g.upper], Y, -1);
        // a face left open is allowed only where a boundary block was switched off
        bool lower_open = g.lower < 0 && !gc.b && bottom < 0;
        bool upper_open = g.upper < 0 && !gc.f && top < 0;
        if (!(lower_ok || lower_open) || !(upper_ok || upper_open))
            throw StructureViolation("unmatched face " + Y.str());
        // every occurrence of Y in a block must be the one found above
        for (int i = 0; i < int(blocks.size()); ++i)
            for (auto& f : blocks[i].faces)
                if (f.Y == Y && !((f.side == +1 && i == g.lower) || (f.side == -1 && i == g.upper)))
                    throw StructureViolation("face " + Y.str() + " appears in an extra block");
        if (lower_ok && upper_ok) out.push_back(g);
    }
    return out;
}

void embed(ModelComplex& M, const Hierarchy& H, const Resolution& R) {
    M.heights.assign(M.blocks.size(), BlockHeights{});
    std::map<SubsurfaceId, double> level;  // the current split-level surface: face -> height
    int bottom = M.bottom_block(), top = M.top_block();
    if (bottom >= 0) {
        M.heights[bottom].mid = -1;
        M.heights[bottom].top = 0;
    }
    for (auto& Y : pants_of(H.surface, H.I.base)) level[Y] = 0;

    auto check_level = [&](const MultiCurve& base, const std::string& where) {
        auto want = pants_of(H.surface, base);
        std::vector<SubsurfaceId> have;
        for (auto& [Y, h] : level) have.push_back(Y);
        if (have != want) throw StructureViolation("split-level surface does not match the slice " + where);
    };

    for (size_t i = 0; i < R.moves.size(); ++i) {
        const auto& mv = R.moves[i];
        if (H.geodesics[mv.geodesic].domain.xi() != 4 || H.geodesics[mv.geodesic].annular()) continue;
        check_level(slice_marking(H, R.slices[i]).base, "before move " + std::to_string(i));
        int b = M.internal_block(Edge4{mv.geodesic, mv.from});
        if (b < 0) throw StructureViolation("4-edge move without a block");
        auto& hb = M.heights[b];
        double L = -kInf;
        for (auto& Y : M.blocks[b].faces_on(-1)) {
            auto it = level.find(Y);
            if (it == level.end()) throw StructureViolation("block leg " + Y.str() + " is not on the current level");
            hb.legs[Y] = it->second;
            L = std::max(L, it->second);
            level.erase(it);
        }
        hb.mid = L + 1;
        hb.top = L + 2;
        for (auto& Y : M.blocks[b].faces_on(+1)) {
            if (level.count(Y)) throw StructureViolation("face " + Y.str() + " placed twice");
            level[Y] = hb.top;
        }
    }
    check_level(R.slices.empty() ? H.T.base : slice_marking(H, R.slices.back()).base, "at the end");
    check_level(H.T.base, "of the terminal marking");
    if (top >= 0) {
        auto& ht = M.heights[top];
        double L = -kInf;
        for (auto& [Y, h] : level) {
            ht.legs[Y] = h;
            L = std::max(L, h);
        }
        ht.mid = L + 1;
        ht.top = L + 2;
    }

    M.tubes.clear();
    const auto edges = four_edges(H);
    for (auto& v : vertices(H)) {
        Tube t;
        t.vertex = v;
        t.parabolic = is_parabolic(H, v, M.config);
        auto [e1, e2] = vertex_edges(H, v);
        bool inI = contains(H.I.base, v), inT = contains(H.T.base, v);

        auto legs_walls = [&](int b) {
            const auto& hb = M.heights[b];
            for (auto& [Y, h] : hb.legs) {
                if (!on_boundary(Y, v)) continue;
                int bits = side_bits(v, Y);
                for (int s = 0; s < 2; ++s)
                    if (bits >> s & 1) t.annuli.push_back({b, s, h, hb.mid, false});
            }
        };
        if (e1) {
            int b = M.internal_block(*e1);
            t.lo = M.heights[b].mid;
            for (int s = 0; s < 2; ++s) t.annuli.push_back({b, s, M.heights[b].mid, M.heights[b].top, false});
        } else if (inI && bottom >= 0) {
            t.lo = M.heights[bottom].mid;
            for (int s = 0; s < 2; ++s) t.annuli.push_back({bottom, s, -1, 0, false});
        } else if (inI) {
            t.lo = -kInf;
        } else {
            throw StructureViolation("vertex " + v.str() + " has no bottom block");
        }
        if (e2) {
            int b = M.internal_block(*e2);
            t.hi = M.heights[b].mid;
            legs_walls(b);
        } else if (inT && top >= 0) {
            t.hi = M.heights[top].mid;
            legs_walls(top);
        } else if (inT) {
            t.hi = kInf;
        } else {
            throw StructureViolation("vertex " + v.str() + " has no top block");
        }
        for (auto& e : edges) {
            const auto& D = H.geodesics[e.geodesic].domain;
            if (!on_boundary(D, v)) continue;
            int b = M.internal_block(e);
            for (auto& [Y, h] : M.heights[b].legs) {
                if (!on_boundary(Y, v)) continue;
                int bits = side_bits(v, Y);
                for (int s = 0; s < 2; ++s)
                    if (bits >> s & 1) t.annuli.push_back({b, s, h, M.heights[b].top, true});
            }
        }
        std::sort(t.annuli.begin(), t.annuli.end(), [](auto& a, auto& b) {
            return std::tie(a.side, a.lo, a.block) < std::tie(b.side, b.lo, b.block);
        });
        std::string why;
        if (!tiles(t, &why)) throw StructureViolation("annuli around " + v.str() + " do not tile: " + why);
        M.tubes.emplace(v, std::move(t));
    }
    M.boundary_tubes.clear();
    int punctures = H.surface.boundary;
    for (int k = 1; k <= punctures; ++k) M.boundary_tubes.push_back(puncture_tube(k));
}

ModelComplex build_model(const Hierarchy& H, const Resolution& R, const ModelConfig& cfg) {
    ModelComplex M;
    M.surface = H.surface;
    M.config = cfg;
    M.blocks = build_blocks(H, cfg);
    M.gluings = glue(M.blocks, H);
    embed(M, H, R);
    compute_omegas(M, H);
    return M;
}

bool is_parabolic(const Hierarchy& H, const Curve& v, const ModelConfig& cfg) {
    return (contains(H.I.base, v) && !has_bottom(H, cfg)) || (contains(H.T.base, v) && !has_top(H, cfg));
}

Omega omega_H(const Curve& v, const Hierarchy& H, const ModelConfig& cfg, bool* twist_flag) {
    if (twist_flag) *twist_flag = false;
    if (is_parabolic(H, v, cfg)) return Omega::i_infinity();
    double re = 0;
    int k = H.find(annulus_of(v));
    if (k >= 0) {
        re = double(signed_length(H.geodesics[k].arcs));
    } else if (twist_flag) {
        *twist_flag = true;
    }
    double im = 1;
    for (auto& h : H.geodesics)
        if (!h.annular() && h.domain.xi() >= 4 && on_boundary(h.domain, v)) im += double(h.length());
    im += r_terms(v, H.I, H.T, has_bottom(H, cfg), has_top(H, cfg), cfg);
    return Omega::finite({re, im});
}

Omega omega_M(const Curve& v, const ModelComplex& M, const Hierarchy& H) {
    auto it = M.tubes.find(v);
    if (it == M.tubes.end()) throw DomainError(v.str() + " has no tube");
    const auto& t = it->second;
    if (t.parabolic) return Omega::i_infinity();
    double im = 1;
    for (auto& a : t.annuli)
        if (a.outer) im += 1;
    im += r_terms(v, H.I, H.T, M.bottom_block() >= 0, M.top_block() >= 0, M.config);
    int k = H.find(annulus_of(v));
    double re = k >= 0 ? double(signed_length(H.geodesics[k].arcs)) : 0.0;
    return Omega::finite({re, im});
}

Omega omega_nu(const Curve& v, const Marking& mu_minus, const Marking& mu_plus, const ModelConfig& cfg) {
    auto open_end = [&](const Marking& m) {
        return contains(m.base, v) && (!cfg.boundary_blocks || !all_transversal(m));
    };
    if (open_end(mu_minus) || open_end(mu_plus)) return Omega::i_infinity();
    auto A = annulus_of(v);
    auto pm = project(mu_minus, A), pp = project(mu_plus, A);
    double re = 0;
    if (!pm.empty() && !pp.empty()) re = twist_number(pm.arcs.front(), pp.arcs.front()).value();
    double im = 1;
    for (auto& Y : component_domains(whole_surface(v.surface), {v})) {
        if (Y.annulus || Y.xi() < 4) continue;
        try {
            im += threshold(double(d_Y(mu_minus, mu_plus, Y, cfg.caps)), cfg.K);
        } catch (const EmptyProjection&) {
        }
    }
    im += r_terms(v, mu_minus, mu_plus, cfg.boundary_blocks && all_transversal(mu_minus),
                  cfg.boundary_blocks && all_transversal(mu_plus), cfg);
    return Omega::finite({re, im});
}

void compute_omegas(ModelComplex& M, const Hierarchy& H) {
    for (auto& [v, t] : M.tubes) {
        t.omega_M = omega_M(v, M, H);
        t.omega_H = omega_H(v, H, M.config, &t.twist_flag);
        t.omega_nu = omega_nu(v, H.I, H.T, M.config);
    }
}

double omega_distance(const Omega& a, const Omega& b) {
    if (a.infinite && b.infinite) return 0;
    if (a.infinite || b.infinite) return kInf;
    return hyperbolic_distance(a.value, b.value);
}

ModelReport validate_model(const ModelComplex& M, const Hierarchy& H, const Resolution& R) {
    ModelReport r;
    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        if (r.failures.size() < 50) r.failures.push_back(msg);
    };
    const int n = int(M.blocks.size());
    int bottom = M.bottom_block(), top = M.top_block();

    std::map<SubsurfaceId, std::pair<int, int>> seen;  // face -> (# on + side, # on - side)
    for (auto& b : M.blocks)
        for (auto& f : b.faces) (f.side > 0 ? seen[f.Y].first : seen[f.Y].second) += 1;
    std::map<SubsurfaceId, int> glued;
    for (auto& g : M.gluings) {
        glued[g.Y] += 1;
        if (g.lower < 0 || g.upper < 0 || g.lower >= n || g.upper >= n || !has_face(M.blocks[g.lower], g.Y, +1) ||
            !has_face(M.blocks[g.upper], g.Y, -1))
            fail(r.faces_twice, "gluing record for " + g.Y.str() + " does not match its blocks");
    }
    for (auto& [Y, c] : seen) {
        bool open_ok = (c.first == 0 && bottom < 0) || (c.second == 0 && top < 0);
        if (c.first == 1 && c.second == 1) {
            if (glued[Y] != 1) fail(r.faces_twice, "face " + Y.str() + " glued " + std::to_string(glued[Y]) + " times");
        } else if (!(open_ok && c.first + c.second == 1)) {
            fail(r.faces_twice, "face " + Y.str() + " appears in " + std::to_string(c.first + c.second) + " blocks");
        }
    }

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto& g : M.gluings)
        if (g.lower >= 0 && g.upper >= 0 && g.lower < n && g.upper < n) parent[find(g.lower)] = find(g.upper);
    for (int i = 1; i < n; ++i)
        if (find(i) != find(0)) {
            fail(r.connected, "block " + std::to_string(i) + " is not connected to block 0");
            break;
        }

    auto verts = vertices(H);
    if (verts.size() != M.tubes.size()) fail(r.tubes_biject, "tube count differs from vertex count");
    for (auto& v : verts)
        if (!M.tubes.count(v)) fail(r.tubes_biject, "vertex " + v.str() + " has no tube");
    if (int(M.boundary_tubes.size()) != H.surface.boundary) fail(r.tubes_biject, "missing tubes at punctures");

    for (auto& [v, t] : M.tubes) {
        std::string why;
        if (!tiles(t, &why)) fail(r.tori, "tube of " + v.str() + ": " + why);
        if (!t.parabolic && !(std::isfinite(t.lo) && std::isfinite(t.hi)))
            fail(r.tori, "finite tube of " + v.str() + " is open");
        if (t.parabolic != t.omega_M.infinite || t.parabolic != t.omega_H.infinite)
            fail(r.imaginary_identity, "parabolic flag disagrees with the coefficients at " + v.str());
        else if (!t.parabolic && t.omega_M.value.imag() != t.omega_H.value.imag())
            fail(r.imaginary_identity, "Im omega_M != Im omega_H at " + v.str());
        else if (!t.parabolic && t.omega_M.value.imag() < 1)
            fail(r.imaginary_identity, "Im omega_M < 1 at " + v.str());
    }

    const auto edges = four_edges(H);
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i].geodesic != edges[i + 1].geodesic) continue;
        int a = M.internal_block(edges[i]), b = M.internal_block(edges[i + 1]);
        if (a < 0 || b < 0 || a >= int(M.heights.size()) || b >= int(M.heights.size()) ||
            !(M.heights[a].mid < M.heights[b].mid))
            fail(r.order, "blocks along geodesic " + std::to_string(edges[i].geodesic) + " are out of order");
    }

    int internal = 0;
    for (auto& b : M.blocks) internal += b.kind == BlockKind::Internal;
    int four_moves = 0;
    for (auto& mv : R.moves) four_moves += !H.geodesics[mv.geodesic].annular() && H.geodesics[mv.geodesic].domain.xi() == 4;
    int64_t sum4 = 0;
    for (auto& h : H.geodesics)
        if (!h.annular() && h.domain.xi() == 4) sum4 += h.length();
    if (internal != four_moves || internal != sum4 || internal != int(edges.size()))
        fail(r.block_count, "internal blocks " + std::to_string(internal) + ", 4-edge moves " +
                                std::to_string(four_moves) + ", sum of 4-lengths " + std::to_string(sum4));
    return r;
}

CountingReport counting_audits(const Hierarchy& H, const ModelConfig& cfg) {
    CountingReport rep;
    const int n = int(H.geodesics.size());
    std::vector<std::vector<char>> fwd(n, std::vector<char>(n, 0));
    for (int k = 0; k < n; ++k)
        for (int f = 0; f < n; ++f)
            if (k != f) fwd[k][f] = directly_forward(H, k, f);

    std::vector<double> xs, ys;
    for (auto& v : vertices(H)) {
        auto [e1, e2] = vertex_edges(H, v);
        if (!e1 || !e2) continue;
        for (int side = 0; side < 2; ++side) {
            std::vector<char> inX(n, 0);
            int64_t s4 = 0, s4p = 0;
            for (int k = 0; k < n; ++k) {
                const auto& h = H.geodesics[k];
                if (h.annular()) {
                    inX[k] = h.domain.core() == v;
                    continue;
                }
                if (!on_boundary(h.domain, v) || !(side_bits(v, h.domain) >> side & 1)) continue;
                inX[k] = 1;
                if (h.domain.xi() == 4) s4 += h.length();
                if (h.domain.xi() >= 4) s4p += h.length();
            }
            double ratio = s4 == 0 ? (s4p == 0 ? 1.0 : kInf) : double(s4p) / double(s4);
            rep.ratio = std::max({rep.ratio, ratio, ratio > 0 ? 1.0 / ratio : kInf});
            ++rep.sides_checked;

            // geodesics reachable from X_α along forward subordinacy (h' ↘= h)
            std::vector<char> reach = inX;
            std::vector<int> stack;
            for (int k = 0; k < n; ++k)
                if (reach[k]) stack.push_back(k);
            while (!stack.empty()) {
                int k = stack.back();
                stack.pop_back();
                for (int f = 0; f < n; ++f)
                    if (fwd[k][f] && !reach[f]) {
                        reach[f] = 1;
                        stack.push_back(f);
                    }
            }
            for (int g = 0; g < n; ++g) {
                if (inX[g]) continue;
                int count = 0;
                for (int h = 0; h < n; ++h) count += fwd[h][g] && reach[h];
                rep.witness_max = std::max(rep.witness_max, count);
            }
        }
        auto w = omega_H(v, H, cfg);
        if (w.infinite) continue;
        double sup = 0;
        for (auto& Y : component_domains(whole_surface(H.surface), {v})) {
            if (!Y.annulus && Y.xi() < 4) continue;
            try {
                sup = std::max(sup, double(d_Y(H.I, H.T, Y, cfg.caps)));
            } catch (const EmptyProjection&) {
            }
        }
        rep.omega_vs_projection.push_back({std::abs(w.value), sup});
        xs.push_back(std::log(2 + sup));
        ys.push_back(std::log(std::abs(w.value)));
    }
    if (xs.size() >= 2) {
        double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
        double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
        double sxy = 0, sxx = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        if (sxx > 0) rep.fit_exponent = sxy / sxx;
    }
    return rep;
}

}
