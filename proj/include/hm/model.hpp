#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hm/hierarchy.hpp"
#include "hm/resolution.hpp"
#include "hm/tube.hpp"

namespace hm {

enum class BlockKind { Internal, Bottom, Top };

struct Face {
    SubsurfaceId Y;  // three-holed sphere
    int side = 0;    // -1 or +1
};

struct Block {
    BlockKind kind = BlockKind::Internal;
    Edge4 edge;            // internal blocks
    SubsurfaceId R;        // boundary blocks: the whole surface
    MultiCurve T_R;        // boundary blocks: base curves inside R
    std::map<Curve, double> r_heights;
    std::vector<Face> faces;

    std::vector<SubsurfaceId> faces_on(int side) const;
};

struct Gluing {
    SubsurfaceId Y;
    int lower = -1;  // block carrying Y on its + side
    int upper = -1;  // block carrying Y on its - side
};

// Heights in units of the annulus circumference. Each - face of a block starts a leg at its own
// height; the legs meet at `mid` and the + faces all sit at `top`.
struct BlockHeights {
    std::map<SubsurfaceId, double> legs;
    double mid = 0, top = 0;
};

struct TubeAnnulus {
    int block = -1;
    int side = 0;  // side of the vertex collar, 0 or 1
    double lo = 0, hi = 0;
    bool outer = false;  // lies on the outer boundary of its block
};

struct Tube {
    Curve vertex;
    bool boundary_component = false;  // tube of a puncture of S; `puncture` gives its label
    int puncture = 0;
    bool parabolic = false;
    double lo = 0, hi = 0;  // ±infinity at open ends
    std::vector<TubeAnnulus> annuli;  // sorted by (side, lo)
    Omega omega_M, omega_H, omega_nu;
    bool twist_flag = false;  // h_v absent, real part of omega_H set to 0
};

struct ModelConfig {
    bool boundary_blocks = true;  // still requires transversals on the boundary markings
    double r_plus = 0, r_minus = 0;
    std::map<Curve, double> r_plus_at, r_minus_at;
    double K = 4;
    SearchCaps caps;
};

struct ModelComplex {
    SurfaceSig surface;
    std::vector<Block> blocks;
    std::vector<Gluing> gluings;
    std::vector<BlockHeights> heights;
    std::map<Curve, Tube> tubes;
    std::vector<Tube> boundary_tubes;
    ModelConfig config;

    int internal_block(const Edge4& e) const;
    int bottom_block() const;
    int top_block() const;
};

std::vector<SubsurfaceId> pants_of(const SurfaceSig& s, const MultiCurve& base);

std::vector<Block> build_blocks(const Hierarchy& H, const ModelConfig& cfg = {});
std::vector<Gluing> glue(const std::vector<Block>& blocks, const Hierarchy& H);
// Heights and tubes from the 4-edge moves of the resolution; throws StructureViolation when the
// split-level surfaces or the tube tilings fail.
void embed(ModelComplex& M, const Hierarchy& H, const Resolution& R);
ModelComplex build_model(const Hierarchy& H, const Resolution& R, const ModelConfig& cfg = {});

bool is_parabolic(const Hierarchy& H, const Curve& v, const ModelConfig& cfg = {});
Omega omega_H(const Curve& v, const Hierarchy& H, const ModelConfig& cfg = {}, bool* twist_flag = nullptr);
Omega omega_M(const Curve& v, const ModelComplex& M, const Hierarchy& H);
Omega omega_nu(const Curve& v, const Marking& mu_minus, const Marking& mu_plus, const ModelConfig& cfg = {});
// Fills omega_M, omega_H and omega_nu on every tube.
void compute_omegas(ModelComplex& M, const Hierarchy& H);

double omega_distance(const Omega& a, const Omega& b);  // 0 when both are i*infinity

struct ModelReport {
    bool faces_twice = true;
    bool connected = true;
    bool tubes_biject = true;
    bool tori = true;
    bool imaginary_identity = true;
    bool order = true;
    bool block_count = true;
    std::vector<std::string> failures;
    bool ok() const {
        return faces_twice && connected && tubes_biject && tori && imaginary_identity && order && block_count;
    }
};
ModelReport validate_model(const ModelComplex& M, const Hierarchy& H, const Resolution& R);

struct CountingReport {
    double ratio = 1;       // worst of max(s, 1/s) for s = Σ_{X_{α,4+}}|h| / Σ_{X_{α,4}}|h|
    int witness_max = 0;    // largest count in property (*) over g outside X_α
    int sides_checked = 0;
    // (|omega_H(v)|, sup_Y d_Y) per internal vertex
    std::vector<std::pair<double, double>> omega_vs_projection;
    double fit_exponent = 0;  // least-squares slope of log|omega_H| against log(2 + sup d_Y)
};
CountingReport counting_audits(const Hierarchy& H, const ModelConfig& cfg = {});

}
