#include "hm/surface.hpp"

#include <sstream>

namespace hm {

SurfaceSig::SurfaceSig(int g, int b) : genus(g), boundary(b) {
    if (g < 0 || b < 0) throw DomainError("negative surface signature");
    if (3 * g + b < 2) throw DomainError("surface complexity below 2: " + name());
}

std::string SurfaceSig::name() const {
    return "S_{" + std::to_string(genus) + "," + std::to_string(boundary) + "}";
}

int xi(const SurfaceSig& s) { return s.xi(); }

void require_supported(const SurfaceSig& s) {
    if (s.is_s11() || s.is_s04() || s.is_s05()) return;
    throw CapabilityError("operations are implemented for S_{1,1}, S_{0,4}, S_{0,5} only; got " + s.name());
}

SurfaceSig parse_surface(const std::string& text) {
    std::istringstream in(text);
    int g = -1, b = -1;
    char comma = 0;
    if (!(in >> g >> comma >> b) || comma != ',') throw DomainError("surface must be given as g,b: " + text);
    return SurfaceSig(g, b);
}

}
