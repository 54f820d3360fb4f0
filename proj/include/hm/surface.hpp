#pragma once
#include <compare>
#include <string>

#include "hm/errors.hpp"

namespace hm {

struct SurfaceSig {
    int genus = 0;
    int boundary = 0;

    SurfaceSig() = default;
    SurfaceSig(int g, int b);

    int xi() const { return 3 * genus + boundary; }
    bool is_s11() const { return genus == 1 && boundary == 1; }
    bool is_s04() const { return genus == 0 && boundary == 4; }
    bool is_s05() const { return genus == 0 && boundary == 5; }
    bool farey() const { return xi() == 4; }
    std::string name() const;

    friend bool operator==(const SurfaceSig&, const SurfaceSig&) = default;
    friend auto operator<=>(const SurfaceSig&, const SurfaceSig&) = default;
};

int xi(const SurfaceSig& s);

// Throws CapabilityError unless the operations of this library are certified on s.
void require_supported(const SurfaceSig& s);
SurfaceSig parse_surface(const std::string& text);

}
