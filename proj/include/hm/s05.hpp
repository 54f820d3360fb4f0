#pragma once
// Curves on the five-holed sphere, modelled as the disk with punctures 1..4 and outer boundary 5.
// A curve is a conjugacy class (up to inversion) of a simple word in F4 = <x1,..,x4>.
#include <cstdint>
#include <vector>

#include "hm/farey.hpp"
#include "hm/freegroup.hpp"

namespace hm::s05 {

const RibbonRose& rose();

Word normalize(const Word& w);
bool is_curve(const Word& w);
// Inner punctures enclosed (bits 0..3), read from exponent sums.
uint32_t inner_mask(const Word& w);
// Puncture masks (bits 0..4, bit 4 = outer boundary) of the two sides of a curve.
uint32_t pants_mask(const Word& w);
uint32_t x_mask(const Word& w);
int64_t intersection(const Word& a, const Word& b);

// Braid F with F(standard curve of the same type) = c. Curves built through charts carry
// their frames; any other curve is untangled by a search over half twists.
BraidWord frame_of(const Word& c);
void register_frame(const Word& c, const BraidWord& f);
// Forgets the frames and charts met so far on this thread.
void reset_frames();
BraidWord find_frame(const Word& c);
Word standard_curve(const Word& c);

// Farey chart on the four-holed-sphere side X_c of c.
Word chart_curve(const Word& c, const Slope& s);
Slope chart_slope(const Word& c, const Word& x);  // x must lie in X_c
bool in_x_side(const Word& c, const Word& x);

struct ArcSlopes {
    std::vector<Slope> slopes;
    std::vector<int64_t> multiplicity;
};
// Slopes of the arcs of w in X_c (w must cross c), as chart slopes of their psi-curves.
ArcSlopes arc_slopes(const Word& c, const Word& w);
// Same, as curves, sorted.
std::vector<Word> projection_curves(const Word& c, const Word& w);

struct SearchCaps {
    int64_t max_distance = 8;
    int64_t max_intersection = 400;
};

struct SearchStats {
    bool pruned = false;  // some candidate exceeded the intersection cap
    int64_t candidates = 0;
};

// Exact distance in C(S_{0,5}); throws CapExceeded beyond caps.max_distance.
int64_t distance(const Word& u, const Word& w, const SearchCaps& caps, SearchStats* stats = nullptr);
// Lexicographically least geodesic (curves compared by normalized word, shortlex).
std::vector<Word> geodesic(const Word& u, const Word& w, const SearchCaps& caps, SearchStats* stats = nullptr);

bool word_less(const Word& a, const Word& b);

}
