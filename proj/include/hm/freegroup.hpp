#pragma once
#include <cstdint>
#include <memory>
#include <vector>

namespace hm {

// Letters are +-g for generator g = 1..rank.
using Word = std::vector<int>;
using BraidWord = std::vector<int>;

Word inverse(const Word& w);
Word reduce(const Word& w);
Word cyclic_reduce(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, int64_t k);
// Least rotation of w or w^{-1}; input must be cyclically reduced.
Word canonical_cyclic(const Word& w);
bool is_proper_power(const Word& w);
bool cyclic_equal(const Word& a, const Word& b);  // as conjugacy classes up to inversion
std::vector<int64_t> exponent_sums(const Word& w, int rank);

// One-vertex ribbon graph: the cyclic (counterclockwise) order of half-edges at the vertex.
// Half-edge of letter l is the one left along when reading l.
class RibbonRose {
public:
    RibbonRose(int rank, const std::vector<int>& ccw_letters);
    int rank() const { return rank_; }
    int degree() const { return 2 * rank_; }
    int he(int letter) const { return pos_[idx(letter)]; }
    int ccw(int from, int to) const { return (to - from + degree()) % degree(); }

    // Faces of the fat graph as cyclic words.
    std::vector<Word> faces() const;

private:
    int idx(int letter) const { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
    int rank_;
    std::vector<int> pos_;
    std::vector<int> order_;
};

// Number of linked pairs of lifts; see intersection().
int64_t linking_count(const RibbonRose& R, const Word& a, const Word& b, bool count_transverse);
int64_t intersection(const RibbonRose& R, const Word& a, const Word& b);
int64_t self_intersection(const RibbonRose& R, const Word& w);
bool is_simple(const RibbonRose& R, const Word& w);

// Artin generators acting on the free group of rank n: sigma_i for i>0, inverse for i<0.
Word apply_sigma(const Word& w, int gen);
Word apply_braid(const Word& w, const BraidWord& b);          // phi_{b1} o ... o phi_{bk}
Word apply_braid_inverse(const Word& w, const BraidWord& b);
BraidWord braid_inverse(const BraidWord& b);

// Ends of the tree (universal cover of the rose) hanging off the axis of a cyclic word.
struct Axis {
    const RibbonRose* rose = nullptr;
    Word alpha;  // cyclically reduced, primitive
    int h_out(int64_t k) const;
    int h_in(int64_t k) const;
    int64_t period() const { return int64_t(alpha.size()); }
};

struct TreeEnd {
    std::shared_ptr<const Axis> axis;
    int side = 0;    // 0: left of the axis (bottom boundary), 1: right (top boundary)
    int64_t k = 0;   // axis vertex where the end leaves
    Word ray;        // one period of the purely periodic ray
};

// Sign of (a shifted by sa periods) minus (b shifted by sb periods).
int compare_ends(const TreeEnd& a, int64_t sa, const TreeEnd& b, int64_t sb);

struct LiftArc {
    TreeEnd left, right;
};

// Essential lifts of beta crossing the axis of alpha, one per orbit, left end normalized to [0, period).
std::vector<LiftArc> crossing_lifts(const std::shared_ptr<const Axis>& axis, const Word& beta);

}
