#pragma once
#include <map>
#include <vector>

#include "hm/hierarchy.hpp"

namespace hm {

// geodesic index -> simplex (or arc) index; the bottom pair is the main geodesic's.
struct Slice {
    std::map<int, int> pairs;
    friend bool operator==(const Slice&, const Slice&) = default;
};

struct Move {
    int geodesic = 0;
    int from = 0;  // advanced from simplex `from` to `from + 1`
};

struct Resolution {
    std::vector<Slice> slices;
    std::vector<Move> moves;
};

Slice initial_slice(const Hierarchy& H);
Slice terminal_slice(const Hierarchy& H);
bool is_saturated(const Hierarchy& H, const Slice& s);
bool forward_movable(const Hierarchy& H, const Slice& s, int geodesic);
bool backward_movable(const Hierarchy& H, const Slice& s, int geodesic);
Slice advance(const Hierarchy& H, const Slice& s, int geodesic);
Slice retreat(const Hierarchy& H, const Slice& s, int geodesic);
Resolution resolve(const Hierarchy& H);

Marking slice_marking(const Hierarchy& H, const Slice& s);

struct ResolutionReport {
    bool move_count = true;   // moves = Σ|h|
    bool sweep = true;        // every pair appears in some slice
    bool edges_once = true;   // each 4-edge advanced exactly once
    bool intervals = true;    // J(v) is an interval
    bool terminal = true;
    bool pants = true;        // every slice marking base is a pants decomposition
    std::vector<std::string> failures;
    bool ok() const { return move_count && sweep && edges_once && intervals && terminal && pants; }
};
ResolutionReport audit_resolution(const Hierarchy& H, const Resolution& R);

enum class MoveKind { Twist, HalfTwist, Flip };
struct MarkingMove {
    MoveKind kind = MoveKind::Twist;
    Curve base;
    int power = 1;  // twists only
};

// Elementary moves on maximal clean markings.
Marking clean_marking_moves(const Marking& m, const MarkingMove& mv);
// Moves available from a maximal clean marking (both twist directions and every flip).
std::vector<MarkingMove> elementary_moves(const Marking& m);

inline double threshold(double x, double K) { return x >= K ? x : 0.0; }

int64_t d_el_estimate(const Marking& mu, const Marking& nu, double K, const SearchCaps& caps = {});

}
