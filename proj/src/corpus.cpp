#include "hm/corpus.hpp"

#include "hm/errors.hpp"
#include "hm/resolution.hpp"
#include "hm/s05.hpp"

namespace hm {

Marking standard_marking(const SurfaceSig& s) {
    require_supported(s);
    if (s.farey())
        return clean_marking(s, {{Curve::from_slope(s, Slope(0, 1)), Curve::from_slope(s, Slope(1, 0))}});
    auto w = [&](const Word& x) { return Curve::from_word(s, x); };
    return clean_marking(s, {{w({1, 2}), w({2, 3})}, {w({1, 2, 3}), w({3, 4})}});
}

Marking random_walk(const Marking& m, int steps, std::mt19937_64& rng) {
    Marking cur = m;
    for (int i = 0; i < steps; ++i) {
        auto moves = elementary_moves(cur);
        cur = clean_marking_moves(cur, moves[rng() % moves.size()]);
    }
    return cur;
}

std::vector<MarkingPair> generate_corpus(const SurfaceSig& s, int count, int walk, uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Marking base = standard_marking(s);
    std::vector<MarkingPair> out;
    for (int i = 0; i < count; ++i) {
        s05::reset_frames();
        MarkingPair p;
        p.id = i;
        p.mu = random_walk(base, walk, rng);
        p.nu = random_walk(p.mu, walk, rng);
        out.push_back(std::move(p));
    }
    return out;
}

}
