#pragma once
#include <cstdint>
#include <random>
#include <vector>

#include "hm/marking.hpp"

namespace hm {

// S_{1,1}, S_{0,4}: base 0/1 with transversal 1/0. S_{0,5}: base x1x2, x1x2x3 with transversals
// x2x3, x3x4.
Marking standard_marking(const SurfaceSig& s);

// Uniformly random elementary moves on a maximal clean marking.
Marking random_walk(const Marking& m, int steps, std::mt19937_64& rng);

struct MarkingPair {
    int id = 0;
    Marking mu, nu;
};

// mu = walk(standard, walk), nu = walk(mu, walk), from one generator seeded with `seed`.
std::vector<MarkingPair> generate_corpus(const SurfaceSig& s, int count, int walk, uint64_t seed);

}
