#pragma once
#include <string>
#include <vector>

#include "hm/corpus.hpp"
#include "hm/model.hpp"

namespace hm {

struct PipelineConfig {
    SearchCaps caps;
    ModelConfig model;
    int max_main_distance = -1;  // skip pairs whose main geodesic is longer; -1 keeps all
};

// Empirical constants of one pair; the corpus values are maxima over pairs.
struct Constants {
    double A = 0;   // bounded geodesic image
    double M1 = 0;  // |h| against d_{D(h)}(I, T)
    double M2 = 0;  // largest d_Y(I, T) over candidate Y that support no geodesic
    double M3 = 0;  // annulus geodesic length against the twist
    double c = 1;   // counting ratio
    double D = 0;   // d_H2(omega_H, omega_nu) over finite tubes
    int M = 0;      // property (*) witnesses
    void merge(const Constants& o);
};

struct PairResult {
    int id = 0;
    bool built = false;
    bool cap_exceeded = false;
    bool skipped = false;
    std::string error;
    Hierarchy H;
    Resolution R;
    ModelComplex M;
    HierarchyReport hierarchy;
    ResolutionReport resolution;
    ModelReport model;
    CountingReport counting;
    Constants constants;
    bool ok() const { return built && hierarchy.ok() && resolution.ok() && model.ok(); }
};

// Builds hierarchy, resolution and model, then runs every validator and measures the constants.
PairResult run_pair(const MarkingPair& p, const PipelineConfig& cfg);

// Processes pairs on `threads` workers; results come back in input order.
std::vector<PairResult> run_pairs(const std::vector<MarkingPair>& pairs, const PipelineConfig& cfg, int threads);

// HIERMODEL_THREADS, else the hardware concurrency.
int default_threads();

struct Aggregate {
    int pairs = 0, built = 0, valid = 0, capped = 0, skipped = 0, failed = 0;
    Constants constants;
};
Aggregate aggregate(const std::vector<PairResult>& results);

}
