#include "hm/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <thread>

#include "hm/errors.hpp"
#include "hm/s05.hpp"

namespace hm {

void Constants::merge(const Constants& o) {
    A = std::max(A, o.A);
    M1 = std::max(M1, o.M1);
    M2 = std::max(M2, o.M2);
    M3 = std::max(M3, o.M3);
    c = std::max(c, o.c);
    D = std::max(D, o.D);
    M = std::max(M, o.M);
}

namespace {

double large_link_gap(const Hierarchy& H, const SearchCaps& caps) {
    std::set<Curve> curves;
    for (auto& v : vertices(H)) curves.insert(v);
    for (auto* m : {&H.I, &H.T}) curves.insert(m->base.begin(), m->base.end());
    std::set<SubsurfaceId> candidates;
    for (auto& c : curves)
        for (auto& Y : component_domains(whole_surface(H.surface), {c}))
            if (Y.annulus || Y.xi() >= 4) candidates.insert(Y);
    double gap = 0;
    for (auto& Y : candidates) {
        if (H.find(Y) >= 0) continue;
        try {
            gap = std::max(gap, double(d_Y(H.I, H.T, Y, caps)));
        } catch (const EmptyProjection&) {
        }
    }
    return gap;
}

}  // namespace

PairResult run_pair(const MarkingPair& p, const PipelineConfig& cfg) {
    s05::reset_frames();
    PairResult r;
    r.id = p.id;
    try {
        r.H = build_hierarchy(p.mu, p.nu, cfg.caps);
        if (cfg.max_main_distance >= 0 && r.H.main().length() > cfg.max_main_distance) {
            r.skipped = true;
            r.error = "main geodesic longer than the configured bound";
            return r;
        }
        r.hierarchy = validate_hierarchy(r.H, cfg.caps);
        r.R = resolve(r.H);
        r.resolution = audit_resolution(r.H, r.R);
        r.M = build_model(r.H, r.R, cfg.model);
        r.model = validate_model(r.M, r.H, r.R);
        r.counting = counting_audits(r.H, cfg.model);
        r.built = true;

        auto ll = large_link_audit(r.H, cfg.caps);
        r.constants.A = double(ll.bgi);
        r.constants.M1 = double(ll.length_error);
        r.constants.M3 = ll.annulus_error;
        r.constants.M2 = large_link_gap(r.H, cfg.caps);
        r.constants.c = r.counting.ratio;
        r.constants.M = r.counting.witness_max;
        for (auto& [v, t] : r.M.tubes)
            if (!t.omega_H.infinite && !t.omega_nu.infinite)
                r.constants.D = std::max(r.constants.D, omega_distance(t.omega_H, t.omega_nu));
    } catch (const CapExceeded& e) {
        r.built = false;
        r.cap_exceeded = true;
        r.error = std::string(e.what()) + (e.diagnostics.empty() ? "" : " (" + e.diagnostics + ")");
    } catch (const Error& e) {
        r.built = false;
        r.error = e.what();
    }
    return r;
}

int default_threads() {
    if (const char* s = std::getenv("HIERMODEL_THREADS")) {
        int n = std::atoi(s);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<PairResult> run_pairs(const std::vector<MarkingPair>& pairs, const PipelineConfig& cfg, int threads) {
    std::vector<PairResult> out(pairs.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next++) < pairs.size();) out[i] = run_pair(pairs[i], cfg);
    };
    threads = std::max(1, std::min<int>(threads, int(pairs.size())));
    if (threads == 1) {
        work();
        return out;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return out;
}

Aggregate aggregate(const std::vector<PairResult>& results) {
    Aggregate a;
    for (auto& r : results) {
        ++a.pairs;
        if (r.skipped) {
            ++a.skipped;
            continue;
        }
        if (r.cap_exceeded) ++a.capped;
        if (!r.built) {
            if (!r.cap_exceeded) ++a.failed;
            continue;
        }
        ++a.built;
        if (r.ok()) ++a.valid;
        else ++a.failed;
        a.constants.merge(r.constants);
    }
    return a;
}

}
